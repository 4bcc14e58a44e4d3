"""Secret key agreement over non-coherent network coding broadcast channels."""

from ._core import (
    ContractViolation,
    cmi_oracle,
    gaussian_binomial,
    plan_dimensions,
    rank,
    replay_terminal_keys,
    rref,
    run_command,
    run_session_json,
    solve_theta_lp,
    three_terminal_rate,
    two_terminal_rate,
    upper_bound,
    xi,
)

__all__ = [
    "ContractViolation",
    "cmi_oracle",
    "gaussian_binomial",
    "plan_dimensions",
    "rank",
    "replay_terminal_keys",
    "rref",
    "run_command",
    "run_session_json",
    "solve_theta_lp",
    "three_terminal_rate",
    "two_terminal_rate",
    "upper_bound",
    "xi",
]
