from __future__ import annotations

import math

from .base import SolveResult

RATIO_TOL = 1e-9


class OracleError(RuntimeError):
    """The supposedly exact oracle was beaten by a heuristic."""


def _value(res: SolveResult, objective: str) -> float:
    if objective == "eq1":
        return res.objective1
    if objective == "eq2":
        return res.objective2
    raise ValueError(f"objective must be 'eq1' or 'eq2', got {objective!r}")


def approximation_ratio(result: SolveResult, oracle: SolveResult, objective: str = "eq2") -> float:
    """``result / oracle`` under the chosen objective, with ``0/0 = 1``."""
    got, opt = _value(result, objective), _value(oracle, objective)
    if got < opt - RATIO_TOL * max(1.0, abs(opt)):
        raise OracleError(f"oracle {oracle.solver_name} reports {opt} but {result.solver_name} found {got}")
    if abs(opt) <= RATIO_TOL:
        return 1.0 if abs(got) <= RATIO_TOL else math.inf
    return max(got, opt) / opt


def dominance_holds(result: SolveResult, oracle: SolveResult) -> bool:
    """An objective2 ratio of ``a`` bounds the objective1 ratio whenever the objective2 optimum is positive."""
    if oracle.objective2 <= RATIO_TOL:
        return True
    r1 = approximation_ratio(result, oracle, "eq1")
    r2 = approximation_ratio(result, oracle, "eq2")
    return r1 <= r2 + RATIO_TOL
