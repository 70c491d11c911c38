"""Solvers for Gini-minimizing k-partitions."""

from .base import SolveResult
from .brute import MAX_BRUTE_N, solve_brute_force
from .lloyd import solve_lloyd, weighted_d2_seeding
from .ptas import MAX_PTAS_K, PtasConfig, solve_ptas
from .ratio import OracleError, approximation_ratio, dominance_holds

__all__ = [
    "SolveResult",
    "solve_brute_force",
    "solve_lloyd",
    "solve_ptas",
    "PtasConfig",
    "approximation_ratio",
    "dominance_holds",
    "OracleError",
    "weighted_d2_seeding",
    "MAX_BRUTE_N",
    "MAX_PTAS_K",
]
