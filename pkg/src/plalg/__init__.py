"""Exact computations in restricted Lie algebras over prime fields."""

from __future__ import annotations

from .constructions import (borel2, construct, cyclic_generator, direct_sum, field_torus, gln,
                            heisenberg, sl2, witt)
from .core import PMorphism, Report, RestrictedLieAlgebra, quotient, restrict, verify_restricted
from .errors import BudgetExceeded, PlalgError
from .fileformat import dumps, load, loads, save
from .harness import SuiteReport, run_suite
from .linalg import Subspace
from .pmodules import PModule, weight_decomposition
from .tori import ToralSplit, cartan_subalgebras, maximal_tori, toral_decomposition

__version__ = "0.1.0"

__all__ = [
    "RestrictedLieAlgebra", "PMorphism", "Report", "Subspace", "PModule", "ToralSplit",
    "SuiteReport", "PlalgError", "BudgetExceeded",
    "verify_restricted", "quotient", "restrict",
    "witt", "sl2", "gln", "heisenberg", "borel2", "field_torus", "direct_sum", "construct",
    "cyclic_generator", "toral_decomposition", "maximal_tori", "cartan_subalgebras",
    "weight_decomposition", "run_suite", "load", "loads", "dumps", "save",
]
