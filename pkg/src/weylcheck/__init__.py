"""Exact symbolic checks of ladder and symmetry algebras for two superintegrable systems.

Operators are differential operators in ``z, zb`` with Laurent coefficients in
``s`` (with ``b1 = s^2``) and ``a3``; everything is computed exactly.
"""

from .models import ModelCatalog, build_model
from .opdsl import load_suite, parse_expr, parse_operator, parse_suite, print_expr
from .scalar import A3, B1, S, Scalar
from .states import State, apply, make_phi, psi, psibar, zero_mode
from .verifier import AnnihilatorFinding, CheckResult, find_minimal_annihilator, run_relation, run_state_check, run_suite
from .weylalg import DZ, DZB, IDENTITY, Z, ZB, Operator, anticommutator, commutator

__all__ = [
    "A3",
    "AnnihilatorFinding",
    "B1",
    "CheckResult",
    "DZ",
    "DZB",
    "IDENTITY",
    "ModelCatalog",
    "Operator",
    "S",
    "Scalar",
    "State",
    "Z",
    "ZB",
    "anticommutator",
    "apply",
    "build_model",
    "commutator",
    "find_minimal_annihilator",
    "load_suite",
    "make_phi",
    "parse_expr",
    "parse_operator",
    "parse_suite",
    "print_expr",
    "psi",
    "psibar",
    "run_relation",
    "run_state_check",
    "run_suite",
    "zero_mode",
]
