"""Gauge-dressed states ``P(z, zb) * exp(E)`` and operator action on them.

Operators act on the prefactor ``P`` through their gauge conjugate
``exp(-E) O exp(E)``, obtained by replacing ``dz -> dz + E_z`` and
``dzb -> dzb + E_zb``.  Conjugates are computed once per (model, operator).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import nullspace
from .models import ModelCatalog, build_model
from .scalar import ONE, Scalar, ZeroSpecialization
from .weylalg import DZ, DZB, IDENTITY, Operator, apply_terms, op_normal_product

Exponent = Tuple[int, int]


class ModelMismatch(ValueError):
    pass


class State:
    """Immutable state: model tag (``None`` for gauge-free) and Laurent prefactor."""

    __slots__ = ("model", "_pref", "_hash")

    def __init__(self, model: Optional[str], prefactor: Dict[Exponent, Scalar] | None = None):
        self.model = model
        self._pref = {k: Scalar.coerce(v) for k, v in (prefactor or {}).items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, model, pref) -> "State":
        obj = cls.__new__(cls)
        obj.model = model
        obj._pref = pref
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, model: Optional[str], p: int, q: int, coeff=1) -> "State":
        return cls(model, {(p, q): Scalar.coerce(coeff)})

    @property
    def prefactor(self) -> Dict[Exponent, Scalar]:
        return dict(self._pref)

    def __bool__(self) -> bool:
        return bool(self._pref)

    def is_zero(self) -> bool:
        return not self._pref

    def _check(self, other: "State") -> None:
        if self.model != other.model:
            raise ModelMismatch(f"cannot combine {self.model} and {other.model} states")

    def __add__(self, other: "State") -> "State":
        if not isinstance(other, State):
            return NotImplemented
        self._check(other)
        out = dict(self._pref)
        for k, v in other._pref.items():
            w = out[k] + v if k in out else v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return State._raw(self.model, out)

    def __neg__(self) -> "State":
        return State._raw(self.model, {k: -v for k, v in self._pref.items()})

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def __mul__(self, c) -> "State":
        c = Scalar.coerce(c)
        if not c:
            return State._raw(self.model, {})
        return State._raw(self.model, {k: v * c for k, v in self._pref.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self.model == other.model and self._pref == other._pref

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.model, frozenset(self._pref.items())))
        return self._hash

    def as_operator(self) -> Operator:
        return Operator({(p, q, 0, 0): c for (p, q), c in self._pref.items()})

    def prefactor_text(self) -> str:
        return str(self.as_operator())

    def specialize(self, s_val, a3_val) -> Dict[Exponent, Fraction]:
        out = {}
        for k, v in self._pref.items():
            x = v.eval(s_val, a3_val)
            if x:
                out[k] = x
        return out

    def __str__(self) -> str:
        if self.model is None:
            return self.prefactor_text()
        return f"({self.prefactor_text()}) * exp[{self.model}]"

    def __repr__(self) -> str:
        return f"State({str(self)!r})"


_CONJ_CACHE: Dict[tuple, Operator] = {}
_POW_CACHE: Dict[tuple, Operator] = {}


def _shift_power(model: str, which: int, n: int, shift: Operator) -> Operator:
    key = (model, which, n)
    hit = _POW_CACHE.get(key)
    if hit is None:
        base = (DZ if which == 0 else DZB) + shift
        hit = IDENTITY if n == 0 else op_normal_product(_shift_power(model, which, n - 1, shift), base)
        _POW_CACHE[key] = hit
    return hit


def gauge_conjugate(op: Operator, catalog: Optional[ModelCatalog]) -> Operator:
    """``exp(-E) op exp(E)`` in normal form; identity map when ``catalog`` is None."""
    if catalog is None:
        return op
    key = (catalog.model, op)
    hit = _CONJ_CACHE.get(key)
    if hit is not None:
        return hit
    g = catalog.gauge
    out = Operator()
    for (i, j, k, l), c in op.items():
        mult = Operator.monomial(i, j, 0, 0, c)
        piece = op_normal_product(mult, _shift_power(catalog.model, 0, k, g.e_z))
        piece = op_normal_product(piece, _shift_power(catalog.model, 1, l, g.e_zb))
        out = out + piece
    _CONJ_CACHE[key] = out
    return out


def _catalog_for(st: State, catalog: Optional[ModelCatalog]) -> Optional[ModelCatalog]:
    if catalog is not None:
        if st.model != catalog.model:
            raise ModelMismatch(f"operator from {catalog.model} applied to {st.model} state")
        return catalog
    if st.model is None:
        return None
    return build_model(st.model)


def apply(op: Operator, st: State, catalog: Optional[ModelCatalog] = None) -> State:
    """Act with ``op`` on ``st``.

    ``catalog`` names the model the operator belongs to; when omitted the
    state's own model tag decides the gauge (gauge-free for ``None``).
    """
    cat = _catalog_for(st, catalog)
    conj = gauge_conjugate(op, cat)
    return State._raw(st.model, apply_terms(conj._terms, st._pref))


def apply_power(op: Operator, n: int, st: State, catalog: Optional[ModelCatalog] = None) -> State:
    for _ in range(n):
        st = apply(op, st, catalog)
    return st


def zero_mode(catalog: ModelCatalog) -> State:
    return State(catalog.model, {(0, 0): ONE})


def make_phi(catalog: ModelCatalog, m: int, n: int) -> State:
    """``(A+)^m (B+)^n`` applied to the zero mode, memoized per model."""
    if m < 0 or n < 0:
        raise ValueError("phi indices must be non-negative")
    return _phi(catalog.model, m, n)


_PHI_CACHE: Dict[tuple, State] = {}


def _phi(model: str, m: int, n: int) -> State:
    key = (model, m, n)
    hit = _PHI_CACHE.get(key)
    if hit is not None:
        return hit
    cat = build_model(model)
    if m == 0 and n == 0:
        out = zero_mode(cat)
    elif m == 0:
        out = apply(cat["Bplus"], _phi(model, 0, n - 1), cat)
    else:
        out = apply(cat["Aplus"], _phi(model, m - 1, n), cat)
    _PHI_CACHE[key] = out
    return out


def psi(catalog: ModelCatalog, n: int) -> State:
    return make_phi(catalog, n, 0)


def psibar(catalog: ModelCatalog, n: int) -> State:
    return make_phi(catalog, 0, n)


def state_linear_combination_solve(
    states: Sequence[State], s_val=2, a3_val=3
) -> Optional[List[Fraction]]:
    """Exact rational dependence among ``states`` after specializing s and a3.

    Returns coefficients ``c`` with ``sum c_i * states[i] == 0``, scaled so
    the last nonzero one is ``-1``, or ``None`` when the states are independent.
    """
    if not states:
        return None
    models = {st.model for st in states}
    if len(models) > 1:
        raise ModelMismatch(f"mixed models {sorted(map(str, models))}")
    if s_val == 0 or a3_val == 0:
        raise ZeroSpecialization("specialization values must be nonzero")
    vecs = [st.specialize(s_val, a3_val) for st in states]
    support = sorted(set().union(*vecs))
    rows = [[v.get(key, 0) for v in vecs] for key in support]
    basis = nullspace(rows, len(states))
    if not basis:
        return None
    return basis[0]


def falling_factorial(n: int, p: int) -> int:
    return factorial(n) // factorial(n - p)
