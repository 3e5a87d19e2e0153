"""Differential operators in z, zb with Laurent coefficients, kept in normal form.

A monomial ``(i, j, k, l)`` stands for ``z^i zb^j dz^k dzb^l``: coordinates
on the left, derivatives on the right.  ``i`` and ``j`` may be negative.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .scalar import ONE, Scalar

Monomial = Tuple[int, int, int, int]

__all__ = [
    "Monomial",
    "Operator",
    "op_normal_product",
    "commutator",
    "anticommutator",
    "op_pow",
    "nested_commutator",
    "apply_terms",
    "falling",
    "Z",
    "ZB",
    "DZ",
    "DZB",
    "IDENTITY",
]


@lru_cache(maxsize=None)
def falling(x: int, m: int) -> int:
    """x (x-1) ... (x-m+1); valid for negative x."""
    out = 1
    for t in range(m):
        out *= x - t
    return out


@lru_cache(maxsize=4096)
def _leibniz(k: int, i: int) -> Tuple[Tuple[int, int], ...]:
    """Pairs (m, weight) with dz^k z^i = sum weight * z^(i-m) dz^(k-m)."""
    out = []
    for m in range(k + 1):
        w = comb(k, m) * falling(i, m)
        if w == 0:
            break
        out.append((m, w))
    return tuple(out)


class Operator:
    """Immutable normal-ordered differential operator.

    ``terms`` maps :data:`Monomial` keys to nonzero :class:`Scalar` values.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar | Rational] | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                c = Scalar.coerce(c)
                if c:
                    i, j, k, l = key
                    if k < 0 or l < 0:
                        raise ValueError(f"negative derivative order in {key}")
                    clean[(int(i), int(j), int(k), int(l))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar]) -> "Operator":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def scalar(cls, c: Scalar | Rational) -> "Operator":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def monomial(cls, i: int = 0, j: int = 0, k: int = 0, l: int = 0, coeff: Scalar | Rational = 1) -> "Operator":
        return cls({(i, j, k, l): coeff})

    @classmethod
    def coerce(cls, x) -> "Operator":
        if isinstance(x, Operator):
            return x
        return cls.scalar(Scalar.coerce(x))

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> Tuple[int, int]:
        """Largest (dz-order, dzb-order) over all terms."""
        if not self._terms:
            return (0, 0)
        return (max(t[2] for t in self._terms), max(t[3] for t in self._terms))

    def has_derivatives(self) -> bool:
        return any(k or l for (_, _, k, l) in self._terms)

    def is_scalar_monomial(self) -> bool:
        """True for ``c * z^i * zb^j`` with ``c`` an invertible Laurent monomial."""
        if len(self._terms) != 1:
            return False
        ((_, _, k, l), c), = self._terms.items()
        return k == 0 and l == 0 and c.is_monomial()

    def inverse(self) -> "Operator":
        if not self.is_scalar_monomial():
            raise ZeroDivisionError(f"{self} is not an invertible multiplication operator")
        ((i, j, _, _), c), = self._terms.items()
        return Operator._raw({(-i, -j, 0, 0): c.inverse()})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Operator):
            if not isinstance(other, (Scalar, Rational)):
                return NotImplemented
            other = Operator.scalar(other)
        if not other._terms:
            return self
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return Operator._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Operator":
        return Operator._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Operator, Scalar, Rational)):
            return NotImplemented
        return self + (-Operator.coerce(other))

    def __rsub__(self, other):
        return Operator.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (Scalar, Rational)):
            if not other:
                return Operator()
            return Operator._raw({k: c * other for k, c in self._terms.items()})
        if isinstance(other, Operator):
            return op_normal_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        # scalars commute with everything
        if isinstance(other, (Scalar, Rational)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * Scalar.const(Fraction(1) / other)
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int) -> "Operator":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return op_pow(self.inverse(), -n)
        return op_pow(self, n)

    def __eq__(self, other) -> bool:
        if isinstance(other, Operator):
            return self._terms == other._terms
        if isinstance(other, (Scalar, Rational)):
            return self == Operator.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- specialization ----------------------------------------------------

    def specialize(self, s_val, a3_val) -> Dict[Monomial, Rational]:
        """Coefficient map with ``s`` and ``a3`` replaced by rationals."""
        out = {}
        for key, c in self._terms.items():
            v = c.eval(s_val, a3_val)
            if v:
                out[key] = v
        return out

    # -- text --------------------------------------------------------------

    def sorted_terms(self):
        """Terms in printing order: descending on (k, l, i, j)."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][2], kv[0][3], kv[0][0], kv[0][1]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(_term_text(key, c) for key, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Operator({str(self)!r})"


def _power_text(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _coeff_factors(c: Scalar) -> list:
    if not c.is_monomial():
        return [f"({c})"]
    ((es, ea), q), = c.items()
    factors = []
    if q != 1:
        factors.append(f"({q})" if q < 0 or q.denominator != 1 else str(q))
    if ea:
        factors.append(_power_text("a3", ea))
    if es:
        factors.append(_power_text("s", es))
    return factors


def _term_text(key: Monomial, c: Scalar) -> str:
    i, j, k, l = key
    factors = _coeff_factors(c)
    if i:
        factors.append(_power_text("z", i))
    if j:
        factors.append(_power_text("zb", j))
    if k:
        factors.append(_power_text("dz", k))
    if l:
        factors.append(_power_text("dzb", l))
    return "*".join(factors) if factors else "1"


def op_normal_product(x: Operator, y: Operator) -> Operator:
    """Normal form of ``x o y`` via the generalized Leibniz rule."""
    xt, yt = x._terms, y._terms
    if not xt or not yt:
        return Operator()
    # flat accumulator keyed by (i, j, k, l, e_s, e_a)
    acc: Dict[tuple, Rational] = defaultdict(int)
    for (i1, j1, k1, l1), c1 in xt.items():
        for (i2, j2, k2, l2), c2 in yt.items():
            prod = (c1 * c2)._terms
            if not prod:
                continue
            zs = _leibniz(k1, i2) if k1 else ((0, 1),)
            zbs = _leibniz(l1, j2) if l1 else ((0, 1),)
            i0, j0, k0, l0 = i1 + i2, j1 + j2, k1 + k2, l1 + l2
            for m, wm in zs:
                for n, wn in zbs:
                    w = wm * wn
                    base = (i0 - m, j0 - n, k0 - m, l0 - n)
                    for e, c in prod.items():
                        acc[base + e] += w * c
    grouped: Dict[Monomial, Dict] = defaultdict(dict)
    for key, c in acc.items():
        if c:
            grouped[key[:4]][key[4:]] = c
    return Operator._raw({k: Scalar(v) for k, v in grouped.items()})


def commutator(x: Operator, y: Operator) -> Operator:
    return op_normal_product(x, y) - op_normal_product(y, x)


def anticommutator(x: Operator, y: Operator) -> Operator:
    return op_normal_product(x, y) + op_normal_product(y, x)


def op_pow(x: Operator, n: int) -> Operator:
    if n < 0:
        raise ValueError("operator powers must be non-negative")
    out = IDENTITY
    for _ in range(n):
        out = op_normal_product(out, x)
    return out


def nested_commutator(ops: Sequence[Operator], core: Operator) -> Operator:
    """``[ops[0], [ops[1], ... [ops[-1], core]]]``."""
    if not ops:
        raise ValueError("nested commutator needs at least one outer operator")
    out = core
    for op in reversed(ops):
        out = commutator(op, out)
    return out


def apply_terms(op_terms: Mapping[Monomial, object], fn_terms: Mapping[Tuple[int, int], object]) -> Dict[Tuple[int, int], object]:
    """Act with an operator on a Laurent polynomial in z, zb.

    Works for any exact coefficient type (``Scalar`` or plain rationals).
    """
    out: Dict[Tuple[int, int], object] = {}
    for (i, j, k, l), c in op_terms.items():
        for (p, q), d in fn_terms.items():
            w = falling(p, k) * falling(q, l)
            if not w:
                continue
            key = (p - k + i, q - l + j)
            v = c * d * w
            prev = out.get(key)
            out[key] = v if prev is None else prev + v
    return {k: v for k, v in out.items() if v}


IDENTITY = Operator.scalar(ONE)
Z = Operator.monomial(1, 0, 0, 0)
ZB = Operator.monomial(0, 1, 0, 0)
DZ = Operator.monomial(0, 0, 1, 0)
DZB = Operator.monomial(0, 0, 0, 1)
