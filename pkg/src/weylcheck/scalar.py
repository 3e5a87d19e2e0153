"""Laurent polynomials in ``s`` and ``a3`` with exact rational coefficients.

``s`` stands for the square root of ``b1``, so ``b1`` itself is ``s**2``.
Coefficients are Python ints or :class:`fractions.Fraction`; both are exact
and compare/hash consistently, and keeping integers as ``int`` is markedly
faster in the expansion loops.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, Tuple, Union

Exponents = Tuple[int, int]
Coefficient = Union[int, Fraction]


class ZeroSpecialization(ValueError):
    """A symbol carrying a negative power was specialized to zero."""


def _canon(q: Coefficient) -> Coefficient:
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


class Scalar:
    """Immutable element of Q[s, 1/s, a3, 1/a3].

    ``terms`` maps ``(e_s, e_a)`` to a nonzero rational coefficient.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Exponents, Coefficient] | None = None):
        if terms:
            self._terms = {k: _canon(v) for k, v in terms.items() if v != 0}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponents, Coefficient]) -> "Scalar":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, q: Coefficient) -> "Scalar":
        return cls({(0, 0): q}) if q else cls()

    @classmethod
    def monomial(cls, coeff: Coefficient, e_s: int = 0, e_a: int = 0) -> "Scalar":
        return cls({(e_s, e_a): coeff}) if coeff else cls()

    @classmethod
    def coerce(cls, x: "Scalar | Coefficient") -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, Rational):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponents, Coefficient]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponents, Coefficient]]:
        return iter(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0) in self._terms)

    def constant_value(self) -> Coefficient:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self._terms.get((0, 0), 0)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, Rational):
                return NotImplemented
            other = Scalar.const(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Scalar, Rational)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, Rational):
            return NotImplemented
        return Scalar.const(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other:
                return Scalar()
            return Scalar._raw({k: _canon(v * other) for k, v in self._terms.items()})
        if not isinstance(other, Scalar):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return Scalar()
        if len(b) > len(a):
            a, b = b, a
        out: Dict[Exponents, Coefficient] = {}
        for (bs, ba), bv in b.items():
            for (s_, a_), av in a.items():
                k = (s_ + bs, a_ + ba)
                out[k] = out.get(k, 0) + av * bv
        return Scalar({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Inverse of a monomial; other elements are not units."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not invertible in the Laurent ring")
        ((es, ea), c), = self._terms.items()
        return Scalar._raw({(-es, -ea): _canon(Fraction(1) / c)})

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (Fraction(1) / other)
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, Rational):
            return self._terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- specialization ----------------------------------------------------

    def eval(self, s_val: Coefficient, a3_val: Coefficient) -> Coefficient:
        """Substitute rational values for ``s`` and ``a3``."""
        total: Coefficient = 0
        for (es, ea), c in self._terms.items():
            if (es < 0 and s_val == 0) or (ea < 0 and a3_val == 0):
                raise ZeroSpecialization(f"cannot set {'s' if es < 0 else 'a3'}=0 in {self}")
            total += c * _ipow(s_val, es) * _ipow(a3_val, ea)
        return _canon(total)

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for idx, ((es, ea), c) in enumerate(sorted(self._terms.items())):
            neg = c < 0
            body = _monomial_text(abs(c), es, ea)
            if idx == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _ipow(x: Coefficient, e: int) -> Coefficient:
    if e >= 0:
        return x**e
    return Fraction(1) / (x ** (-e))


def _power_text(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _monomial_text(c: Coefficient, es: int, ea: int) -> str:
    """Render ``c * a3^ea * s^es`` with ``c`` nonnegative."""
    factors = []
    if ea:
        factors.append(_power_text("a3", ea))
    if es:
        factors.append(_power_text("s", es))
    if c != 1 or not factors:
        factors.insert(0, str(c))
    return "*".join(factors)


def scalar_add(x: Scalar, y: Scalar) -> Scalar:
    return x + y


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def scalar_eval(x: Scalar, s_val: Coefficient, a3_val: Coefficient) -> Coefficient:
    return x.eval(s_val, a3_val)


ZERO = Scalar()
ONE = Scalar.const(1)
S = Scalar.monomial(1, 1, 0)
A3 = Scalar.monomial(1, 0, 1)
B1 = Scalar.monomial(1, 2, 0)
