"""Exact matrices of E10 operators on the states phi(m, n) with m + 2n <= D.

Two independent constructions are provided: from the closed-form ladder
actions, and by acting on explicit state prefactors and re-expanding the
image in the phi basis.  Spectral analysis (minimal polynomial, Jordan
block sizes) is done after specializing ``s`` and ``a3`` to rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Sequence, Tuple

import sympy

from . import linalg
from .models import ModelCatalog, build_model, lookup
from .scalar import A3, B1, S, Scalar
from .states import State, apply, make_phi

Index = Tuple[int, int]
Vector = Dict[Index, Scalar]


class NotFiltrationInvariant(ValueError):
    """The operator maps some basis state outside the span of the basis."""


class NonRationalSpectrum(ValueError):
    pass


class PhiBasisError(ArithmeticError):
    """The phi states failed the triangularity (independence) check."""


# -- closed-form ladder actions on phi(m, n) ---------------------------------


def _put(out: Vector, key: Index, c) -> None:
    if key[0] < 0 or key[1] < 0 or not c:
        return
    c = Scalar.coerce(c)
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _a_plus(m: int, n: int) -> Vector:
    return {(m + 1, n): Scalar.const(1)}


def _a_minus(m: int, n: int) -> Vector:
    out: Vector = {}
    _put(out, (m, n - 1), -n * S)
    return out


def _b_plus(m: int, n: int) -> Vector:
    return {(m, n + 1): Scalar.const(1)}


def _b_minus(m: int, n: int) -> Vector:
    out: Vector = {}
    _put(out, (m + 1, n - 1), Scalar.const(-n))
    _put(out, (m, n - 2), -Fraction(n * (n - 1), 2) * S)
    _put(out, (m - 1, n), -m * S)
    return out


def _hamiltonian(m: int, n: int) -> Vector:
    out: Vector = {}
    _put(out, (m + 2, n - 1), Scalar.const(2 * n))
    _put(out, (m + 1, n - 2), n * (n - 1) * S)
    _put(out, (m, n), 2 * (m + n + 1) * S)
    return out


def _l1(m: int, n: int) -> Vector:
    out: Vector = {}
    _put(out, (m + 1, n - 1), n * S)
    _put(out, (m, n), A3 / 12)
    return out


def _r(m: int, n: int) -> Vector:
    out: Vector = {}
    _put(out, (m + 2, n - 1), 3 * n * S)
    _put(out, (m + 1, n - 2), -Fraction(3, 2) * n * (n - 1) * B1)
    _put(out, (m, n), (m - n) * B1)
    return out


LADDER_ACTIONS: Dict[str, Callable[[int, int], Vector]] = {
    "A+": _a_plus,
    "A-": _a_minus,
    "B+": _b_plus,
    "B-": _b_minus,
    "H": _hamiltonian,
    "L1": _l1,
    "R": _r,
}

# bilinears, as sums of (coefficient, word); words act right to left
WORDS: Dict[str, List[Tuple[int, Tuple[str, ...]]]] = {
    "Q": [(1, ("A+", "B-"))],
    "S": [(1, ("B+", "A-"))],
    "T": [(1, ("A+", "A-"))],
    "U": [(1, ("A+",)), (-1, ("A-",))],
    "W": [(1, ("A+",)), (1, ("A-",))],
}

_ALIASES = {"Aplus": "A+", "Aminus": "A-", "Bplus": "B+", "Bminus": "B-"}


def act_closed_form(op_name: str, vec: Vector) -> Vector:
    """Image of a phi-coordinate vector under a named operator."""
    name = _ALIASES.get(op_name, op_name)
    out: Vector = {}
    if name in LADDER_ACTIONS:
        fn = LADDER_ACTIONS[name]
        for (m, n), c in vec.items():
            for key, d in fn(m, n).items():
                _put(out, key, c * d)
        return out
    if name in WORDS:
        for coeff, word in WORDS[name]:
            cur = vec
            for letter in reversed(word):
                cur = act_closed_form(letter, cur)
            for key, c in cur.items():
                _put(out, key, c * coeff)
        return out
    raise KeyError(f"no closed-form phi action for {op_name!r}")


def phi_vector_to_state(catalog: ModelCatalog, vec: Vector) -> State:
    out = State(catalog.model)
    for (m, n), c in vec.items():
        out = out + make_phi(catalog, m, n) * c
    return out


# -- basis and re-expansion --------------------------------------------------


@dataclass(frozen=True)
class BasisIndex:
    cutoff: int
    pairs: Tuple[Index, ...]

    @classmethod
    def build(cls, cutoff: int) -> "BasisIndex":
        if cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        pairs = sorted(((m, n) for n in range(cutoff // 2 + 1) for m in range(cutoff - 2 * n + 1)), key=lambda p: (p[1], p[0]))
        return cls(cutoff, tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def position(self) -> Dict[Index, int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def contains(self, key: Index) -> bool:
        m, n = key
        return m >= 0 and n >= 0 and m + 2 * n <= self.cutoff


def _lead_key(e: Tuple[int, int]):
    a, b = e
    return (2 * a + b, a)


def _phi_lead(catalog: ModelCatalog, m: int, n: int) -> Scalar:
    st = make_phi(catalog, m, n).prefactor
    lead = max(st, key=_lead_key)
    expected = (-S) ** (m + n)
    if lead != (n, m) or st[lead] != expected:
        raise PhiBasisError(f"phi({m},{n}) leading term is {lead}, {st[lead]}; expected z^{n} zb^{m}, {expected}")
    return st[lead]


def expand_in_phi(catalog: ModelCatalog, st: State, cutoff: int) -> Vector:
    """Exact phi-coordinates of ``st``, using the triangular leading terms."""
    if catalog.model != "E10":
        raise ValueError("phi re-expansion is only available for E10")
    rest = st
    out: Vector = {}
    while rest:
        pref = rest.prefactor
        a, b = max(pref, key=_lead_key)
        if a < 0 or b < 0:
            raise NotFiltrationInvariant(f"z^{a} zb^{b} is not in the span of the phi states")
        if b + 2 * a > cutoff:
            raise NotFiltrationInvariant(f"image has weight {b + 2 * a} > cutoff {cutoff}")
        c = pref[(a, b)] / _phi_lead(catalog, b, a)
        _put(out, (b, a), c)
        rest = rest - make_phi(catalog, b, a) * c
    return out


# -- matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class RepMatrix:
    op_name: str
    basis: BasisIndex
    entries: Tuple[Tuple[Scalar, ...], ...]

    @property
    def size(self) -> int:
        return len(self.basis)

    def specialize(self, s_val, a3_val) -> linalg.Matrix:
        return [[Fraction(c.eval(s_val, a3_val)) for c in row] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "operator": self.op_name,
            "cutoff": self.basis.cutoff,
            "dimension": self.size,
            "basis": [list(p) for p in self.basis.pairs],
            "entries": [[str(c) for c in row] for row in self.entries],
        }


def _matrix_from_columns(op_name: str, basis: BasisIndex, columns: Sequence[Vector]) -> RepMatrix:
    pos = basis.position()
    size = len(basis)
    rows = [[Scalar() for _ in range(size)] for _ in range(size)]
    for j, col in enumerate(columns):
        for key, c in col.items():
            if key not in pos:
                raise NotFiltrationInvariant(f"{op_name} maps phi{basis.pairs[j]} onto phi{key}, outside cutoff {basis.cutoff}")
            rows[pos[key]][j] = c
    return RepMatrix(op_name, basis, tuple(tuple(r) for r in rows))


def build_matrix(catalog: ModelCatalog, op_name: str, cutoff: int, route: str = "closed") -> RepMatrix:
    """Matrix of ``op_name`` on the phi basis with weight ``<= cutoff``.

    ``route="closed"`` uses the closed-form ladder actions; ``route="states"``
    applies the catalog operator to explicit prefactors and re-expands.
    """
    if catalog.model != "E10":
        raise ValueError("matrix representations are built for E10 only")
    basis = BasisIndex.build(cutoff)
    if route == "closed":
        cols = [act_closed_form(op_name, {p: Scalar.const(1)}) for p in basis.pairs]
    elif route == "states":
        op = lookup(catalog, op_name)
        cols = [expand_in_phi(catalog, apply(op, make_phi(catalog, *p), catalog), cutoff) for p in basis.pairs]
    else:
        raise ValueError(f"unknown route {route!r}")
    return _matrix_from_columns(_ALIASES.get(op_name, op_name), basis, cols)


def scalar_matmul(a: RepMatrix, b: RepMatrix) -> List[List[Scalar]]:
    n = a.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Scalar()
            for k in range(n):
                x, y = a.entries[i][k], b.entries[k][j]
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def matrix_commutator(a: RepMatrix, b: RepMatrix) -> List[List[Scalar]]:
    ab = scalar_matmul(a, b)
    ba = scalar_matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


# -- spectra -----------------------------------------------------------------


def minimal_polynomial(mat: RepMatrix, s_val=2, a3_val=3) -> List[Fraction]:
    """Monic minimal polynomial of the specialized matrix, low degree first."""
    if s_val == 0 or a3_val == 0:
        from .scalar import ZeroSpecialization

        raise ZeroSpecialization("specialization values must be nonzero")
    return linalg.minimal_polynomial_of(mat.specialize(s_val, a3_val))


def rational_roots(coeffs: Sequence[Fraction]) -> Dict[Fraction, int]:
    """Roots with multiplicity; raises if some irreducible factor is not linear."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    _, factors = poly.factor_list()
    out: Dict[Fraction, int] = {}
    for fac, mult in factors:
        if fac.degree() != 1:
            raise NonRationalSpectrum(f"irreducible factor {fac.as_expr()} of degree {fac.degree()}")
        a, b = fac.all_coeffs()
        root = -Fraction(int(b.p), int(b.q)) / Fraction(int(a.p), int(a.q))
        out[root] = out.get(root, 0) + mult
    return dict(sorted(out.items()))


def jordan_blocks(mat: RepMatrix, s_val=2, a3_val=3) -> List[Tuple[Fraction, List[int]]]:
    """Jordan block sizes per eigenvalue from ranks of powers of (M - lambda I)."""
    spec = mat.specialize(s_val, a3_val)
    n = len(spec)
    roots = rational_roots(linalg.minimal_polynomial_of(spec))
    out = []
    for lam, _ in roots.items():
        shifted = linalg.matsub(spec, linalg.scale(linalg.identity(n), lam))
        ranks = [n]
        power = linalg.identity(n)
        while True:
            power = linalg.matmul(power, shifted)
            ranks.append(linalg.rank(power))
            if ranks[-1] == ranks[-2]:
                break
        # number of blocks of size >= k is ranks[k-1] - ranks[k]
        at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
        sizes = []
        for k in range(1, len(at_least) + 1):
            exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
            sizes.extend([k] * exactly)
        out.append((lam, sorted(sizes, reverse=True)))
    return out


def jordan_report(mat: RepMatrix, s_val=2, a3_val=3) -> dict:
    blocks = jordan_blocks(mat, s_val, a3_val)
    return {
        "operator": mat.op_name,
        "cutoff": mat.basis.cutoff,
        "specialization": {"s": str(s_val), "a3": str(a3_val)},
        "eigenvalues": [{"eigenvalue": str(lam), "blocks": sizes} for lam, sizes in blocks],
    }


def e10_catalog() -> ModelCatalog:
    return build_model("E10")
