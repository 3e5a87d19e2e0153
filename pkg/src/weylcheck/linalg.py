"""Small exact linear algebra over the rationals (lists of lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Matrix = List[List[Fraction]]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : rows @ x = 0}, each vector scaled so its last nonzero entry is -1."""
    if not rows:
        rows = [[0] * ncols]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        last = next(v for v in reversed(x) if v != 0)
        out.append([v / -last for v in x])
    return out


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in r] for r in a]


def matvec(a: Matrix, v: Sequence) -> List[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def minimal_polynomial_of(mat: Matrix) -> List[Fraction]:
    """Monic minimal polynomial, coefficients from degree 0 upward.

    Finds the first power ``M^k`` linearly dependent on ``I, M, ..., M^(k-1)``.
    """
    n = len(mat)
    if n == 0:
        return [Fraction(1)]
    powers = [identity(n)]
    while True:
        nxt = matmul(powers[-1], mat)
        powers.append(nxt)
        cols = [[x for r in p for x in r] for p in powers]
        rows = [list(t) for t in zip(*cols)]
        ns = nullspace(rows, len(powers))
        if ns:
            # last coefficient is -1: M^k = sum c_i M^i
            c = ns[0]
            return [-x for x in c[:-1]] + [Fraction(1)]


def minimal_annihilating_polynomial(mat: Matrix, vec: Sequence) -> List[Fraction]:
    """Monic polynomial of least degree with ``p(M) v = 0`` (Krylov dependence)."""
    vs = [[Fraction(x) for x in vec]]
    if not any(vs[0]):
        return [Fraction(1)]
    while True:
        vs.append(matvec(mat, vs[-1]))
        rows = [list(t) for t in zip(*vs)]
        ns = nullspace(rows, len(vs))
        if ns:
            c = ns[0]
            return [-x for x in c[:-1]] + [Fraction(1)]


def poly_eval_matrix(coeffs: Sequence, mat: Matrix) -> Matrix:
    n = len(mat)
    out = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(coeffs):
        out = matadd(matmul(out, mat), scale(identity(n), c))
    return out


def poly_from_roots(roots: Sequence) -> List[Fraction]:
    out = [Fraction(1)]
    for r in roots:
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] += c
            nxt[i] -= r * c
        out = nxt
    return out


class IncrementalDependence:
    """Detects the first vector that depends linearly on those added before it.

    Vectors are sparse dicts ``key -> rational``.  :meth:`add` returns ``None``
    while the family stays independent, otherwise coefficients ``c`` (one per
    vector added, the last equal to ``-1``) with ``sum c_i v_i == 0``.
    """

    def __init__(self):
        self._rows = []  # (pivot key, reduced vector, combination over inputs)
        self._count = 0

    def add(self, vec):
        idx = self._count
        self._count += 1
        v = {k: Fraction(x) for k, x in vec.items() if x}
        combo = {idx: Fraction(1)}
        for pivot, row, row_combo in self._rows:
            c = v.get(pivot)
            if c:
                for k, x in row.items():
                    w = v.get(k, 0) - c * x
                    if w:
                        v[k] = w
                    else:
                        v.pop(k, None)
                for k, x in row_combo.items():
                    w = combo.get(k, 0) - c * x
                    if w:
                        combo[k] = w
                    else:
                        combo.pop(k, None)
        if not v:
            last = combo[idx]
            return [-combo.get(i, Fraction(0)) / last for i in range(idx + 1)]
        pivot = min(v)
        inv = 1 / v[pivot]
        row = {k: x * inv for k, x in v.items()}
        row_combo = {k: x * inv for k, x in combo.items()}
        # keep rows fully reduced against the new pivot
        reduced = []
        for p, r, rc in self._rows:
            c = r.get(pivot)
            if c:
                r = dict(r)
                rc = dict(rc)
                for k, x in row.items():
                    w = r.get(k, 0) - c * x
                    if w:
                        r[k] = w
                    else:
                        r.pop(k, None)
                for k, x in row_combo.items():
                    w = rc.get(k, 0) - c * x
                    if w:
                        rc[k] = w
                    else:
                        rc.pop(k, None)
            reduced.append((p, r, rc))
        reduced.append((pivot, row, row_combo))
        self._rows = reduced
        return None
