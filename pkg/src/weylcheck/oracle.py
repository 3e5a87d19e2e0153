"""Monomial-application oracle.

Evaluates an expression tree by letting it act on a test function
``z^p zb^q`` at a rational specialization of ``s`` and ``a3``.  Products and
brackets are applied right to left, never normal-ordered, so the result is
independent of the Leibniz expansion in :mod:`weylcheck.weylalg`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from . import opdsl as D
from .models import ModelCatalog
from .weylalg import Operator, apply_terms

Func = Dict[Tuple[int, int], Fraction]

# catalog names that are themselves defined from other catalog operators
DERIVED = {
    "R": D.Comm(D.Ref("L1"), D.Ref("L2")),
    "Q": D.Mul(D.Ref("A+"), D.Ref("B-")),
    "S": D.Mul(D.Ref("B+"), D.Ref("A-")),
    "T": D.Mul(D.Ref("A+"), D.Ref("A-")),
    "U": D.Sub(D.Ref("A+"), D.Ref("A-")),
    "W": D.Add(D.Ref("A+"), D.Ref("A-")),
}


def _add(f: Func, g: Func, sign: int = 1) -> Func:
    out = dict(f)
    for k, v in g.items():
        w = out.get(k, 0) + sign * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _scale(f: Func, c) -> Func:
    if not c:
        return {}
    return {k: v * c for k, v in f.items()}


@dataclass
class OracleContext:
    s_val: Fraction
    a3_val: Fraction
    base: Mapping[str, Operator]
    defs: Mapping[str, D.Expr] = field(default_factory=dict)
    _spec: Dict[str, dict] = field(default_factory=dict, repr=False)

    def base_terms(self, name: str) -> dict:
        hit = self._spec.get(name)
        if hit is None:
            hit = self.base[name].specialize(self.s_val, self.a3_val)
            self._spec[name] = hit
        return hit

    def act(self, ast: D.Expr, fn: Func) -> Func:
        if not fn:
            return {}
        if isinstance(ast, D.Num):
            return _scale(fn, ast.value)
        if isinstance(ast, D.Sym):
            if ast.name == "s":
                return _scale(fn, self.s_val)
            if ast.name == "a3":
                return _scale(fn, self.a3_val)
            if ast.name == "z":
                return {(p + 1, q): v for (p, q), v in fn.items()}
            if ast.name == "zb":
                return {(p, q + 1): v for (p, q), v in fn.items()}
            if ast.name == "dz":
                return {(p - 1, q): v * p for (p, q), v in fn.items() if p}
            return {(p, q - 1): v * q for (p, q), v in fn.items() if q}
        if isinstance(ast, D.Ref):
            if ast.name in self.defs:
                return self.act(self.defs[ast.name], fn)
            if ast.name in DERIVED:
                return self.act(DERIVED[ast.name], fn)
            if ast.name in self.base:
                return apply_terms(self.base_terms(ast.name), fn)
            raise D.UnboundName(ast.name)
        if isinstance(ast, D.Add):
            return _add(self.act(ast.left, fn), self.act(ast.right, fn))
        if isinstance(ast, D.Sub):
            return _add(self.act(ast.left, fn), self.act(ast.right, fn), -1)
        if isinstance(ast, D.Mul):
            return self.act(ast.left, self.act(ast.right, fn))
        if isinstance(ast, D.Neg):
            return _scale(self.act(ast.operand, fn), -1)
        if isinstance(ast, D.Pow):
            if ast.exp >= 0:
                for _ in range(ast.exp):
                    fn = self.act(ast.base, fn)
                return fn
            mult = self.act(ast.base, {(0, 0): Fraction(1)})
            if len(mult) != 1:
                raise D.NegativeOperatorPower(D.print_expr(ast))
            ((i, j), c), = mult.items()
            inv = {(-i, -j): 1 / Fraction(c)}
            for _ in range(-ast.exp):
                fn = apply_terms({(a, b, 0, 0): v for (a, b), v in inv.items()}, fn)
            return fn
        if isinstance(ast, D.Comm):
            return _add(self.act(ast.left, self.act(ast.right, fn)), self.act(ast.right, self.act(ast.left, fn)), -1)
        if isinstance(ast, D.Anti):
            return _add(self.act(ast.left, self.act(ast.right, fn)), self.act(ast.right, self.act(ast.left, fn)))
        if isinstance(ast, D.Nest):
            core = ast.core
            for op in reversed(ast.ops):
                core = D.Comm(op, core)
            return self.act(core, fn)
        raise TypeError(f"not an expression node: {ast!r}")


def base_operators(catalog: ModelCatalog) -> Dict[str, Operator]:
    """Catalog operators in DSL spelling, minus those the oracle rebuilds."""
    env = D.catalog_env(catalog)
    return {k: v for k, v in env.items() if k not in DERIVED}


def random_points(n: int, seed: int = 0, lo: int = -4, hi: int = 6) -> List[Tuple[int, int, Fraction, Fraction]]:
    """``n`` random (p, q, s, a3) test points with nonzero specializations."""
    rng = random.Random(seed)

    def nonzero():
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))

    return [(rng.randint(lo, hi), rng.randint(lo, hi), nonzero(), nonzero()) for _ in range(n)]


def check_residual(
    lhs: D.Expr,
    rhs: D.Expr,
    residual: Operator,
    catalog: ModelCatalog,
    defs: Optional[Mapping[str, D.Expr]] = None,
    points: Iterable[Tuple[int, int, Fraction, Fraction]] = (),
) -> Optional[str]:
    """Compare oracle action of ``lhs - rhs`` with the normal-form residual.

    Returns ``None`` on agreement, otherwise a description of the first
    disagreeing test point.
    """
    base = base_operators(catalog)
    for p, q, s_val, a3_val in points:
        ctx = OracleContext(s_val, a3_val, base, defs or {})
        fn = {(p, q): Fraction(1)}
        lazy = _add(ctx.act(lhs, fn), ctx.act(rhs, fn), -1)
        direct = apply_terms(residual.specialize(s_val, a3_val), fn)
        if lazy != direct:
            return f"oracle disagrees at z^{p} zb^{q}, s={s_val}, a3={a3_val}"
    return None


def vanishes_on_monomials(op: Operator, lo: int = -4, hi: int = 6, s_val=Fraction(2), a3_val=Fraction(3)) -> bool:
    """True when ``op`` kills every ``z^p zb^q`` with ``lo <= p, q <= hi``."""
    terms = op.specialize(s_val, a3_val)
    for p in range(lo, hi + 1):
        for q in range(lo, hi + 1):
            if apply_terms(terms, {(p, q): Fraction(1)}):
                return False
    return True
