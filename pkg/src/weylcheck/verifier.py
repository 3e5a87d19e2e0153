"""Run relation suites, state-check programs and the minimal-annihilator explorer."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from . import matrixrep
from .linalg import IncrementalDependence
from .models import ModelCatalog
from .opdsl import Relation, StateCheck, SuiteFile, elaborate
from .oracle import check_residual, random_points
from .scalar import A3, B1, S, Scalar
from .states import State, apply, make_phi, psi, psibar, zero_mode

ORACLE_POINTS = 20
ORACLE_SEED = 20240611


class CapExceeded(RuntimeError):
    pass


class UnknownCheckKind(KeyError):
    pass


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | report
    citation: str
    residual_text: str = ""
    elapsed: float = 0.0
    cases: int = 1
    detail: str = ""

    def to_json(self, timing: bool = True) -> dict:
        out = {"name": self.name, "status": self.status, "citation": self.citation}
        if self.residual_text:
            out["residual_text"] = self.residual_text
        if self.detail:
            out["detail"] = self.detail
        out["elapsed_ms"] = round(self.elapsed * 1000, 3) if timing else 0
        return out


# -- relations ----------------------------------------------------------------


def run_relation(catalog: ModelCatalog, rel: Relation, defs=None, oracle_points: int = ORACLE_POINTS) -> CheckResult:
    """Normal-form residual of ``lhs - rhs``; passes are re-checked by the oracle."""
    t0 = time.perf_counter()
    env = None
    if rel.lhs_op is None or rel.rhs_op is None:
        from .opdsl import catalog_env

        env = catalog_env(catalog)
    lhs = rel.lhs_op if rel.lhs_op is not None else elaborate(rel.lhs, env)
    rhs = rel.rhs_op if rel.rhs_op is not None else elaborate(rel.rhs, env)
    residual = lhs - rhs
    detail = ""
    if rel.expected == "report":
        status = "report"
    elif residual:
        status = "fail"
    else:
        status = "pass"
        pts = random_points(oracle_points, seed=ORACLE_SEED)
        msg = check_residual(rel.lhs, rel.rhs, residual, catalog, defs, pts)
        if msg is not None:
            status, detail = "fail", msg
    text = "" if not residual else str(residual)
    if rel.expected == "report" and not residual:
        text = "0"
    return CheckResult(rel.name, status, rel.citation, text, time.perf_counter() - t0, detail=detail)


# -- state checks -------------------------------------------------------------

Case = Tuple[str, State, State]
CheckFn = Callable[[ModelCatalog, Dict[str, str]], Iterator[Case]]
STATE_CHECKS: Dict[str, CheckFn] = {}


def _register(kind: str):
    def deco(fn: CheckFn) -> CheckFn:
        STATE_CHECKS[kind] = fn
        return fn

    return deco


def parse_range(text: str) -> range:
    """``"3"`` or ``"1..10"`` (inclusive)."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def _n_range(params: Dict[str, str], default: str) -> range:
    return parse_range(params.get("n", default))


def l1_shift(catalog: ModelCatalog) -> Scalar:
    """Constant ``c`` with ``(L1 - c)^n psibar_n`` proportional to ``psi_n``."""
    return A3 / 12 if catalog.model == "E10" else Scalar.const(0)


def _phi(catalog, m, n) -> State:
    if m < 0 or n < 0:
        return State(catalog.model)
    return make_phi(catalog, m, n)


@_register("zero_mode")
def _zero_mode(cat, params):
    z0 = zero_mode(cat)
    empty = State(cat.model)
    yield "A- psi0", apply(cat["A-"], z0, cat), empty
    yield "B- psi0", apply(cat["B-"], z0, cat), empty
    yield "H psi0", apply(cat["H"], z0, cat), z0 * (2 * S)


@_register("psi_eigen")
def _psi_eigen(cat, params):
    c = l1_shift(cat)
    for n in _n_range(params, "0..10"):
        st = psi(cat, n)
        yield f"H psi{n}", apply(cat["H"], st, cat), st * (2 * (n + 1) * S)
        yield f"L1 psi{n}", apply(cat["L1"], st, cat), st * c


@_register("ladder_psi")
def _ladder_psi(cat, params):
    for n in _n_range(params, "0..10"):
        yield f"A- psi{n}", apply(cat["A-"], psi(cat, n), cat), State(cat.model)
        yield f"B- psi{n}", apply(cat["B-"], psi(cat, n), cat), _phi(cat, n - 1, 0) * (-n * S)
        yield f"A- psibar{n}", apply(cat["A-"], psibar(cat, n), cat), _phi(cat, 0, n - 1) * (-n * S)


@_register("quadratic_psi")
def _quadratic_psi(cat, params):
    amb = cat["A-"] * cat["B+"]
    apbm = cat["A+"] * cat["B-"]
    for n in _n_range(params, "0..10"):
        yield f"A-B+ psibar{n}", apply(amb, psibar(cat, n), cat), psibar(cat, n) * (-(n + 1) * S)
        yield f"A-B+ psi{n}", apply(amb, psi(cat, n), cat), psi(cat, n) * (-S)
        yield f"A+B- psi{n}", apply(apbm, psi(cat, n), cat), psi(cat, n) * (-n * S)


@_register("l1_power")
def _l1_power(cat, params):
    op = cat["L1"] - l1_shift(cat)
    for n in _n_range(params, "1..10"):
        st = psibar(cat, n)
        for _ in range(n):
            st = apply(op, st, cat)
        yield f"(L1-c)^{n} psibar{n}", st, psi(cat, n) * (factorial(n) * S**n)


@_register("l1_partial")
def _l1_partial(cat, params):
    op = cat["L1"] - l1_shift(cat)
    for n in _n_range(params, "1..10"):
        st = psibar(cat, n)
        for p in range(1, n + 1):
            st = apply(op, st, cat)
            rhs = _phi(cat, p, n - p) * (Fraction(factorial(n), factorial(n - p)) * S**p)
            yield f"(L1-c)^{p} psibar{n}", st, rhs


def stated_p(n: int) -> int:
    """Exponent of the R-shift annihilator as stated for the quartic model."""
    if n <= 4:
        return {1: 1, 2: 3, 3: 3, 4: 5}[n]
    return n + 1 if n % 2 == 0 else n - 1


@_register("r_shift_annihilates")
def _r_shift(cat, params):
    op = cat["R"] + S * A3
    for n in _n_range(params, "1..10"):
        st = psibar(cat, n)
        for _ in range(stated_p(n)):
            st = apply(op, st, cat)
        yield f"(R+s*a3)^{stated_p(n)} psibar{n}", st, State(cat.model)


def h_product_factors(model: str, n: int) -> Optional[List[Fraction]]:
    """Multiples ``c`` of ``s`` in the stated H-annihilator ``prod (H - c s)`` of psibar_n.

    ``None`` for odd ``n`` in the quartic model, where the stated product
    limits are not integers.
    """
    if model == "E10":
        i_min = n + 1 - n // 2
        return [Fraction(2 * i) for i in range(i_min, 2 * n + 2)]
    if n % 2:
        return None
    return [Fraction(2 * (1 + n))] + [Fraction(-(2 + 4 * i)) for i in range(-n // 2 + 1, 3 * n // 2)]


@_register("h_product")
def _h_product(cat, params):
    for n in _n_range(params, "1..10"):
        factors = h_product_factors(cat.model, n)
        if factors is None:
            continue
        st = psibar(cat, n)
        for c in factors:
            st = apply(cat["H"] - c * S, st, cat)
        yield f"H product psibar{n}", st, State(cat.model)


@_register("phi_action")
def _phi_action(cat, params):
    ops = params.get("op", "A+,A-,B+,B-,H,L1,R").split(",")
    weight = int(params.get("weight", "12"))
    for op_name in ops:
        op = cat[op_name]
        for n in range(weight // 2 + 1):
            for m in range(weight - 2 * n + 1):
                lhs = apply(op, make_phi(cat, m, n), cat)
                rhs = matrixrep.phi_vector_to_state(cat, matrixrep.act_closed_form(op_name, {(m, n): Scalar.const(1)}))
                yield f"{op_name} phi({m},{n})", lhs, rhs


def ab_exponent(n: int) -> int:
    return n if n <= 3 else n - 1


@_register("ab_power")
def _ab_power(cat, params):
    op = cat["A-"] * cat["B-"]
    for n in _n_range(params, "1..8"):
        st = psibar(cat, n)
        k = ab_exponent(n)
        for _ in range(k):
            st = apply(op, st, cat)
        yield f"(A-B-)^{k} psibar{n}", st, State(cat.model)


def _r_product_rhs(cat, n: int, p: int) -> State:
    rhs = State(cat.model)
    for q in range(p + 1):
        if n - p - q < 0:
            continue
        c = 3**p * Fraction(factorial(n), factorial(n - p - q)) * Fraction(-1, 2) ** q * comb(p, q)
        rhs = rhs + _phi(cat, 2 * p - q, n - p - q) * (c * S ** (p + q))
    return rhs


@_register("r_product")
def _r_product(cat, params):
    for n in _n_range(params, "0..10"):
        st = psibar(cat, n)
        if n == 0:
            yield "empty product psibar0", st, psi(cat, 0)
        for p in range(1, n + 1):
            st = apply(cat["R"] + (n - 3 * (p - 1)) * B1, st, cat)
            yield f"R product p={p} psibar{n}", st, _r_product_rhs(cat, n, p)
        if n:
            yield f"R product p=n psibar{n}", st, psi(cat, 2 * n) * (3**n * factorial(n) * S**n)


@_register("r_product_zero")
def _r_product_zero(cat, params):
    for n in _n_range(params, "1..10"):
        st = psibar(cat, n)
        for i in range(n + 1):
            st = apply(cat["R"] + (n - 3 * i) * B1, st, cat)
        yield f"R product to n psibar{n}", st, State(cat.model)


def run_state_check(catalog: ModelCatalog, check: StateCheck) -> CheckResult:
    t0 = time.perf_counter()
    fn = STATE_CHECKS.get(check.kind)
    if fn is None:
        raise UnknownCheckKind(f"unknown state-check kind {check.kind!r}")
    cases = 0
    for label, lhs, rhs in fn(catalog, check.params):
        cases += 1
        diff = lhs - rhs
        if diff:
            return CheckResult(
                check.name, "fail", check.citation, f"{label}: {diff}", time.perf_counter() - t0, cases
            )
    return CheckResult(check.name, "pass", check.citation, "", time.perf_counter() - t0, cases)


# -- suites ---------------------------------------------------------------------


@dataclass
class SuiteReport:
    model: str
    results: List[CheckResult]
    wall: float = 0.0

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "report": 0}
        for r in self.results:
            counts[r.status] += 1
        return {**counts, "total": len(self.results)}

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_json(self, timing: bool = True) -> dict:
        summary = dict(self.summary)
        summary["wall_ms"] = round(self.wall * 1000, 3) if timing else 0
        return {"model": self.model, "results": [r.to_json(timing) for r in self.results], "summary": summary}

    def to_text(self, timing: bool = True) -> str:
        lines = []
        for r in self.results:
            tail = f" ({r.elapsed * 1000:.1f} ms)" if timing else ""
            lines.append(f"{r.status.upper():6} {r.name} [{r.citation}]{tail}")
            if r.residual_text:
                lines.append(f"       residual: {r.residual_text}")
            if r.detail:
                lines.append(f"       {r.detail}")
        s = self.summary
        wall = f" in {self.wall:.2f} s" if timing else ""
        lines.append(f"{self.model}: {s['pass']} pass, {s['fail']} fail, {s['report']} report, {s['total']} total{wall}")
        return "\n".join(lines) + "\n"


def run_suite(suite: SuiteFile) -> SuiteReport:
    """Relations first, then state checks, in suite order."""
    t0 = time.perf_counter()
    cat = suite.catalog
    results = [run_relation(cat, rel, suite.definitions) for rel in suite.relations]
    results += [run_state_check(cat, chk) for chk in suite.state_checks]
    return SuiteReport(cat.model, results, time.perf_counter() - t0)


def report_json(report: SuiteReport, timing: bool = True) -> str:
    return json.dumps(report.to_json(timing), indent=2, sort_keys=False) + "\n"


# -- minimal annihilators -------------------------------------------------------


@dataclass
class AnnihilatorFinding:
    model: str
    n: int
    family: str  # R | L1 | H
    minimal: Optional[int] = None
    factors: List[Fraction] = field(default_factory=list)  # H roots as multiples of s
    coefficient: str = ""  # L1 family: proportionality constant
    predicted: Optional[int] = None
    predicted_factors: Optional[List[Fraction]] = None
    matched_stated: bool = False
    confirmed: bool = False
    cap: int = 0
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "model": self.model,
            "n": self.n,
            "family": self.family,
            "minimal": self.minimal,
            "predicted": self.predicted,
            "matched_stated": self.matched_stated,
            "confirmed": self.confirmed,
            "cap": self.cap,
        }
        if self.family == "H":
            out["factors"] = [str(f) for f in self.factors]
            out["predicted_factors"] = None if self.predicted_factors is None else [str(f) for f in self.predicted_factors]
        if self.coefficient:
            out["coefficient"] = self.coefficient
        if self.note:
            out["note"] = self.note
        return out

    def to_text(self) -> str:
        found = "-" if self.minimal is None else str(self.minimal)
        pred = "-" if self.predicted is None else str(self.predicted)
        line = f"{self.model} {self.family} n={self.n}: minimal={found} predicted={pred} matched={self.matched_stated} confirmed={self.confirmed}"
        if self.family == "H" and self.factors:
            line += " factors=" + ",".join(str(f) for f in self.factors)
        if self.coefficient:
            line += f" coefficient={self.coefficient}"
        if self.note:
            line += f" ({self.note})"
        return line


def _r_family(cat: ModelCatalog, n: int, cap: int) -> AnnihilatorFinding:
    st = psibar(cat, n)
    if cat.model == "E8":
        factor = lambda i: cat["R"] + S * A3  # noqa: E731
        predicted = stated_p(n)
    else:
        factor = lambda i: cat["R"] + (n - 3 * i) * B1  # noqa: E731
        predicted = n + 1
    for p in range(1, cap + 1):
        st = apply(factor(p - 1), st, cat)
        if st.is_zero():
            return AnnihilatorFinding(
                cat.model, n, "R", p, predicted=predicted, matched_stated=p == predicted, confirmed=True, cap=cap
            )
    raise CapExceeded(f"{cat.model} R family, n={n}: no annihilator up to exponent {cap}")


def _monomial_key(st: State):
    for k, v in sorted(st.prefactor.items()):
        if v.is_monomial():
            return k, v
    return None


def _l1_family(cat: ModelCatalog, n: int, cap: int) -> AnnihilatorFinding:
    op = cat["L1"] - l1_shift(cat)
    target = psi(cat, n)
    key, lead = _monomial_key(target)
    st = psibar(cat, n)
    for p in range(1, cap + 1):
        st = apply(op, st, cat)
        if st.is_zero():
            break
        c = st.prefactor.get(key)
        if c is None:
            continue
        lam = c / lead
        if st == target * lam:
            expected = factorial(n) * S**n
            return AnnihilatorFinding(
                cat.model,
                n,
                "L1",
                p,
                coefficient=str(lam),
                predicted=n,
                matched_stated=p == n and lam == expected,
                confirmed=True,
                cap=cap,
            )
    raise CapExceeded(f"{cat.model} L1 family, n={n}: no psi-proportional power up to {cap}")


def predicted_h_factors(model: str, n: int) -> Optional[List[Fraction]]:
    """Stated H-annihilator roots (multiples of s), or None where ill-defined."""
    factors = h_product_factors(model, n)
    return None if factors is None else sorted(factors)


def _h_family(cat: ModelCatalog, n: int, cap: int, s_val=Fraction(2), a3_val=Fraction(3)) -> AnnihilatorFinding:
    from .states import gauge_conjugate
    from .weylalg import apply_terms

    conj = gauge_conjugate(cat["H"], cat).specialize(s_val, a3_val)
    vec = psibar(cat, n).specialize(s_val, a3_val)
    dep = IncrementalDependence()
    coeffs = None
    for _ in range(cap + 1):
        coeffs = dep.add(vec)
        if coeffs is not None:
            break
        vec = apply_terms(conj, vec)
    if coeffs is None:
        raise CapExceeded(f"{cat.model} H family, n={n}: cyclic space exceeds {cap}")
    poly = [-c for c in coeffs[:-1]] + [Fraction(1)]
    pred = predicted_h_factors(cat.model, n)
    finding = AnnihilatorFinding(cat.model, n, "H", len(poly) - 1, cap=cap, predicted_factors=pred)
    finding.predicted = None if pred is None else len(pred)
    try:
        roots = matrixrep.rational_roots(poly)
    except matrixrep.NonRationalSpectrum:
        finding.note = "non-rational roots at the sample point"
        return finding
    factors = sorted(r / s_val for r, mult in roots.items() for _ in range(mult))
    finding.factors = factors
    st = psibar(cat, n)
    for c in factors:
        st = apply(cat["H"] - c * S, st, cat)
    finding.confirmed = st.is_zero()
    if not finding.confirmed:
        finding.note = "sample-point roots did not lift symbolically"
    elif pred is not None:
        remaining = list(pred)
        sub = True
        for f in factors:
            if f in remaining:
                remaining.remove(f)
            else:
                sub = False
        finding.matched_stated = sub
        if sub and remaining:
            finding.note = "stated product has redundant factors"
    return finding


def default_cap(family: str, n: int) -> int:
    return 4 * n + 4 if family == "H" else 2 * n + 3


def find_minimal_annihilator(catalog: ModelCatalog, family: str, n: int, cap: Optional[int] = None) -> AnnihilatorFinding:
    """Smallest annihilating exponent (R, L1) or polynomial (H) for psibar_n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    family = family.upper() if family.upper() != "L1" else "L1"
    cap = default_cap(family, n) if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if family == "R":
        return _r_family(catalog, n, cap)
    if family == "L1":
        return _l1_family(catalog, n, cap)
    if family == "H":
        return _h_family(catalog, n, cap)
    raise ValueError(f"unknown family {family!r}; expected R, L1 or H")
