from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from weylcheck import opdsl as D
from weylcheck.scalar import Scalar
from weylcheck.weylalg import Operator

settings.register_profile("weylcheck", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("weylcheck")

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)
nonzero_rationals = rationals.filter(bool)


@st.composite
def scalars(draw, max_terms=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        key = (draw(st.integers(-2, 3)), draw(st.integers(-2, 2)))
        terms[key] = draw(rationals)
    return Scalar(terms)


@st.composite
def operators(draw, max_terms=3, max_order=2):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        key = (
            draw(st.integers(-2, 2)),
            draw(st.integers(-2, 2)),
            draw(st.integers(0, max_order)),
            draw(st.integers(0, max_order)),
        )
        terms[key] = draw(scalars(max_terms=2))
    return Operator(terms)


NAMES = ("H", "L1", "L2", "R", "A+", "A-", "B+", "B-", "M", "Q", "S", "T", "U", "W")


def _leaves(names=NAMES):
    return st.one_of(
        st.sampled_from(D.SYMBOLS).map(D.Sym),
        st.sampled_from(names).map(D.Ref),
        st.fractions(min_value=0, max_value=20, max_denominator=7).map(D.Num),
    )


def exprs(names=NAMES, max_leaves=12):
    """Random ASTs; powers only on leaves, with negative exponents only on coordinates/scalars."""

    def pow_of(leaf):
        if isinstance(leaf, D.Sym) and leaf.name in ("z", "zb", "s", "a3"):
            return st.integers(-3, 3).map(lambda e: D.Pow(leaf, e))
        return st.integers(0, 3).map(lambda e: D.Pow(leaf, e))

    base = _leaves(names).flatmap(lambda x: st.one_of(st.just(x), pow_of(x)))

    def extend(children):
        bin_ = lambda cls: st.builds(cls, children, children)  # noqa: E731
        return st.one_of(
            bin_(D.Add),
            bin_(D.Sub),
            bin_(D.Mul),
            bin_(D.Comm),
            bin_(D.Anti),
            st.builds(D.Neg, children),
            st.builds(lambda ops, core: D.Nest(tuple(ops), core), st.lists(children, min_size=1, max_size=3), children),
            st.builds(D.Pow, children, st.integers(0, 2)),
        )

    return st.recursive(base, extend, max_leaves=max_leaves)


def frac(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
