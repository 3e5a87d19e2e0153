from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import operators
from weylcheck.models import build_model
from weylcheck.scalar import A3, S, ZeroSpecialization
from weylcheck.states import (
    ModelMismatch,
    State,
    apply,
    gauge_conjugate,
    make_phi,
    psi,
    psibar,
    state_linear_combination_solve,
    zero_mode,
)

E8, E10 = build_model("E8"), build_model("E10")


def prefactor(st):
    return st.prefactor_text()


@pytest.mark.parametrize("cat", [E8, E10], ids=["E8", "E10"])
def test_zero_mode(cat):
    z0 = zero_mode(cat)
    assert apply(cat["A-"], z0).is_zero()
    assert apply(cat["B-"], z0).is_zero()
    assert apply(cat["H"], z0) == z0 * (2 * S)


def test_e8_first_states():
    assert prefactor(make_phi(E8, 0, 0)) == "1"
    assert make_phi(E8, 1, 0) == State("E8", {(0, 1): -S})
    assert make_phi(E8, 0, 1) == State("E8", {(1, 0): -S, (0, -3): A3 / S})
    assert apply(E8["A+"], zero_mode(E8)) == make_phi(E8, 1, 0)
    assert psi(E8, 3) == make_phi(E8, 3, 0) and psibar(E8, 3) == make_phi(E8, 0, 3)


def test_render():
    assert str(make_phi(E8, 1, 0)) == "((-1)*s*zb) * exp[E8]"
    assert str(State(None, {(1, 2): 3})) == "3*z*zb^2"


def test_model_mismatch():
    with pytest.raises(ModelMismatch):
        make_phi(E8, 1, 0) + make_phi(E10, 1, 0)
    with pytest.raises(ModelMismatch):
        apply(E8["H"], zero_mode(E10), E8)
    with pytest.raises(ModelMismatch):
        state_linear_combination_solve([zero_mode(E8), zero_mode(E10)])


def test_gauge_free_mode():
    f = State(None, {(2, 0): 1})
    assert apply(E8["L1"], f) == State(None, {(0, 0): -2, (2, 2): S**2 / 4})
    assert gauge_conjugate(E8["H"], None) is E8["H"]


def test_linear_solve():
    z0 = zero_mode(E8)
    assert state_linear_combination_solve([z0, z0 * 2]) == [2, -1]
    assert state_linear_combination_solve([z0, psi(E8, 1)]) is None
    with pytest.raises(ZeroSpecialization):
        state_linear_combination_solve([z0], s_val=0)


def test_h_krylov_dependence_e8():
    # iterates H^k psibar_2 become dependent at the stated degree 4
    st, its = psibar(E8, 2), []
    for _ in range(5):
        its.append(st)
        st = apply(E8["H"], st)
    c = state_linear_combination_solve(its)
    assert c is not None and c[-1] == -1
    assert state_linear_combination_solve(its[:4]) is None
    # roots 6, -2, -6, -10 (times s = 2) give monic 1*x^4 coefficients
    from weylcheck.linalg import poly_from_roots

    expected = poly_from_roots([Fraction(2 * r) for r in (6, -2, -6, -10)])
    assert [-x for x in c[:-1]] + [1] == expected


@pytest.mark.parametrize("n", range(0, 11))
def test_e8_ground_line(n):
    st = psi(E8, n)
    assert apply(E8["H"], st) == st * (2 * (n + 1) * S)
    assert apply(E8["L1"], st).is_zero()
    assert apply(E8["A-"], st).is_zero()
    lower = psi(E8, n - 1) * (-n * S) if n else State("E8")
    assert apply(E8["B-"], st) == lower


@pytest.mark.parametrize("n", range(1, 9))
def test_e10_ab_power(n):
    op = E10["A-"] * E10["B-"]
    k = n if n <= 3 else n - 1
    st = psibar(E10, n)
    for _ in range(k):
        st = apply(op, st)
    assert st.is_zero()


@settings(max_examples=30)
@given(operators(max_terms=2, max_order=1), operators(max_terms=2, max_order=1))
def test_action_is_homomorphism(x, y):
    for cat in (E8, E10):
        st = make_phi(cat, 1, 1)
        assert apply(x * y, st, cat) == apply(x, apply(y, st, cat), cat)
