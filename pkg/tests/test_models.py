import pytest

from weylcheck.models import UnknownModel, UnknownOperatorName, build_model, lookup
from weylcheck.opdsl import parse_operator
from weylcheck.scalar import A3, B1, S
from weylcheck.weylalg import DZ, DZB, Z, ZB, commutator


def test_l1_forms():
    assert build_model("E8")["L1"] == -(DZ**2) + B1 / 4 * ZB**2
    assert build_model("E10")["L1"] == -(DZ**2) + B1 / 4 * ZB**2 + A3 / 12


def test_m():
    assert build_model("E8")["M"] == -3 * A3 / S * ZB**-4
    assert "M" not in build_model("E10")


def test_lookup():
    e8, e10 = build_model("E8"), build_model("E10")
    assert lookup(e8, "H") == parse_operator("-4*dz*dzb + s^2*z*zb - a3*zb^-2")
    assert lookup(e10, "Bplus") == DZB - S / 2 * Z + S / 4 * ZB**2 + A3 / (2 * S)
    assert lookup(e10, "B+") == lookup(e10, "Bplus")
    with pytest.raises(UnknownOperatorName):
        lookup(e8, "X")
    with pytest.raises(UnknownModel):
        build_model("E9")


def test_hamiltonians():
    assert build_model("E10")["H"] == parse_operator("-4*dz*dzb + s^2*(z*zb - 1/2*zb^3) - a3*zb")


@pytest.mark.parametrize("tag", ["E8", "E10"])
def test_constructed_identities(tag):
    c = build_model(tag)
    assert c["R"] == commutator(c["L1"], c["L2"])
    assert c["Q"] == c["A+"] * c["B-"]
    assert c["S"] == c["B+"] * c["A-"]
    assert c["T"] == c["A+"] * c["A-"]
    assert c["U"] == c["A+"] - c["A-"]
    assert c["W"] == c["A+"] + c["A-"]
    assert c["H"] == -2 * c["Q"] - 2 * c["S"] + 2 * S
    shift = A3 / 12 if tag == "E10" else 0
    assert c["L1"] == -c["T"] + shift
    assert commutator(c["H"], c["L1"]).is_zero() and commutator(c["H"], c["L2"]).is_zero()


def test_e10_ladder_forms():
    c = build_model("E10")
    ap, am, bp, bm = c["A+"], c["A-"], c["B+"], c["B-"]
    assert c["R"] == -2 * c["W"] * c["T"] - S * (c["Q"] - c["S"])
    assert c["R"] == -2 * ap * (ap + am) * am - S * (ap * bm - bp * am)


def test_catalog_immutable():
    c = build_model("E8")
    with pytest.raises(TypeError):
        c.operators["H"] = DZ
    assert build_model("e8") is c


def test_gauge_cross_derivative():
    # d/dzb E_z == d/dz E_zb, checked as [dzb, E_z] == [dz, E_zb]
    for tag in ("E8", "E10"):
        g = build_model(tag).gauge
        assert commutator(DZB, g.e_z) == commutator(DZ, g.e_zb)
