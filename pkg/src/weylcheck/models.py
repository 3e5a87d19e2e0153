"""Named operators of the E8 and E10 superintegrable systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .scalar import A3, B1, S, Scalar
from .weylalg import DZ, DZB, IDENTITY, Operator, Z, ZB, anticommutator, commutator

MODELS = ("E8", "E10")

# DSL spellings of the catalog names
ALIASES = {"A+": "Aplus", "A-": "Aminus", "B+": "Bplus", "B-": "Bminus"}


class UnknownModel(KeyError):
    pass


class UnknownOperatorName(KeyError):
    pass


def _mono(coeff, i=0, j=0, k=0, l=0) -> Operator:
    return Operator.monomial(i, j, k, l, coeff)


@dataclass(frozen=True)
class GaugeExponent:
    """Partial derivatives of the exponent E in the zero mode exp(E)."""

    model: str
    e_z: Operator
    e_zb: Operator


@dataclass(frozen=True)
class ModelCatalog:
    model: str
    operators: Mapping[str, Operator]
    gauge: GaugeExponent
    zero_mode_exponent: str = field(default="")

    def lookup(self, name: str) -> Operator:
        return lookup(self, name)

    def __getitem__(self, name: str) -> Operator:
        return lookup(self, name)

    def __contains__(self, name: str) -> bool:
        return ALIASES.get(name, name) in self.operators

    def names(self):
        return tuple(self.operators)


def lookup(catalog: ModelCatalog, name: str) -> Operator:
    key = ALIASES.get(name, name)
    try:
        return catalog.operators[key]
    except KeyError:
        raise UnknownOperatorName(f"{catalog.model} has no operator named {name!r}") from None


def _dynamical(ops: dict) -> None:
    ap, am, bp, bm = ops["Aplus"], ops["Aminus"], ops["Bplus"], ops["Bminus"]
    ops["Q"] = ap * bm
    ops["S"] = bp * am
    ops["T"] = ap * am
    ops["U"] = ap - am
    ops["W"] = ap + am


def _e8() -> ModelCatalog:
    half = Fraction(1, 2)
    H = _mono(-4, k=1, l=1) + _mono(B1, 1, 1) + _mono(-A3, j=-2)
    L1 = _mono(-1, k=2) + _mono(B1 / 4, j=2)
    euler = _mono(1, i=1, k=1) - _mono(1, j=1, l=1)
    L2 = euler * euler - _mono(A3, i=1, j=-1)
    f = _mono(S * half, j=1)
    g = _mono(-S * half, i=1) + _mono(A3 * S.inverse() * half, j=-3)
    ops = {
        "H": H,
        "L1": L1,
        "L2": L2,
        "R": commutator(L1, L2),
        "Aplus": DZ - f,
        "Aminus": DZ + f,
        "Bplus": DZB + g,
        "Bminus": DZB - g,
        "M": _mono(-3 * A3 * S.inverse(), j=-4),
    }
    _dynamical(ops)
    gauge = GaugeExponent("E8", e_z=-f, e_zb=_mono(-S * half, i=1) + _mono(A3 * S.inverse() * half, j=-3))
    return ModelCatalog("E8", MappingProxyType(ops), gauge, "-(1/2)*s*z*zb - (1/4)*a3*s^-1*zb^-2")


def _e10() -> ModelCatalog:
    half = Fraction(1, 2)
    H = _mono(-4, k=1, l=1) + _mono(B1, 1, 1) + _mono(-B1 * half, j=3) + _mono(-A3, j=1)
    L1 = _mono(-1, k=2) + _mono(B1 / 4, j=2) + _mono(A3 / 12)
    euler = _mono(1, i=1, k=1) - _mono(1, j=1, l=1)
    p = 2 * Z + ZB * ZB
    L2 = (
        anticommutator(euler, DZ)
        - DZB * DZB
        + (B1 / 16) * p * (2 * Z - 3 * ZB * ZB)
        - (A3 / 4) * p
    )
    shift = _mono(-S * half, i=1) + _mono(S / 4, j=2) + _mono(A3 * S.inverse() * half)
    ops = {
        "H": H,
        "L1": L1,
        "L2": L2,
        "R": commutator(L1, L2),
        "Aplus": DZ - _mono(S * half, j=1),
        "Aminus": DZ + _mono(S * half, j=1),
        "Bplus": DZB + shift,
        "Bminus": DZB - shift,
    }
    _dynamical(ops)
    gauge = GaugeExponent("E10", e_z=_mono(-S * half, j=1), e_zb=shift)
    return ModelCatalog("E10", MappingProxyType(ops), gauge, "-(1/2)*s*z*zb + (1/12)*s*zb^3 + (1/2)*a3*s^-1*zb")


def build_model(tag: str) -> ModelCatalog:
    """Return the (cached, immutable) catalog for ``"E8"`` or ``"E10"``."""
    return _build(str(tag).upper())


@lru_cache(maxsize=None)
def _build(key: str) -> ModelCatalog:
    if key == "E8":
        return _e8()
    if key == "E10":
        return _e10()
    raise UnknownModel(f"unknown model {key!r}; expected one of {MODELS}")


__all__ = [
    "MODELS",
    "ALIASES",
    "GaugeExponent",
    "ModelCatalog",
    "UnknownModel",
    "UnknownOperatorName",
    "build_model",
    "lookup",
    "IDENTITY",
]
