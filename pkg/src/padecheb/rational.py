"""Rational approximants in monomial or Chebyshev form, with parity shapes.

A :class:`RationalApproximant` is stored in its *reduced* variable. With
t = (2x - A - B)/(B - A) the affine image of x in [-1, 1]:

* parity ``general``: P(t)/Q(t);
* parity ``even``:    P(v)/Q(v) with v = t^2 (monomial) or v = 2t^2 - 1
  (Chebyshev, so that T_i(v) = T_2i(t));
* parity ``odd``:     t * (the even form).

For the Chebyshev basis with ``halved_first`` set, both numerator and
denominator take their zeroth coefficient at half weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

import mpmath

from padecheb import arith, kernels
from padecheb.core_poly import (
    ChebyshevSeries,
    MonomialPoly,
    cheb_to_monomial,
    substitute_affine,
)


class Basis(str, Enum):
    MONOMIAL = "monomial"
    CHEBYSHEV = "chebyshev"


class Parity(str, Enum):
    GENERAL = "general"
    EVEN = "even"
    ODD = "odd"


_BASIS_CODE = {Basis.MONOMIAL: 0, Basis.CHEBYSHEV: 1}
_PARITY_CODE = {Parity.GENERAL: 0, Parity.EVEN: 1, Parity.ODD: 2}


class DenominatorZeroError(ZeroDivisionError):
    def __init__(self, x):
        super().__init__(f"denominator vanishes at x = {x}")
        self.x = x


class NormTag(str, Enum):
    B0 = "B0"  # b_0 = 1
    BM = "BM"  # b_m = 1
    AN = "AN"  # a_n = 1


@dataclass(frozen=True)
class NormalizationCondition:
    """sum(lam_i a_i) + sum(mu_j b_j) = 1."""

    lam: tuple
    mu: tuple
    tag: NormTag | None = None

    def __post_init__(self):
        if not any(self.lam) and not any(self.mu):
            raise ValueError("normalization needs a nonzero functional")

    @classmethod
    def from_tag(cls, tag: str | NormTag, m: int, n: int) -> "NormalizationCondition":
        tag = NormTag(tag)
        lam = [0] * (n + 1)
        mu = [0] * (m + 1)
        if tag is NormTag.B0:
            mu[0] = 1
        elif tag is NormTag.BM:
            mu[m] = 1
        else:
            lam[n] = 1
        return cls(tuple(lam), tuple(mu), tag)

    def row(self) -> tuple:
        """Coefficients in unknown order a_0..a_n, b_0..b_m."""
        return self.lam + self.mu

    def describe(self) -> str:
        return self.tag.value if self.tag else f"lam={list(self.lam)} mu={list(self.mu)}"


@dataclass(frozen=True)
class RationalApproximant:
    numer: tuple
    denom: tuple
    basis: Basis = Basis.MONOMIAL
    parity: Parity = Parity.GENERAL
    segment: tuple = (-1, 1)
    halved_first: bool = True
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "numer", tuple(self.numer))
        object.__setattr__(self, "denom", tuple(self.denom))
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "parity", Parity(self.parity))
        object.__setattr__(self, "segment", tuple(self.segment))
        if not self.numer or not self.denom:
            raise ValueError("numerator and denominator need at least one coefficient")
        if not any(self.denom):
            raise ValueError("denominator is the zero vector")
        a, b = self.segment
        if not a < b:
            raise ValueError(f"bad segment {self.segment}")

    @property
    def n(self) -> int:
        return len(self.numer) - 1

    @property
    def m(self) -> int:
        return len(self.denom) - 1

    @property
    def ctx(self):
        for v in self.numer + self.denom:
            c = getattr(v, "context", None)
            if c is not None:
                return c
        return mpmath.fp

    def converted(self, ctx) -> "RationalApproximant":
        return replace(self, numer=arith.convert_all(ctx, self.numer),
                       denom=arith.convert_all(ctx, self.denom))

    def scaled(self, alpha) -> "RationalApproximant":
        return replace(self, numer=tuple(alpha * v for v in self.numer),
                       denom=tuple(alpha * v for v in self.denom))

    def codes(self) -> tuple:
        return _BASIS_CODE[self.basis], self.halved_first, _PARITY_CODE[self.parity]

    def __call__(self, x):
        return evaluate(self, x)

    # reduced-variable views ------------------------------------------------

    def reduced_parts(self, u):
        """(P, Q) evaluated at the reduced variable u in [-1, 1].

        u is the variable in which construction works: t for general parity,
        2t^2 - 1 for even/odd shapes (so T_k(u) = T_2k(t)).
        """
        if self.parity is Parity.GENERAL:
            v = u
        elif self.basis is Basis.CHEBYSHEV:
            v = u
        else:
            v = (u + 1) / 2
        return _poly_value(self, self.numer, v), _poly_value(self, self.denom, v)

    def numerator_poly(self):
        if self.basis is Basis.CHEBYSHEV:
            return ChebyshevSeries(self.numer, self.halved_first)
        return MonomialPoly(self.numer)

    def denominator_poly(self):
        if self.basis is Basis.CHEBYSHEV:
            return ChebyshevSeries(self.denom, self.halved_first)
        return MonomialPoly(self.denom)

    # serialization ---------------------------------------------------------

    def to_dict(self, ctx=None) -> dict:
        ctx = ctx or self.ctx
        return {
            "numer": [arith.to_decimal(ctx, v) for v in self.numer],
            "denom": [arith.to_decimal(ctx, v) for v in self.denom],
            "basis": self.basis.value,
            "parity": self.parity.value,
            "segment": [arith.to_decimal(ctx, v) for v in self.segment],
            "halved_first": self.halved_first,
        }

    @classmethod
    def from_dict(cls, data: dict, ctx=None) -> "RationalApproximant":
        ctx = ctx or arith.extended()
        return cls(
            numer=tuple(arith.convert(ctx, str(v)) for v in data["numer"]),
            denom=tuple(arith.convert(ctx, str(v)) for v in data["denom"]),
            basis=Basis(data.get("basis", "monomial")),
            parity=Parity(data.get("parity", "general")),
            segment=tuple(arith.convert(ctx, str(v)) for v in data.get("segment", (-1, 1))),
            halved_first=bool(data.get("halved_first", True)),
        )


def _poly_value(R: RationalApproximant, coeffs, v):
    if R.basis is Basis.CHEBYSHEV:
        return kernels._pykernels.clenshaw(coeffs, v, R.halved_first)
    return kernels._pykernels.horner(coeffs, v)


def evaluate(R: RationalApproximant, x):
    """P(x)/Q(x) by Horner (monomial) or Clenshaw (Chebyshev), honoring parity."""
    a, b = R.segment
    basis, halved, parity = R.codes()
    value, q = kernels._pykernels.rational_value(R.numer, R.denom, x, basis, halved, parity, a, b)
    if value is None:
        raise DenominatorZeroError(x)
    return value


def evaluate_grid(R: RationalApproximant, xs: Sequence, ctx=None) -> list:
    """Values on a grid; double-precision grids go through the compiled kernel."""
    ctx = ctx or R.ctx
    if arith.is_double(ctx):
        R = R.converted(ctx)
        xs = [float(x) for x in xs]
    a, b = R.segment
    basis, halved, parity = R.codes()
    try:
        return kernels.rational_on_grid(ctx, list(R.numer), list(R.denom), list(xs),
                                        basis, halved, parity, a, b)
    except ZeroDivisionError as exc:
        raise DenominatorZeroError(exc.args[0] if exc.args else None) from None


def error_identity_lhs_rhs(P, Q, dP, dQ, x):
    """Both sides of P~/Q~ - P/Q = (dQ/Q~)(dP/dQ - P/Q) at x, with Q~ = Q + dQ."""
    p, q, dp, dq = P(x), Q(x), dP(x), dQ(x)
    qt = q + dq
    if q == 0 or qt == 0:
        raise DenominatorZeroError(x)
    lhs = (p + dp) / qt - p / q
    if dq == 0:
        if dp == 0:
            return lhs, lhs * 0
        raise DenominatorZeroError(x)
    rhs = (dq / qt) * (dp / dq - p / q)
    return lhs, rhs


def error_identity_split(P, Q, dP, dQ, x):
    """The same difference written as dP/Q~ - (dQ/Q~)(P/Q); no division by dQ."""
    p, q, dp, dq = P(x), Q(x), dP(x), dQ(x)
    qt = q + dq
    if q == 0 or qt == 0:
        raise DenominatorZeroError(x)
    return dp / qt - (dq / qt) * (p / q)


def _to_exact(values):
    return [arith.to_fraction(v) for v in values]


def _plain_coeffs(R: RationalApproximant, coeffs) -> list[Fraction]:
    """Exact monomial coefficients in t of one numerator/denominator part."""
    exact = _to_exact(coeffs)
    if R.basis is Basis.CHEBYSHEV:
        mono = cheb_to_monomial(ChebyshevSeries(exact, R.halved_first)).coeffs
        if R.parity is not Parity.GENERAL:
            # T_i(v) with v = 2y - 1, y = t^2
            mono = substitute_affine(MonomialPoly(mono), 2, -1).coeffs
    else:
        mono = exact
    mono = [arith.to_fraction(c) for c in mono]
    if R.parity is Parity.GENERAL:
        return mono
    spread = [Fraction(0)] * (2 * len(mono) - 1)
    for i, c in enumerate(mono):
        spread[2 * i] = c
    return spread


def to_plain_form(R: RationalApproximant, ctx=None) -> RationalApproximant:
    """Rewrite any shape as monomial numerator/denominator in t, parity general.

    The change is exact up to one final rounding into ``ctx``.
    """
    ctx = ctx or R.ctx
    num = _plain_coeffs(R, R.numer)
    den = _plain_coeffs(R, R.denom)
    if R.parity is Parity.ODD:
        num = [Fraction(0)] + num
    return RationalApproximant(
        numer=tuple(arith.convert(ctx, c) for c in num),
        denom=tuple(arith.convert(ctx, c) for c in den),
        basis=Basis.MONOMIAL,
        parity=Parity.GENERAL,
        segment=R.segment,
    )
