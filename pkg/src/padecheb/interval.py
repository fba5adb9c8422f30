"""First-order coefficient-error model of a rational approximant.

Compares the naive absolute-value bound (what an interval-style
estimate can at best deliver) with the signed first-order sum, which is
where the cancellation between numerator and denominator errors shows.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from padecheb import arith
from padecheb.core_poly import cheb_eval
from padecheb.diagnostics import ZONE_WIDTH, denominator_roots, uniform_grid
from padecheb.rational import Basis, DenominatorZeroError, Parity, RationalApproximant, to_plain_form


def _reduced(R: RationalApproximant, x):
    """(t, v): the segment-mapped point and the variable the coefficients multiply."""
    a, b = R.segment
    t = (2 * x - a - b) / (b - a)
    if R.parity is Parity.GENERAL:
        return t, t
    u = 2 * t * t - 1
    return t, (u if R.basis is Basis.CHEBYSHEV else (u + 1) / 2)


def basis_values(R: RationalApproximant, x, count: int, numerator: bool) -> list:
    """phi_i(x) for i < count, so that P(x) = sum a_i phi_i(x) (likewise Q)."""
    t, v = _reduced(R, x)
    if R.basis is Basis.CHEBYSHEV:
        vals = [cheb_eval(k, v) for k in range(count)]
        if R.halved_first and count:
            vals[0] = vals[0] / 2
    else:
        vals, p = [], v * 0 + 1
        for _ in range(count):
            vals.append(p)
            p = p * v
    if numerator and R.parity is Parity.ODD:
        vals = [t * w for w in vals]
    return vals


def _parts(R: RationalApproximant, x):
    phi = basis_values(R, x, len(R.numer), True)
    psi = basis_values(R, x, len(R.denom), False)
    P = sum((c * w for c, w in zip(R.numer, phi)), x * 0)
    Q = sum((c * w for c, w in zip(R.denom, psi)), x * 0)
    return P, Q, phi, psi


def gradient_wrt_coeffs(R: RationalApproximant, x) -> tuple[list, list]:
    """dR/da_i = phi_i/Q and dR/db_j = -P psi_j / Q^2 at x."""
    P, Q, phi, psi = _parts(R, x)
    if Q == 0:
        raise DenominatorZeroError(x)
    return [w / Q for w in phi], [-P * w / (Q * Q) for w in psi]


def naive_bound(R: RationalApproximant, da, db, x):
    """sum |dR/da_i| |da_i| + sum |dR/db_j| |db_j|."""
    ga, gb = gradient_wrt_coeffs(R, x)
    return (sum((abs(g) * abs(d) for g, d in zip(ga, da)), x * 0)
            + sum((abs(g) * abs(d) for g, d in zip(gb, db)), x * 0))


def autocorrection_residual(R: RationalApproximant, da, db, x):
    """The signed first-order change sum dR/dy_i * dy_i."""
    ga, gb = gradient_wrt_coeffs(R, x)
    return (sum((g * d for g, d in zip(ga, da)), x * 0)
            + sum((g * d for g, d in zip(gb, db)), x * 0))


@dataclass(frozen=True)
class IntervalEstimateReport:
    x: object
    naive_bound: object
    measured_delta: object  # R~(x) - R(x), evaluated directly
    residual: object  # signed first-order sum
    pessimism_ratio: float | None  # None: no coefficient error at all ("exact")
    ratio_is_lower_bound: bool
    gradient: tuple

    @property
    def exact(self) -> bool:
        return self.pessimism_ratio is None


@dataclass(frozen=True)
class PessimismProfile:
    reports: tuple
    coefficient_error_norm: object  # ||(da, db)||_2
    second_order_constant: float  # max |measured - residual| / ||(da, db)||^2
    excluded_zones: tuple

    def ratios(self) -> list[float]:
        return [r.pessimism_ratio for r in self.reports if r.pessimism_ratio is not None]

    def summary(self) -> dict:
        rs = self.ratios()
        if not rs:
            return {"min": None, "median": None, "max": None, "points": len(self.reports),
                    "lower_bounds": 0, "exact": True}
        return {
            "min": min(rs),
            "median": statistics.median(rs),
            "max": max(rs),
            "points": len(self.reports),
            "lower_bounds": sum(r.ratio_is_lower_bound for r in self.reports),
            "exact": False,
        }


def _guarded_ratio(bound, measured, value, eps):
    if bound == 0:
        return None, False
    floor = 10 * eps * abs(value)
    if abs(measured) < floor:
        return (float(bound / floor) if floor else math.inf), True
    return float(bound / abs(measured)), False


def pessimism_profile(reference: RationalApproximant, perturbed: RationalApproximant, points: int = 100,
                      ctx=None, plain: bool = True, zone_width: float = ZONE_WIDTH) -> PessimismProfile:
    """Naive bound versus actual change on a grid, for one perturbation pair.

    With ``plain`` both approximants are first rewritten as ordinary
    polynomials in x, so coefficient errors refer to that representation.
    Points within ``zone_width * (B - A)`` of a root of either denominator
    or of the denominator difference are skipped.
    """
    ctx = ctx or max(reference.ctx, perturbed.ctx, key=arith.bits)
    R = reference.converted(ctx)
    Rt = perturbed.converted(ctx)
    if plain:
        R, Rt = to_plain_form(R, ctx), to_plain_form(Rt, ctx)
    da = [q - p for p, q in zip(R.numer, Rt.numer)]
    db = [q - p for p, q in zip(R.denom, Rt.denom)]
    a, b = (float(v) for v in R.segment)
    half = zone_width * (b - a)
    roots = set(denominator_roots(R))
    if any(db):
        diff = RationalApproximant(R.denom, db, R.basis, R.parity, R.segment, R.halved_first)
        roots |= set(denominator_roots(diff))
    zones = tuple(sorted((r - half, r + half) for r in roots))
    eps = arith.convert(ctx, arith.eps(ctx))
    norm2 = ctx.sqrt(sum((d * d for d in da + db), ctx.mpf(0)))
    reports, worst = [], 0.0
    for x in uniform_grid(R.segment, points, ctx):
        if any(lo < float(x) < hi for lo, hi in zones):
            continue
        ga, gb = gradient_wrt_coeffs(R, x)
        bound = (sum((abs(g) * abs(d) for g, d in zip(ga, da)), ctx.mpf(0))
                 + sum((abs(g) * abs(d) for g, d in zip(gb, db)), ctx.mpf(0)))
        resid = sum((g * d for g, d in zip(ga + gb, da + db)), ctx.mpf(0))
        value = R(x)
        measured = Rt(x) - value
        ratio, lower = _guarded_ratio(bound, measured, value, eps)
        if norm2:
            worst = max(worst, float(abs(measured - resid) / (norm2 * norm2)))
        reports.append(IntervalEstimateReport(x, bound, measured, resid, ratio, lower, tuple(ga + gb)))
    return PessimismProfile(tuple(reports), norm2, worst, zones)
