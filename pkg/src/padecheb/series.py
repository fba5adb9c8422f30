"""Target functions in the reduced variable and their Chebyshev series.

Construction always happens on u in [-1, 1]. For general parity u is the
affine image of x; for the even and odd shapes u = 2t^2 - 1, so that a
series in T_k(u) is a series in T_2k(t), and odd targets are divided by t
first.
"""

from __future__ import annotations

from fractions import Fraction

from padecheb import arith
from padecheb.core_poly import (
    ChebyshevSeries,
    MonomialPoly,
    fourier_chebyshev_coeffs,
    gauss_chebyshev,
    monomial_to_cheb,
    substitute_affine,
)
from padecheb.functions import CatalogEntry, from_callable, taylor_coeffs
from padecheb.rational import Parity


def _is_unit(segment) -> bool:
    return segment[0] == -1 and segment[1] == 1


def reduced_target(entry: CatalogEntry, parity: Parity, segment, ctx):
    """Callable u -> g(u): the function the construction approximates."""
    parity = Parity(parity)
    a, b = (arith.convert(ctx, v) for v in segment)
    unit = _is_unit(segment)
    small = ctx.sqrt(ctx.eps)

    def to_x(t):
        return t if unit else ((b - a) * t + a + b) / 2

    if parity is Parity.GENERAL:
        return lambda u: entry(ctx, to_x(u))

    def even(u):
        t = ctx.sqrt((1 + u) / 2)
        return entry(ctx, to_x(t))

    if parity is Parity.EVEN:
        return even

    def odd(u):
        t = ctx.sqrt((1 + u) / 2)
        if abs(t) < small and unit:
            # f(t)/t = limit + O(t^2) and t^2 < eps here
            return entry.divided_by_x(ctx, ctx.mpf(0))
        return entry(ctx, to_x(t)) / t

    return odd


def chebyshev_series(entry: CatalogEntry, count: int, parity, ctx, s: int | None = None,
                     segment=None) -> ChebyshevSeries:
    """First ``count`` Fourier-Chebyshev coefficients of the reduced target (quadrature)."""
    segment = segment or entry.segment
    s = s or max(8 * count + 64, count + 1)
    rule = gauss_chebyshev(s, ctx)
    return fourier_chebyshev_coeffs(reduced_target(entry, parity, segment, ctx), count - 1, rule)


def reduced_taylor(entry: CatalogEntry, N: int, parity, ctx) -> MonomialPoly:
    """Degree-N Taylor polynomial of f, rewritten as a polynomial in u (exact)."""
    parity = Parity(parity)
    if not _is_unit(entry.segment):
        raise ValueError("the Taylor route needs the segment [-1, 1]")
    p = taylor_coeffs(entry, N, ctx)
    exact = [arith.to_fraction(c) for c in p.coeffs]
    if parity is Parity.GENERAL:
        return MonomialPoly([arith.convert(ctx, c) for c in exact])
    start = 0 if parity is Parity.EVEN else 1
    in_y = exact[start::2] or [Fraction(0)]
    return substitute_affine(MonomialPoly(in_y), Fraction(1, 2), Fraction(1, 2), ctx)


def taylor_series(entry: CatalogEntry, N: int, parity, ctx, count: int | None = None) -> ChebyshevSeries:
    """Economized Taylor route: exact basis change of the truncated series.

    The result is padded with zeros (or truncated) to ``count`` terms.
    """
    series = monomial_to_cheb(reduced_taylor(entry, N, parity, ctx), ctx)
    if count is None:
        return series
    if count <= len(series.coeffs):
        return series.truncate(count - 1)
    return series.padded(count)


def partial_sum_entry(entry: CatalogEntry, series: ChebyshevSeries, parity) -> CatalogEntry:
    """The partial sum of the reduced series, as a function of x again."""
    parity = Parity(parity)
    coeffs = series.coeffs

    def evaluate(ctx, x):
        c = ChebyshevSeries(arith.convert_all(ctx, coeffs), series.halved_first)
        if parity is Parity.GENERAL:
            return c(x)
        u = 2 * x * x - 1
        return c(u) if parity is Parity.EVEN else x * c(u)

    limit = None
    if parity is Parity.ODD:
        limit = lambda ctx: ChebyshevSeries(arith.convert_all(ctx, coeffs),  # noqa: E731
                                            series.halved_first)(ctx.mpf(-1))
    return from_callable(f"{entry.name}_partial{len(coeffs) - 1}", evaluate, entry.segment,
                         parity, limit, f"partial Chebyshev sum of {entry.description}")
