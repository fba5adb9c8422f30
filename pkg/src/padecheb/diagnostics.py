"""Error measurement, error approximants and autocorrection experiments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from padecheb import arith, cross, nonlinear
from padecheb.core_poly import ChebyshevSeries, fourier_chebyshev_coeffs, gauss_chebyshev
from padecheb.functions import CatalogEntry
from padecheb.methods import ApproxSpec, Construction, Method
from padecheb.rational import (
    Parity,
    RationalApproximant,
    evaluate_grid,
    to_plain_form,
)
from padecheb.series import partial_sum_entry, reduced_target

DEFAULT_GRID = 2000
ZONE_WIDTH = 1e-3
REL_THRESHOLD = 1e-3


@dataclass(frozen=True)
class AccuracyReport:
    abs_error: object
    rel_error: object
    grid_points: int
    excluded_zones: tuple = ()
    argmax_abs: object = None
    skipped_points: int = 0

    def as_floats(self) -> tuple[float, float]:
        return float(self.abs_error), float(self.rel_error)


def uniform_grid(segment, count: int, ctx) -> list:
    a, b = (arith.convert(ctx, v) for v in segment)
    if count < 2:
        raise ValueError("grid needs at least two points")
    return [a + (b - a) * i / (count - 1) for i in range(count)]


def _outside(x, zones) -> bool:
    return all(not (lo < x < hi) for lo, hi in zones)


def measure(f: CatalogEntry, R: RationalApproximant, ctx=None, grid: int = DEFAULT_GRID,
            excluded_zones=(), rel_threshold: float = REL_THRESHOLD) -> AccuracyReport:
    """Max absolute and relative error of R against f on a uniform grid.

    Evaluation runs in ``ctx`` (default: the approximant's own arithmetic).
    Relative errors skip points where |f| < rel_threshold * max|f|.
    """
    ctx = ctx or R.ctx
    R = R.converted(ctx)
    zones = tuple((arith.convert(ctx, lo), arith.convert(ctx, hi)) for lo, hi in excluded_zones)
    xs = [x for x in uniform_grid(R.segment, grid, ctx) if _outside(x, zones)]
    fs = [f(ctx, x) for x in xs]
    rs = evaluate_grid(R, xs, ctx)
    fmax = max(abs(v) for v in fs)
    floor = rel_threshold * fmax
    zero = ctx.mpf(0)
    abs_err, rel_err, arg, skipped = zero, zero, None, 0
    for x, fx, rx in zip(xs, fs, rs):
        e = abs(fx - rx)
        if e > abs_err:
            abs_err, arg = e, x
        if abs(fx) < floor:
            skipped += 1
            continue
        r = e / abs(fx)
        if r > rel_err:
            rel_err = r
    return AccuracyReport(abs_err, rel_err, len(xs), zones, arg, skipped)


# error approximants ----------------------------------------------------------


class UndefinedErrorApproximant(ValueError):
    pass


@dataclass(frozen=True)
class ErrorApproximant:
    dP: tuple
    dQ: tuple
    approximant: RationalApproximant
    quality: AccuracyReport | None
    roots: tuple = ()

    def normalization_defect(self, lam, mu):
        """sum lam_i dP_i + sum mu_j dQ_j, which two equally normalised
        solutions drive to zero."""
        total = 0 * self.dP[0]
        for w, v in zip(lam, self.dP):
            total = total + w * v
        for w, v in zip(mu, self.dQ):
            total = total + w * v
        return total


def _check_compatible(first: RationalApproximant, second: RationalApproximant):
    same = (first.basis == second.basis and first.parity == second.parity
            and first.m == second.m and first.n == second.n
            and first.halved_first == second.halved_first
            and all(float(p) == float(q) for p, q in zip(first.segment, second.segment)))
    if not same:
        raise ValueError("error approximants need two approximants of identical shape")


def _richer_ctx(*ctxs):
    return max(ctxs, key=arith.bits)


def denominator_roots(R: RationalApproximant, segment=None) -> tuple:
    """Real roots (in x) of R's denominator on its segment, as floats."""
    shape = RationalApproximant(R.denom, (R.denom[0] * 0 + 1,), R.basis,
                                Parity.EVEN if R.parity is Parity.ODD else R.parity,
                                R.segment, R.halved_first)
    coeffs = [float(v) for v in to_plain_form(shape).numer]
    while coeffs and coeffs[-1] == 0.0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return ()
    roots = np.roots(coeffs[::-1])
    a, b = (float(v) for v in R.segment)
    out = []
    for r in roots:
        if abs(r.imag) > ZONE_WIDTH:
            continue
        t = r.real
        if -1 - ZONE_WIDTH <= t <= 1 + ZONE_WIDTH:
            out.append(float(((b - a) * t + a + b) / 2))
    return tuple(sorted(out))


def error_approximant_from_differences(dP, dQ, like: RationalApproximant, f: CatalogEntry | None,
                                       ctx=None, zone_width: float = ZONE_WIDTH,
                                       grid: int = DEFAULT_GRID) -> ErrorApproximant:
    ctx = ctx or like.ctx
    dP = arith.convert_all(ctx, dP)
    dQ = arith.convert_all(ctx, dQ)
    if not any(dQ):
        raise UndefinedErrorApproximant("denominator difference vanishes identically")
    R = RationalApproximant(dP, dQ, like.basis, like.parity,
                            arith.convert_all(ctx, like.segment), like.halved_first)
    roots = denominator_roots(R)
    a, b = (float(v) for v in like.segment)
    half = zone_width * (b - a)
    zones = tuple((r - half, r + half) for r in roots)
    quality = measure(f, R, ctx, grid, zones) if f is not None else None
    return ErrorApproximant(dP, dQ, R, quality, roots)


def error_approximant(first: RationalApproximant, second: RationalApproximant,
                      f: CatalogEntry | None, ctx=None, drop_numer=(), zone_width: float = ZONE_WIDTH,
                      grid: int = DEFAULT_GRID) -> ErrorApproximant:
    """dP/dQ from the coefficient differences second - first.

    Indices in ``drop_numer`` are zeroed in dP (to discard a difference that
    is pure noise, as for a_0 under b_0 = 1).
    """
    _check_compatible(first, second)
    ctx = ctx or _richer_ctx(first.ctx, second.ctx)
    p1, p2 = first.converted(ctx), second.converted(ctx)
    dP = [q - p for p, q in zip(p1.numer, p2.numer)]
    dQ = [q - p for p, q in zip(p1.denom, p2.denom)]
    for i in drop_numer:
        dP[i] = dP[i] * 0
    return error_approximant_from_differences(dP, dQ, first, f, ctx, zone_width, grid)


@dataclass(frozen=True)
class TheoremCheck:
    residuals: tuple  # Chebyshev coefficients 0..n of g*dQ - dP
    tail: tuple  # the next m+1 coefficients
    scale: object  # max over nodes of |g*dQ| and |dP|

    @property
    def relative_residual(self):
        return max(abs(r) for r in self.residuals) / self.scale

    @property
    def suppression(self):
        """max |residual| / max |tail|."""
        top = max(abs(t) for t in self.tail)
        return max(abs(r) for r in self.residuals) / top if top else math.inf


def verify_theorem(ea: ErrorApproximant, target, n: int | None = None, ctx=None,
                   s: int | None = None) -> TheoremCheck:
    """Leading Chebyshev coefficients (indices 0..n) of g*dQ - dP.

    g is the target in the construction variable: a catalog entry is
    reduced with the approximant's shape, while a ChebyshevSeries is taken
    as already reduced. The quadrature rule is chosen here, independently
    of the one used during construction.
    """
    R = ea.approximant
    ctx = ctx or R.ctx
    R = R.converted(ctx)
    n = R.n if n is None else n
    count = n + R.m + 2
    if isinstance(target, ChebyshevSeries):
        g = ChebyshevSeries(arith.convert_all(ctx, target.coeffs), target.halved_first)
        # exact for the polynomial product
        s = s or len(g.coeffs) + R.m + count + 8
    else:
        g = reduced_target(target, R.parity, R.segment, ctx)
        s = s or max(256, 16 * count + 128)
    rule = gauss_chebyshev(s, ctx)
    table = {}
    scale = ctx.mpf(0)
    for u in rule.nodes:
        p, q = R.reduced_parts(u)
        gq = g(u) * q
        scale = max(scale, abs(gq), abs(p))
        table[u] = gq - p
    coeffs = fourier_chebyshev_coeffs(table.__getitem__, count - 1, rule).coeffs
    return TheoremCheck(tuple(coeffs[: n + 1]), tuple(coeffs[n + 1:]), scale)


# perturbation experiments ------------------------------------------------------


def coefficient_deltas(ref: RationalApproximant, other: RationalApproximant, ctx):
    """(max relative, max absolute) coefficient difference; zero reference entries
    count only towards the absolute figure."""
    a = ref.converted(ctx)
    b = other.converted(ctx)
    rel, ab = ctx.mpf(0), ctx.mpf(0)
    for p, q in zip(a.numer + a.denom, b.numer + b.denom):
        d = abs(q - p)
        ab = max(ab, d)
        if p != 0:
            rel = max(rel, d / abs(p))
    return rel, ab


@dataclass(frozen=True)
class PerturbationResult:
    first: Construction
    second: Construction
    report_first: AccuracyReport
    report_second: AccuracyReport
    max_rel_coeff_delta: object
    max_abs_coeff_delta: object
    value_change: object  # max |R2 - R1| on the grid
    value_scale: object  # max |R1| on the grid

    @property
    def rel_change_abs_error(self):
        a, b = self.report_first.abs_error, self.report_second.abs_error
        return abs(b - a) / a if a else abs(b - a)

    @property
    def autocorrection_ratio(self) -> float:
        """Relative coefficient perturbation over the relative change of the absolute error."""
        change = self.rel_change_abs_error
        return math.inf if change == 0 else float(self.max_rel_coeff_delta / change)

    @property
    def value_ratio(self) -> float:
        """Relative coefficient perturbation over the relative change of the values of R."""
        change = self.value_change / self.value_scale
        return math.inf if change == 0 else float(self.max_rel_coeff_delta / change)

    @property
    def abs_error_factor(self) -> float:
        a, b = self.report_first.abs_error, self.report_second.abs_error
        lo, hi = min(a, b), max(a, b)
        return float(hi / lo) if lo else math.inf


def perturbation_experiment(spec: ApproxSpec, ctx_a, ctx_b, ref_ctx=None,
                            grid: int = DEFAULT_GRID) -> PerturbationResult:
    """Build ``spec`` in two arithmetics and compare coefficients and errors.

    Both approximants are measured in ``ref_ctx`` (default: the richer of
    the two), so only the construction differs. The construction in the
    richer arithmetic is the reference for relative coefficient deltas.
    """
    ref_ctx = ref_ctx or _richer_ctx(ctx_a, ctx_b)
    first = spec.build(ctx_a)
    second = spec.build(ctx_b)
    f = spec.function
    rep1 = measure(f, first.approximant, ref_ctx, grid)
    rep2 = measure(f, second.approximant, ref_ctx, grid)
    swap = arith.bits(ctx_a) < arith.bits(ctx_b)
    ref, other = (second, first) if swap else (first, second)
    rel, ab = coefficient_deltas(ref.approximant, other.approximant, ref_ctx)
    xs = uniform_grid(spec.segment, grid, ref_ctx)
    v1 = evaluate_grid(first.approximant.converted(ref_ctx), xs, ref_ctx)
    v2 = evaluate_grid(second.approximant.converted(ref_ctx), xs, ref_ctx)
    change = max(abs(p - q) for p, q in zip(v1, v2))
    scale = max(abs(v) for v in v1)
    return PerturbationResult(first, second, rep1, rep2, rel, ab, change, scale)


def normalization_defect(first: RationalApproximant, second: RationalApproximant, lam, mu, ctx=None):
    """(sum lam*da + sum mu*db, tolerance) for two solutions of one normalization.

    Each solution satisfies its normalization row up to its own rounding,
    so the tolerance scales with the coefficient vectors themselves:
    10 * eps_low * ||(lam, mu)||_1 * max(||first||_1, ||second||_1), where
    eps_low is the unit roundoff of the poorer of the two arithmetics.
    """
    ctx = ctx or _richer_ctx(first.ctx, second.ctx)
    low = min(first.ctx, second.ctx, key=arith.bits)
    a, b = first.converted(ctx), second.converted(ctx)
    lam = arith.convert_all(ctx, lam)
    mu = arith.convert_all(ctx, mu)
    total = ctx.mpf(0)
    for w, p, q in zip(lam, a.numer, b.numer):
        total += w * (q - p)
    for w, p, q in zip(mu, a.denom, b.denom):
        total += w * (q - p)
    weight = sum(abs(v) for v in lam + mu)
    size = max(sum(abs(v) for v in a.numer + a.denom), sum(abs(v) for v in b.numer + b.denom))
    tol = 10 * arith.convert(ctx, arith.eps(low)) * weight * size
    return total, tol


# uncertainty relation -----------------------------------------------------------


@dataclass(frozen=True)
class UncertaintyReport:
    xs: tuple
    lhs: tuple  # R~(x) - R(x)
    deltaQ_rel: tuple  # dQ / (Q + dQ)
    err_approx_err: tuple  # dP/dQ - f
    product: tuple  # deltaQ_rel * err_approx_err
    epsilon: object  # absolute error of the source approximant

    def agreement(self, tolerance: float = 0.1) -> float:
        """Fraction of points where |lhs - product| <= tolerance * max(|lhs|, |product|)."""
        if not self.xs:
            return math.nan
        ok = sum(1 for l, p in zip(self.lhs, self.product)
                 if abs(l - p) <= tolerance * max(abs(l), abs(p)))
        return ok / len(self.xs)


def uncertainty_relation(first: RationalApproximant, second: RationalApproximant, f: CatalogEntry,
                         points: int = 101, ctx=None, zone_width: float = ZONE_WIDTH) -> UncertaintyReport:
    """Sample both sides of R~ - R = dQ/Q~ * (dP/dQ - f) away from zeros of dQ."""
    ctx = ctx or _richer_ctx(first.ctx, second.ctx)
    ea = error_approximant(first, second, None, ctx, zone_width=zone_width)
    a, b = (float(v) for v in first.segment)
    half = zone_width * (b - a)
    zones = [(r - half, r + half) for r in ea.roots]
    R1, R2 = first.converted(ctx), second.converted(ctx)
    xs, lhs, dq_rel, ea_err, prod = [], [], [], [], []
    for x in uniform_grid(first.segment, points, ctx):
        if not _outside(float(x), zones):
            continue
        p, q = _parts_at(R1, x)
        pt, qt = _parts_at(R2, x)
        dq = qt - q
        if dq == 0:
            continue
        e = (pt - p) / dq - f(ctx, x)
        rel = dq / qt
        xs.append(x)
        lhs.append(pt / qt - p / q)
        dq_rel.append(rel)
        ea_err.append(e)
        prod.append(rel * e)
    eps_method = measure(f, R1, ctx).abs_error
    return UncertaintyReport(tuple(xs), tuple(lhs), tuple(dq_rel), tuple(ea_err), tuple(prod), eps_method)


def _parts_at(R: RationalApproximant, x):
    """(P, Q) in the x variable, with the odd factor x folded into P."""
    a, b = R.segment
    t = (2 * x - a - b) / (b - a)
    if R.parity is Parity.GENERAL:
        return R.reduced_parts(t)
    p, q = R.reduced_parts(2 * t * t - 1)
    return (t * p if R.parity is Parity.ODD else p), q


# deformation study ----------------------------------------------------------------


@dataclass(frozen=True)
class DeformationStudy:
    rational: Construction
    rational_error: AccuracyReport
    partial_sum: ChebyshevSeries  # in the construction variable
    partial_sum_degree: int  # degree in x
    partial_sum_error: object
    from_partial_sum: Construction
    identity_delta: object  # max relative coefficient difference, coefficient route
    quadrature_delta: object | None = None  # same comparison through node values
    quadrature_condition: object | None = None
    eps: object = None

    @property
    def error_gap(self) -> float:
        r = self.rational_error.abs_error
        return math.inf if r == 0 else float(self.partial_sum_error / r)


def max_difference(f: CatalogEntry, g: CatalogEntry, segment, ctx, grid: int = DEFAULT_GRID):
    return max(abs(f(ctx, x) - g(ctx, x)) for x in uniform_grid(segment, grid, ctx))


def _plain_degree(k: int, parity: Parity) -> int:
    if parity is Parity.GENERAL:
        return k
    return 2 * k + (1 if parity is Parity.ODD else 0)


def deformation_study(f: CatalogEntry, m: int, n: int, parity=Parity.GENERAL, ctx=None,
                      method: Method = Method.CROSS, grid: int = DEFAULT_GRID, extra_terms: int = 12,
                      compare_quadrature: bool = True) -> DeformationStudy:
    """Rational approximant against the polynomial partial sum it depends on.

    The cross and linear constructions only read Chebyshev coefficients
    0..n+2m (0..n+m for the nonlinear one). The approximant is therefore
    rebuilt from the partial sum's own coefficients and compared with the
    one built from a longer series of f: the two must agree coefficientwise.

    With ``compare_quadrature`` the linear construction is also run on the
    partial sum through node values. That route re-rounds every matrix
    entry, so its difference is bounded by the condition number times eps,
    not by eps; both numbers are reported.
    """
    ctx = ctx or arith.extended()
    parity = Parity(parity)
    method = Method(method)
    if method is Method.LINEAR:
        raise ValueError("the coefficient route uses the cross or nonlinear construction")
    window = n + m if method is Method.NONLINEAR else n + 2 * m
    spec = ApproxSpec(f, m, n, method, parity)
    full = spec.series(ctx, count=window + 1 + extra_terms)
    truncated = full.truncate(window)
    from_f = _build_from_series(spec, full, ctx)
    from_hat = _build_from_series(spec, truncated, ctx)
    hat_entry = partial_sum_entry(f, truncated, parity)
    rat_err = measure(f, from_f.approximant, ctx, grid)
    ps_err = max_difference(f, hat_entry, spec.segment, ctx, grid)
    delta, _ = coefficient_deltas(from_f.approximant, from_hat.approximant, ctx)
    q_delta = q_cond = None
    if compare_quadrature:
        lin = ApproxSpec(f, m, n, Method.LINEAR, parity)
        a = lin.build(ctx)
        b = lin.with_(function=hat_entry).build(ctx)
        q_delta, _ = coefficient_deltas(a.approximant, b.approximant, ctx)
        q_cond = a.condition_value()
    return DeformationStudy(from_f, rat_err, truncated, _plain_degree(window, parity), ps_err,
                            from_hat, delta, q_delta, q_cond, arith.eps(ctx))


def _build_from_series(spec: ApproxSpec, series: ChebyshevSeries, ctx) -> Construction:
    if spec.method is Method.NONLINEAR:
        approx, gamma = nonlinear.construct(series, spec.m, spec.n, ctx, spec.parity, spec.segment)
        return Construction(spec, approx, gamma.condition, None, series)
    prob = cross.CrossPCProblem(series, spec.m, spec.n, spec.parity, spec.segment)
    approx, report = cross.construct(prob, ctx)
    return Construction(spec, approx, report.condition, report.residual_norm, series)
