"""Nonlinear Pade-Chebyshev approximants via the auxiliary gamma system.

gamma_0 = 1 and sum_j gamma_j c_{|k-j|} = 0 for k = n+1..n+m; the
denominator is b_j = mu * sum_i gamma_i gamma_{i+j}, with mu fixed by
b_0 = 2, and the numerator follows from the cross-multiplied formula.
Only c_0..c_{n+m} are read.
"""

from __future__ import annotations

from dataclasses import dataclass

from padecheb import arith
from padecheb.core_poly import ChebyshevSeries
from padecheb.cross import _ctx_of, numerator_coeffs
from padecheb.linear import ConstructionError
from padecheb.linsolve import (
    ConditionNumber,
    DenseMatrix,
    SingularMatrixError,
    condition_number,
    matrix_norm,
    solve,
)
from padecheb.rational import Basis, Parity, RationalApproximant


class NonexistenceError(ConstructionError):
    """The gamma system is singular: no nonlinear approximant of this type."""


@dataclass(frozen=True)
class GammaSolution:
    gamma: tuple
    mu: object
    condition: ConditionNumber | None = None

    def __post_init__(self):
        if self.gamma[0] != 1:
            raise ValueError("gamma_0 must be 1")


def gamma_system(c: ChebyshevSeries, m: int, n: int, ctx=None) -> GammaSolution:
    ctx = ctx or _ctx_of(c.coeffs)
    c = c.with_halved_first()
    if len(c.coeffs) < n + m + 1:
        raise ValueError(f"need {n + m + 1} Chebyshev coefficients, got {len(c.coeffs)}")
    cc = arith.convert_all(ctx, c.coeffs)
    one = ctx.mpf(1)
    if m == 0:
        return GammaSolution((one,), ctx.mpf(2), None)
    rows = [[cc[abs(k - j)] for j in range(1, m + 1)] for k in range(n + 1, n + m + 1)]
    rhs = [-cc[k] for k in range(n + 1, n + m + 1)]
    matrix = DenseMatrix.from_rows(rows)
    cond = condition_number(matrix, ctx)
    # a matrix that is rounding noise next to the series is singular whatever its condition
    scale = max(abs(v) for v in cc[: n + m + 1])
    negligible = matrix_norm(matrix) <= m * ctx.eps * scale
    if negligible or not cond.available or cond.value * ctx.eps > 1:
        raise NonexistenceError(
            f"gamma system for m={m}, n={n} is numerically singular; "
            "the nonlinear approximant does not exist here"
        )
    try:
        report = solve(matrix, rhs, ctx)
    except SingularMatrixError as exc:
        raise NonexistenceError(f"gamma system for m={m}, n={n} is singular") from exc
    gamma = (one,) + tuple(report.solution)
    total = gamma[0] * gamma[0]
    for g in gamma[1:]:
        total = total + g * g
    return GammaSolution(gamma, 2 / total, cond)


def denominator_from_gamma(g: GammaSolution, m: int) -> tuple:
    gamma = g.gamma
    if len(gamma) != m + 1:
        raise ValueError("gamma length does not match m")
    out = []
    for j in range(m + 1):
        acc = gamma[0] * gamma[j]
        for i in range(1, m - j + 1):
            acc = acc + gamma[i] * gamma[i + j]
        out.append(g.mu * acc)
    return tuple(out)


def construct(c: ChebyshevSeries, m: int, n: int, ctx=None, parity=Parity.GENERAL,
              segment=(-1, 1)) -> tuple[RationalApproximant, GammaSolution]:
    ctx = ctx or _ctx_of(c.coeffs)
    g = gamma_system(c, m, n, ctx)
    b = denominator_from_gamma(g, m)
    b = (ctx.mpf(2),) + b[1:]  # b_0 = 2 holds exactly; drop the rounding of mu * sum
    a = numerator_coeffs(b, c, n, ctx)
    approx = RationalApproximant(
        numer=a,
        denom=b,
        basis=Basis.CHEBYSHEV,
        parity=Parity(parity),
        segment=tuple(arith.convert(ctx, v) for v in segment),
        halved_first=True,
        meta={"method": "nonlinear", "precision": arith.label(ctx)},
    )
    return approx, g
