"""Cross-multiplied linear Pade-Chebyshev approximants.

Given the Chebyshev coefficients c_k of the target, the denominator of
Sum' a_i T_i / Sum' b_j T_j solves

    Sum'_j b_j (c_{i+j} + c_{|i-j|}) = 0,   i = n+1..n+m,   b_0 = 1,

and the numerator is a_i = (1/2) Sum'_j b_j (c_{i+j} + c_{|i-j|}), i = 0..n.
Only c_0..c_{n+2m} are read.
"""

from __future__ import annotations

from dataclasses import dataclass

from padecheb import arith
from padecheb.core_poly import ChebyshevSeries
from padecheb.linear import ConstructionError
from padecheb.linsolve import DenseMatrix, SingularMatrixError, SolveReport, solve
from padecheb.rational import Basis, Parity, RationalApproximant


@dataclass(frozen=True)
class CrossPCProblem:
    c: ChebyshevSeries
    m: int
    n: int
    parity: Parity = Parity.GENERAL
    segment: tuple = (-1, 1)

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("degrees must be nonnegative")
        if len(self.c.coeffs) < self.n + 2 * self.m + 1:
            raise ValueError(
                f"need {self.n + 2 * self.m + 1} Chebyshev coefficients, got {len(self.c.coeffs)}"
            )
        if not self.c.halved_first:
            object.__setattr__(self, "c", self.c.with_halved_first())
        object.__setattr__(self, "parity", Parity(self.parity))


def _ctx_of(values):
    for v in values:
        ctx = getattr(v, "context", None)
        if ctx is not None:
            return ctx
    return arith.double()


def _pair_sum(c, i, j):
    return c[i + j] + c[abs(i - j)]


def denominator_system(prob: CrossPCProblem, ctx=None) -> tuple[DenseMatrix, list]:
    ctx = ctx or _ctx_of(prob.c.coeffs)
    c = arith.convert_all(ctx, prob.c.coeffs)
    m, n = prob.m, prob.n
    half, zero, one = ctx.mpf(1) / 2, ctx.mpf(0), ctx.mpf(1)
    rows = []
    for i in range(n + 1, n + m + 1):
        rows.append([_pair_sum(c, i, 0) * half] + [_pair_sum(c, i, j) for j in range(1, m + 1)])
    rows.append([one] + [zero] * m)
    return DenseMatrix.from_rows(rows), [zero] * m + [one]


def numerator_coeffs(b, c: ChebyshevSeries, n: int, ctx=None) -> tuple:
    ctx = ctx or _ctx_of(tuple(b) + c.coeffs)
    c = c.with_halved_first()
    cc = arith.convert_all(ctx, c.coeffs)
    b = arith.convert_all(ctx, b)
    m = len(b) - 1
    if len(cc) < n + m + 1:
        raise ValueError(f"need c up to index {n + m}")
    out = []
    for i in range(n + 1):
        acc = b[0] * _pair_sum(cc, i, 0) / 2
        for j in range(1, m + 1):
            acc = acc + b[j] * _pair_sum(cc, i, j)
        out.append(acc / 2)
    return tuple(out)


def construct(prob: CrossPCProblem, ctx=None, with_condition: bool = True
              ) -> tuple[RationalApproximant, SolveReport]:
    ctx = ctx or _ctx_of(prob.c.coeffs)
    matrix, rhs = denominator_system(prob, ctx)
    try:
        report = solve(matrix, rhs, ctx, with_condition=with_condition)
    except SingularMatrixError as exc:
        raise ConstructionError(f"singular denominator system for m={prob.m}, n={prob.n}") from exc
    b = report.solution
    a = numerator_coeffs(b, prob.c, prob.n, ctx)
    approx = RationalApproximant(
        numer=a,
        denom=b,
        basis=Basis.CHEBYSHEV,
        parity=prob.parity,
        segment=tuple(arith.convert(ctx, v) for v in prob.segment),
        halved_first=True,
        meta={"method": "cross", "precision": arith.label(ctx)},
    )
    return approx, report
