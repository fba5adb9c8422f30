"""Linear Pade-Chebyshev approximants from quadrature.

The unknowns a_0..a_n, b_0..b_m satisfy m+n+1 homogeneous equations

    sum_j b_j <y^j T_k, g> - sum_i a_i <y^i T_k, 1> = 0,   k = 0..m+n,

with <., .> the Chebyshev-weighted integral on [-1, 1], y the basis variable
(u itself for general parity, (1+u)/2 = t^2 for the even and odd shapes)
and g the reduced target. One normalization row closes the system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from padecheb import arith, kernels
from padecheb.core_poly import default_node_count, gauss_chebyshev
from padecheb.functions import CatalogEntry
from padecheb.linsolve import DenseMatrix, SingularMatrixError, SolveReport, solve
from padecheb.rational import Basis, NormalizationCondition, NormTag, Parity, RationalApproximant
from padecheb.series import reduced_target


class ConstructionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LinearPCProblem:
    function: CatalogEntry
    m: int
    n: int
    parity: Parity = Parity.GENERAL
    normalization: NormalizationCondition | str = NormTag.B0
    segment: tuple | None = None
    s: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("degrees must be nonnegative")
        object.__setattr__(self, "parity", Parity(self.parity))
        if not isinstance(self.normalization, NormalizationCondition):
            object.__setattr__(self, "normalization",
                               NormalizationCondition.from_tag(self.normalization, self.m, self.n))
        norm = self.normalization
        if len(norm.lam) != self.n + 1 or len(norm.mu) != self.m + 1:
            raise ValueError("normalization functional does not match the degrees")
        if self.segment is None:
            object.__setattr__(self, "segment", tuple(self.function.segment))
        if self.s is not None and self.s <= self.m + self.n:
            raise ValueError("quadrature needs more nodes than equations")

    @property
    def node_count(self) -> int:
        return self.s or default_node_count(self.m, self.n)


def homogeneous_rows(prob: LinearPCProblem, ctx) -> list[list]:
    rule = gauss_chebyshev(prob.node_count, ctx)
    g = reduced_target(prob.function, prob.parity, prob.segment, ctx)
    us = list(rule.nodes)
    gs = [g(u) for u in us]
    if prob.parity is Parity.GENERAL:
        ys = us
    else:
        ys = [(1 + u) / 2 for u in us]
    return kernels.assemble_linear(ctx, us, ys, gs, prob.m, prob.n, rule.weight)


def apply_normalization(rows: list[list], cond: NormalizationCondition, ctx) -> tuple[DenseMatrix, list]:
    """Append the normalization row; unknown order is a_0..a_n, b_0..b_m."""
    zero, one = ctx.mpf(0), ctx.mpf(1)
    norm_row = [arith.convert(ctx, v) for v in cond.row()]
    if rows and len(norm_row) != len(rows[0]):
        raise ValueError("normalization length does not match the system")
    matrix = DenseMatrix.from_rows([list(r) for r in rows] + [norm_row])
    rhs = [zero] * len(rows) + [one]
    return matrix, rhs


def build_system(prob: LinearPCProblem, ctx) -> tuple[DenseMatrix, list]:
    """Square (m+n+2) system: quadrature rows plus the normalization row."""
    return apply_normalization(homogeneous_rows(prob, ctx), prob.normalization, ctx)


def _unit_index(cond: NormalizationCondition):
    """Index of the single coefficient a normalization fixes, if that is all it does."""
    nonzero = [i for i, v in enumerate(cond.row()) if v != 0]
    return nonzero[0] if len(nonzero) == 1 else None


def _b_first(rows: list[list], na: int) -> list[list]:
    return [row[na:] + row[:na] for row in rows]


def construct(prob: LinearPCProblem, ctx, with_condition: bool = True
              ) -> tuple[RationalApproximant, SolveReport]:
    """Solve the system with the b unknowns ahead of the a unknowns.

    The column order steers the pivot sequence, so it changes the solution
    at rounding level; b first is the order in which the equations are written.
    """
    matrix, rhs = build_system(prob, ctx)
    na = prob.n + 1
    matrix = DenseMatrix.from_rows(_b_first(matrix.row_lists(), na))
    try:
        report = solve(matrix, rhs, ctx, with_condition=with_condition)
    except SingularMatrixError as exc:
        raise ConstructionError(
            f"singular system for m={prob.m}, n={prob.n} with normalization "
            f"{prob.normalization.describe()}: {exc}; try another normalization "
            "(BM when n = 0, AN when m = 0)"
        ) from exc
    y = list(report.solution[prob.m + 1:]) + list(report.solution[: prob.m + 1])
    unit = _unit_index(prob.normalization)
    if unit is not None:
        # the normalised coefficient is known exactly; its rounding would only leak
        # into coefficient differences between constructions
        y[unit] = ctx.mpf(1) / arith.convert(ctx, prob.normalization.row()[unit])
    approx = RationalApproximant(
        numer=tuple(y[: prob.n + 1]),
        denom=tuple(y[prob.n + 1:]),
        basis=Basis.MONOMIAL,
        parity=prob.parity,
        segment=tuple(arith.convert(ctx, v) for v in prob.segment),
        meta={"method": "linear", "normalization": prob.normalization.describe(),
              "s": prob.node_count, "precision": arith.label(ctx)},
    )
    if not any(approx.denom):
        raise ConstructionError("solution has a zero denominator")
    return approx, report
