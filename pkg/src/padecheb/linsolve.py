"""Dense linear systems: partial-pivoting elimination and condition numbers.

Norms are the one-norm pair: sum of absolute values for vectors and the
maximum absolute column sum for matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath

from padecheb import arith, kernels
from padecheb.kernels import SingularMatrixError

__all__ = [
    "ConditionNumber",
    "DenseMatrix",
    "SingularMatrixError",
    "SolveReport",
    "condition_number",
    "matrix_norm",
    "solve",
    "vector_norm",
]


@dataclass(frozen=True)
class DenseMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "DenseMatrix":
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, n: int, ctx=None) -> "DenseMatrix":
        ctx = ctx or mpmath.fp
        one, zero = ctx.mpf(1), ctx.mpf(0)
        return cls.from_rows([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def scaled(self, alpha) -> "DenseMatrix":
        return DenseMatrix(self.rows, self.cols, tuple(alpha * v for v in self.entries))

    def matvec(self, y):
        c = self.cols
        out = []
        for i in range(self.rows):
            acc = self.entries[i * c] * y[0]
            for j in range(1, c):
                acc = acc + self.entries[i * c + j] * y[j]
            out.append(acc)
        return out

    def converted(self, ctx) -> "DenseMatrix":
        return DenseMatrix(self.rows, self.cols, arith.convert_all(ctx, self.entries))


@dataclass(frozen=True)
class ConditionNumber:
    """cond(A) = ||A|| ||A^-1||; ``value`` is None when inversion broke down.

    ``reliable`` is False when the inversion solves left residuals above the
    threshold: the condition number of an ill-conditioned matrix is itself
    computed from ill-conditioned solves.
    """

    value: object
    reliable: bool
    inverse_residual: object = None

    @property
    def available(self) -> bool:
        return self.value is not None

    def __float__(self):
        return float("nan") if self.value is None else float(self.value)


@dataclass(frozen=True)
class SolveReport:
    solution: tuple
    residual_norm: object
    condition: ConditionNumber | None = None


def vector_norm(y) -> object:
    if len(y) == 0:
        raise ValueError("norm of an empty vector")
    total = abs(y[0])
    for v in y[1:]:
        total = total + abs(v)
    return total


def matrix_norm(A: DenseMatrix) -> object:
    best = None
    for j in range(A.cols):
        col = vector_norm([A[i, j] for i in range(A.rows)])
        if best is None or col > best:
            best = col
    return best


def _ctx_for(A: DenseMatrix, ctx):
    if ctx is not None:
        return ctx
    ctx = getattr(A.entries[0], "context", None)
    return ctx if ctx is not None else mpmath.fp


def solve(A: DenseMatrix, h, ctx=None, with_condition: bool = False) -> SolveReport:
    """Solve A y = h by elimination with partial pivoting in ``ctx``."""
    if not A.is_square:
        raise ValueError(f"solve needs a square matrix, got {A.rows}x{A.cols}")
    if len(h) != A.rows:
        raise ValueError(f"right-hand side has {len(h)} entries, matrix has {A.rows} rows")
    ctx = _ctx_for(A, ctx)
    A = A.converted(ctx)
    h = arith.convert_all(ctx, h)
    y = tuple(kernels.lu_solve(ctx, A.row_lists(), list(h)))
    residual = vector_norm([r - b for r, b in zip(A.matvec(y), h)])
    cond = condition_number(A, ctx) if with_condition else None
    return SolveReport(y, residual, cond)


def condition_number(A: DenseMatrix, ctx=None, residual_threshold=None) -> ConditionNumber:
    """One-norm condition number through the explicit inverse.

    Column j of the inverse solves A z = e_j. The estimate is flagged
    unreliable when any of those solves leaves a relative residual above
    ``residual_threshold`` (default sqrt(eps)).
    """
    if not A.is_square:
        raise ValueError("condition number needs a square matrix")
    ctx = _ctx_for(A, ctx)
    A = A.converted(ctx)
    n = A.rows
    rows = A.row_lists()
    one, zero = ctx.mpf(1), ctx.mpf(0)
    threshold = residual_threshold if residual_threshold is not None else ctx.sqrt(ctx.eps)
    norm_a = matrix_norm(A)
    columns = []
    worst = zero
    for j in range(n):
        e = [one if i == j else zero for i in range(n)]
        try:
            z = kernels.lu_solve(ctx, rows, e)
        except SingularMatrixError:
            return ConditionNumber(None, False)
        columns.append(z)
        res = vector_norm([r - b for r, b in zip(A.matvec(z), e)])
        scale = norm_a * vector_norm(z)
        rel = res / scale if scale else res
        if rel > worst:
            worst = rel
    norm_inv = max(vector_norm(col) for col in columns)
    value = norm_a * norm_inv
    if ctx.isinf(value) or ctx.isnan(value):
        return ConditionNumber(None, False, worst)
    return ConditionNumber(value, worst <= threshold, worst)
