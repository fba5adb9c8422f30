"""One entry point for the three construction methods.

:class:`ApproxSpec` bundles everything needed to build an approximant so
that diagnostics can rebuild the same problem in another arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from padecheb import arith, cross, linear, nonlinear
from padecheb.core_poly import ChebyshevSeries, default_node_count
from padecheb.functions import CatalogEntry, lookup
from padecheb.linsolve import ConditionNumber
from padecheb.rational import NormTag, Parity, RationalApproximant
from padecheb.series import chebyshev_series, taylor_series


class Method(str, Enum):
    LINEAR = "linear"
    CROSS = "cross"
    NONLINEAR = "nonlinear"


@dataclass(frozen=True)
class ApproxSpec:
    function: CatalogEntry
    m: int
    n: int
    method: Method = Method.LINEAR
    parity: Parity = Parity.GENERAL
    normalization: str = NormTag.B0
    segment: tuple | None = None
    s: int | None = None
    taylor_N: int | None = None  # None: Chebyshev coefficients by quadrature

    def __post_init__(self):
        if isinstance(self.function, str):
            object.__setattr__(self, "function", lookup(self.function))
        object.__setattr__(self, "method", Method(self.method))
        object.__setattr__(self, "parity", Parity(self.parity))
        if self.segment is None:
            object.__setattr__(self, "segment", tuple(self.function.segment))
        if self.m < 0 or self.n < 0:
            raise ValueError("degrees must be nonnegative")
        if self.taylor_N is not None and self.method is Method.LINEAR:
            raise ValueError("the Taylor route applies to the cross and nonlinear methods")

    @property
    def node_count(self) -> int:
        return self.s or default_node_count(self.m, self.n)

    def with_(self, **changes) -> "ApproxSpec":
        return replace(self, **changes)

    def series(self, ctx, count: int | None = None) -> ChebyshevSeries:
        count = count or self.n + 2 * self.m + 1
        if self.taylor_N is not None:
            return taylor_series(self.function, self.taylor_N, self.parity, ctx, count=count)
        return chebyshev_series(self.function, count, self.parity, ctx, s=self.node_count,
                                segment=self.segment)

    def build(self, ctx) -> "Construction":
        if self.method is Method.LINEAR:
            prob = linear.LinearPCProblem(self.function, self.m, self.n, self.parity,
                                          self.normalization, self.segment, self.s)
            approx, report = linear.construct(prob, ctx)
            return Construction(self, approx, report.condition, report.residual_norm, None)
        c = self.series(ctx)
        if self.method is Method.CROSS:
            prob = cross.CrossPCProblem(c, self.m, self.n, self.parity, self.segment)
            approx, report = cross.construct(prob, ctx)
            return Construction(self, approx, report.condition, report.residual_norm, c)
        approx, gamma = nonlinear.construct(c, self.m, self.n, ctx, self.parity, self.segment)
        return Construction(self, approx, gamma.condition, None, c,
                            {"gamma": gamma.gamma, "mu": gamma.mu})


@dataclass(frozen=True)
class Construction:
    spec: ApproxSpec
    approximant: RationalApproximant
    condition: ConditionNumber | None
    residual_norm: object
    series: ChebyshevSeries | None
    extra: dict = field(default_factory=dict)

    @property
    def ctx(self):
        return self.approximant.ctx

    def condition_value(self):
        return None if self.condition is None else self.condition.value


def build(spec: ApproxSpec, ctx=None) -> Construction:
    return spec.build(ctx or arith.extended())
