"""Chebyshev polynomial machinery.

Evaluation, the product rule, Gauss-Chebyshev quadrature, exact basis
changes between monomials and Chebyshev polynomials, and Fourier-Chebyshev
coefficient extraction. Coefficients are plain numbers of whatever
arithmetic the caller works in (float, mpf or Fraction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from padecheb import arith, kernels


@dataclass(frozen=True)
class MonomialPoly:
    """p_0 + p_1 x + ... + p_d x^d. Trailing zeros are kept."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        if not self.coeffs:
            raise ValueError("cannot evaluate an empty polynomial")
        return kernels._pykernels.horner(self.coeffs, x)

    def __sub__(self, other: "MonomialPoly") -> "MonomialPoly":
        return MonomialPoly(_pad_sub(self.coeffs, other.coeffs))


@dataclass(frozen=True)
class ChebyshevSeries:
    """Sum of c_k T_k(x); with ``halved_first`` the c_0 term enters as c_0/2."""

    coeffs: tuple
    halved_first: bool = True

    def __init__(self, coeffs: Sequence, halved_first: bool = True):
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "halved_first", bool(halved_first))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        if not self.coeffs:
            raise ValueError("cannot evaluate an empty series")
        return kernels._pykernels.clenshaw(self.coeffs, x, self.halved_first)

    def plain_coeffs(self) -> tuple:
        """Coefficients under the plain (not halved) convention."""
        if not self.halved_first or not self.coeffs:
            return self.coeffs
        return (self.coeffs[0] / 2,) + self.coeffs[1:]

    def with_halved_first(self) -> "ChebyshevSeries":
        if self.halved_first:
            return self
        if not self.coeffs:
            return ChebyshevSeries((), True)
        return ChebyshevSeries((self.coeffs[0] * 2,) + self.coeffs[1:], True)

    def truncate(self, last_index: int) -> "ChebyshevSeries":
        return ChebyshevSeries(self.coeffs[: last_index + 1], self.halved_first)

    def padded(self, length: int) -> "ChebyshevSeries":
        if len(self.coeffs) >= length:
            return self
        zero = self.coeffs[0] * 0 if self.coeffs else 0
        return ChebyshevSeries(self.coeffs + (zero,) * (length - len(self.coeffs)),
                               self.halved_first)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Chebyshev rule: s nodes cos((2i-1)pi/2s), common weight pi/s."""

    s: int
    nodes: tuple
    weight: object
    ctx: object

    @property
    def angles(self) -> tuple:
        ctx = self.ctx
        return tuple(ctx.mpf(2 * i - 1) * ctx.pi / (2 * self.s) for i in range(1, self.s + 1))


def gauss_chebyshev(s: int, ctx=None) -> QuadratureRule:
    if s < 1:
        raise ValueError("node count must be positive")
    ctx = ctx or mpmath.fp
    nodes = tuple(ctx.cos(ctx.mpf(2 * i - 1) * ctx.pi / (2 * s)) for i in range(1, s + 1))
    return QuadratureRule(s, nodes, ctx.pi / s, ctx)


def default_node_count(m: int, n: int) -> int:
    return 8 * (m + n + 1) + 64


def cheb_eval(k: int, x):
    """T_k(x) by the three-term recurrence."""
    if k < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    if abs(x) > 1:
        raise ValueError(f"argument {x} outside [-1, 1]")
    t_prev, t_cur = x * 0 + 1, x
    if k == 0:
        return t_prev
    for _ in range(k - 1):
        t_prev, t_cur = t_cur, 2 * x * t_cur - t_prev
    return t_cur


def cheb_product(i: int, j: int) -> ChebyshevSeries:
    """T_i T_j = (T_{i+j} + T_{|i-j|}) / 2, as a plain-convention series."""
    if i < 0 or j < 0:
        raise ValueError("Chebyshev indices must be nonnegative")
    coeffs = [Fraction(0)] * (i + j + 1)
    coeffs[i + j] += Fraction(1, 2)
    coeffs[abs(i - j)] += Fraction(1, 2)
    return ChebyshevSeries(coeffs, halved_first=False)


def quadrature(f: Callable, rule: QuadratureRule):
    """(pi/s) * sum of f over the nodes, in node order."""
    total = rule.weight * 0
    for x in rule.nodes:
        total = total + f(x)
    return rule.weight * total


def fourier_chebyshev_coeffs(f: Callable, N: int, rule: QuadratureRule) -> ChebyshevSeries:
    """c_k = (2/pi) * integral of f T_k w, k = 0..N, halved-first convention."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if rule.s <= N:
        raise ValueError(f"quadrature with s={rule.s} nodes cannot resolve index {N}")
    values = [f(x) for x in rule.nodes]
    scale = rule.ctx.mpf(2) / rule.s
    coeffs = kernels.chebyshev_coeffs(rule.ctx, values, list(rule.nodes), N + 1, scale)
    return ChebyshevSeries(coeffs, halved_first=True)


def _pad_sub(a, b):
    size = max(len(a), len(b))
    a = tuple(a) + (0,) * (size - len(a))
    b = tuple(b) + (0,) * (size - len(b))
    return tuple(x - y for x, y in zip(a, b))


def _rational_out(ctx, values):
    if ctx is None:
        return tuple(values)
    return tuple(arith.convert(ctx, v) for v in values)


def _infer_ctx(values):
    for v in values:
        ctx = getattr(v, "context", None)
        if ctx is not None:
            return ctx
        if isinstance(v, float):
            return mpmath.fp
    return None


def monomial_to_cheb(p: MonomialPoly, ctx=None) -> ChebyshevSeries:
    """Exact change of basis from monomials to a halved-first Chebyshev series.

    The arithmetic is carried out on exact rationals and rounded once at the
    end into ``ctx`` (inferred from the coefficients when omitted; Fractions
    stay exact).
    """
    ctx = ctx or _infer_ctx(p.coeffs)
    exact = [arith.to_fraction(c) for c in p.coeffs]
    if not exact:
        return ChebyshevSeries((), True)
    # Horner in the Chebyshev basis using x T_k = (T_{k+1} + T_{|k-1|}) / 2
    acc = [exact[-1]]
    for k in range(len(exact) - 2, -1, -1):
        nxt = [Fraction(0)] * (len(acc) + 1)
        for idx, c in enumerate(acc):
            if not c:
                continue
            if idx == 0:
                nxt[1] += c
            else:
                nxt[idx + 1] += c / 2
                nxt[idx - 1] += c / 2
        nxt[0] += exact[k]
        acc = nxt[: len(exact)] if len(nxt) > len(exact) else nxt
    acc[0] *= 2
    return ChebyshevSeries(_rational_out(ctx, acc), halved_first=True)


def _cheb_monomial_table(d: int) -> list[list[int]]:
    table = [[1]]
    if d >= 1:
        table.append([0, 1])
    for k in range(2, d + 1):
        prev, prev2 = table[-1], table[-2]
        row = [0] * (k + 1)
        for i, c in enumerate(prev):
            row[i + 1] += 2 * c
        for i, c in enumerate(prev2):
            row[i] -= c
        table.append(row)
    return table


def cheb_to_monomial(series: ChebyshevSeries, ctx=None) -> MonomialPoly:
    """Exact change of basis from a Chebyshev series to monomials."""
    ctx = ctx or _infer_ctx(series.coeffs)
    exact = [arith.to_fraction(c) for c in series.coeffs]
    if not exact:
        return MonomialPoly(())
    if series.halved_first:
        exact[0] /= 2
    table = _cheb_monomial_table(len(exact) - 1)
    out = [Fraction(0)] * len(exact)
    for k, c in enumerate(exact):
        if not c:
            continue
        for i, t in enumerate(table[k]):
            if t:
                out[i] += c * t
    return MonomialPoly(_rational_out(ctx, out))


def economize_taylor(taylor: MonomialPoly, target_N: int, ctx=None) -> ChebyshevSeries:
    """Exact basis change of a truncated Taylor polynomial, cut at index target_N."""
    if target_N > taylor.degree:
        raise ValueError(f"target index {target_N} exceeds the Taylor degree {taylor.degree}")
    if target_N < 0:
        raise ValueError("target index must be nonnegative")
    return monomial_to_cheb(taylor, ctx).truncate(target_N)


def substitute_affine(p: MonomialPoly, scale, shift, ctx=None) -> MonomialPoly:
    """Coefficients of p(scale*u + shift) as a polynomial in u (exact)."""
    ctx = ctx or _infer_ctx(p.coeffs)
    exact = [arith.to_fraction(c) for c in p.coeffs]
    s, h = arith.to_fraction(scale), arith.to_fraction(shift)
    out = [Fraction(0)] * len(exact)
    for c in reversed(exact):
        # out = out * (s u + h) + c
        nxt = [Fraction(0)] * len(exact)
        for i, v in enumerate(out):
            if not v:
                continue
            nxt[i] += v * h
            if i + 1 < len(nxt):
                nxt[i + 1] += v * s
        nxt[0] += c
        out = nxt
    return MonomialPoly(_rational_out(ctx, out))
