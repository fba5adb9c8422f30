"""Catalog of target functions.

Each entry evaluates at any arithmetic context, carries its default segment
and parity, and (where the function is analytic at 0) a Taylor provider
returning f^(k)(0)/k! split into an exact rational part and a power of a
context-dependent scale (pi/4, pi/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

from padecheb import arith
from padecheb.core_poly import MonomialPoly
from padecheb.rational import Parity


class UnknownFunctionError(KeyError):
    pass


class NoTaylorError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    evaluator: Callable  # (ctx, x) -> value
    segment: tuple = (-1, 1)
    parity: Parity = Parity.GENERAL
    # (N) -> list of exact Fractions r_k; the coefficient of x^k is r_k * scale(ctx)^k
    taylor_rational: Callable | None = None
    taylor_scale: Callable | None = None
    # value of f(x)/x at 0 for odd entries: a Fraction or a callable of ctx
    div_x_limit: object = None
    description: str = ""

    def __call__(self, ctx, x):
        return self.evaluator(ctx, x)

    def divided_by_x(self, ctx, x):
        """f(x)/x, with the analytic limit at x = 0 for odd entries."""
        if x == 0:
            limit = self.div_x_limit
            if limit is None:
                raise ZeroDivisionError(f"{self.name}(x)/x has no limit registered at 0")
            return limit(ctx) if callable(limit) else arith.convert(ctx, limit)
        return self.evaluator(ctx, x) / x

    @property
    def has_taylor(self) -> bool:
        return self.taylor_rational is not None


def _tangent_numbers(count: int) -> list[int]:
    """Tangent numbers T_1, T_3, ..., T_{2count-1} (tan z = sum T_k z^k / k!)."""
    t = [0] * (count + 1)
    if count == 0:
        return []
    t[1] = 1
    for k in range(2, count + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t[1:]


def tan_taylor_rational(N: int) -> list[Fraction]:
    tn = _tangent_numbers((N + 1) // 2)
    out = [Fraction(0)] * (N + 1)
    for idx, value in enumerate(tn):
        k = 2 * idx + 1
        if k <= N:
            out[k] = Fraction(value, factorial(k))
    return out


def _cos_rational(N):
    return [Fraction((-1) ** (k // 2), factorial(k)) if k % 2 == 0 else Fraction(0)
            for k in range(N + 1)]


def _sin_rational(N):
    return [Fraction((-1) ** (k // 2), factorial(k)) if k % 2 == 1 else Fraction(0)
            for k in range(N + 1)]


def _exp_rational(N):
    return [Fraction(1, factorial(k)) for k in range(N + 1)]


def _atan_rational(N):
    return [Fraction((-1) ** (k // 2), k) if k % 2 == 1 else Fraction(0) for k in range(N + 1)]


def _const_rational(N):
    return [Fraction(1)] + [Fraction(0)] * N


def _pi_over(q):
    return lambda ctx: ctx.pi / q


def _one(ctx):
    return ctx.mpf(1)


_ENTRIES = [
    CatalogEntry("cos_pi4", lambda ctx, x: ctx.cos(ctx.pi / 4 * x), (-1, 1), Parity.EVEN,
                 _cos_rational, _pi_over(4), None, "cos(pi x / 4)"),
    CatalogEntry("sin_pi4", lambda ctx, x: ctx.sin(ctx.pi / 4 * x), (-1, 1), Parity.ODD,
                 _sin_rational, _pi_over(4), _pi_over(4), "sin(pi x / 4)"),
    CatalogEntry("sin_pi2", lambda ctx, x: ctx.sin(ctx.pi / 2 * x), (-1, 1), Parity.ODD,
                 _sin_rational, _pi_over(2), _pi_over(2), "sin(pi x / 2)"),
    CatalogEntry("tan_pi4", lambda ctx, x: ctx.tan(ctx.pi / 4 * x), (-1, 1), Parity.ODD,
                 tan_taylor_rational, _pi_over(4), _pi_over(4), "tan(pi x / 4)"),
    CatalogEntry("arctan", lambda ctx, x: ctx.atan(x), (-1, 1), Parity.ODD,
                 _atan_rational, _one, Fraction(1), "arctan(x)"),
    CatalogEntry("exp", lambda ctx, x: ctx.exp(x), (-1, 1), Parity.GENERAL,
                 _exp_rational, _one, None, "exp(x)"),
    CatalogEntry("sqrt", lambda ctx, x: ctx.sqrt(x), (Fraction(1, 2), 1), Parity.GENERAL,
                 None, None, None, "sqrt(x) on [1/2, 1]"),
    CatalogEntry("const_one", lambda ctx, x: ctx.mpf(1), (-1, 1), Parity.EVEN,
                 _const_rational, _one, None, "the constant 1"),
]

CATALOG = {e.name: e for e in _ENTRIES}


def names() -> list[str]:
    return sorted(CATALOG)


def lookup(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownFunctionError(
            f"unknown function {name!r}; available: {', '.join(names())}"
        ) from None


def taylor_coeffs(entry: CatalogEntry, N: int, ctx=None) -> MonomialPoly:
    """Truncated Taylor series sum_{k<=N} f^(k)(0) x^k / k! in ``ctx``.

    With ``ctx=None`` and a unit scale, the coefficients stay exact Fractions.
    """
    if N < 0:
        raise ValueError("Taylor degree must be nonnegative")
    if not entry.has_taylor:
        raise NoTaylorError(f"{entry.name} has no Taylor expansion at the origin")
    rational = entry.taylor_rational(N)
    if ctx is None:
        if entry.taylor_scale is not _one:
            raise ValueError(f"{entry.name} needs an arithmetic context for its scale")
        return MonomialPoly(rational)
    scale = entry.taylor_scale(ctx)
    out = []
    power = ctx.mpf(1)
    for r in rational:
        out.append(arith.convert(ctx, r) * power)
        power = power * scale
    return MonomialPoly(out)


def from_callable(name: str, fn: Callable, segment=(-1, 1), parity=Parity.GENERAL,
                  div_x_limit=None, description: str = "") -> CatalogEntry:
    """Programmatic extension point: wrap ``fn(ctx, x)`` as a catalog entry."""
    return CatalogEntry(name, fn, tuple(segment), Parity(parity), None, None,
                        div_x_limit, description or name)
