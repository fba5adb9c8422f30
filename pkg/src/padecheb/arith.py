"""Arithmetic contexts.

Every numerical routine in the package takes an mpmath context as its
arithmetic: ``mpmath.fp`` for native double precision, or a private
``mpmath.MPContext`` with a fixed working precision for extended runs.
Contexts are created once per precision and never mutated afterwards.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath
from mpmath import libmp

DOUBLE_BITS = 53
DEFAULT_EXTENDED_BITS = 256
PRECISION_ENV = "PADECHEB_PRECISION"


@lru_cache(maxsize=None)
def context(bits: int = DEFAULT_EXTENDED_BITS):
    """Return the arithmetic context with a ``bits``-bit significand."""
    bits = int(bits)
    if bits == DOUBLE_BITS:
        return mpmath.fp
    if bits < DOUBLE_BITS:
        raise ValueError(f"precision below double is not supported: {bits} bits")
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def double():
    return mpmath.fp


def extended(bits: int = DEFAULT_EXTENDED_BITS):
    if bits < 128:
        raise ValueError("extended precision needs at least a 128-bit significand")
    return context(bits)


def parse_precision(text: str | int | None):
    """Parse ``double``, ``extended``, ``extended:NNN`` or a bit count.

    ``None`` falls back to the ``PADECHEB_PRECISION`` environment variable,
    then to extended precision.
    """
    if text is None:
        text = os.environ.get(PRECISION_ENV, "extended")
    if isinstance(text, int):
        return context(text)
    word = str(text).strip().lower()
    if word in ("double", "fp", "53"):
        return double()
    if word == "extended":
        return extended()
    if word.startswith("extended:"):
        return extended(int(word.split(":", 1)[1]))
    if word.isdigit():
        return context(int(word))
    raise ValueError(f"unrecognised precision {text!r}")


def is_double(ctx) -> bool:
    return ctx is mpmath.fp


def bits(ctx) -> int:
    return DOUBLE_BITS if is_double(ctx) else ctx.prec


def eps(ctx):
    """Unit roundoff scale of ``ctx`` (distance from 1 to the next number)."""
    return ctx.eps


def label(ctx) -> str:
    return "double" if is_double(ctx) else f"extended:{ctx.prec}"


def to_fraction(value) -> Fraction:
    """Exact rational value of a float, mpf, int or Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    mpf_value = getattr(value, "_mpf_", None)
    if mpf_value is not None:
        sign, man, exp, _ = mpf_value
        if not man:
            if mpf_value != libmp.fzero:
                raise ValueError("cannot convert a non-finite value to a fraction")
            return Fraction(0)
        num = -man if sign else man
        return Fraction(num * 2**exp) if exp >= 0 else Fraction(num, 2**-exp)
    return Fraction(str(value))


def convert(ctx, value):
    """Round ``value`` (float, mpf, int, Fraction or decimal string) into ``ctx``."""
    if isinstance(value, Fraction):
        if is_double(ctx):
            return float(value)
        return ctx.make_mpf(
            libmp.from_rational(value.numerator, value.denominator, ctx.prec, libmp.round_nearest)
        )
    if is_double(ctx):
        return float(value)
    if isinstance(value, str):
        return ctx.mpf(value)
    mpf_value = getattr(value, "_mpf_", None)
    if mpf_value is not None:
        return ctx.make_mpf(libmp.normalize(*mpf_value, ctx.prec, libmp.round_nearest)
                            if mpf_value[1] else mpf_value)
    return ctx.mpf(value)


def convert_all(ctx, values) -> tuple:
    return tuple(convert(ctx, v) for v in values)


def to_decimal(ctx, value) -> str:
    """Decimal string that round-trips ``value`` at the precision of ``ctx``."""
    if is_double(ctx) or isinstance(value, float):
        return repr(float(value))
    digits = int(ctx.prec * 0.30103) + 3
    return libmp.to_str(convert(ctx, value)._mpf_, digits)
