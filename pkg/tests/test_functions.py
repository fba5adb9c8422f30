from fractions import Fraction

import mpmath
import pytest
import sympy

from padecheb import arith
from padecheb.functions import (
    NoTaylorError,
    UnknownFunctionError,
    from_callable,
    lookup,
    names,
    tan_taylor_rational,
    taylor_coeffs,
)
from padecheb.rational import Parity

REQUIRED = ["cos_pi4", "sin_pi4", "sin_pi2", "tan_pi4", "arctan", "exp", "sqrt"]


def test_required_entries_present():
    assert set(REQUIRED) <= set(names())


def test_lookup_examples():
    cos = lookup("cos_pi4")
    assert cos.parity is Parity.EVEN and tuple(cos.segment) == (-1, 1)
    sq = lookup("sqrt")
    assert tuple(sq.segment) == (Fraction(1, 2), 1) and sq.parity is Parity.GENERAL
    at = lookup("arctan")
    assert at.parity is Parity.ODD and at.div_x_limit == 1


def test_unknown_name_lists_entries():
    with pytest.raises(UnknownFunctionError) as info:
        lookup("gamma")
    assert "cos_pi4" in str(info.value)


def test_taylor_examples(X):
    assert list(taylor_coeffs(lookup("exp"), 3).coeffs) == [1, 1, Fraction(1, 2), Fraction(1, 6)]
    assert list(taylor_coeffs(lookup("arctan"), 5).coeffs) == [0, 1, 0, Fraction(-1, 3), 0, Fraction(1, 5)]
    with pytest.raises(NoTaylorError):
        taylor_coeffs(lookup("sqrt"), 3, X)


def test_tangent_numbers_against_sympy():
    z = sympy.symbols("z")
    ref = sympy.series(sympy.tan(z), z, 0, 24).removeO()
    got = tan_taylor_rational(23)
    for k in range(24):
        assert got[k] == Fraction(str(ref.coeff(z, k)))


def test_scaled_tan_against_numeric_differentiation(X):
    coeffs = taylor_coeffs(lookup("tan_pi4"), 9, X).coeffs
    ref = mpmath.taylor(lambda t: mpmath.tan(mpmath.pi / 4 * t), 0, 9)
    for a, b in zip(coeffs, ref):
        assert abs(a - b) < 1e-12 * max(1, abs(b))


@pytest.mark.parametrize("name", [n for n in REQUIRED if n != "sqrt"])
def test_taylor_reproduces_function_at_low_order(name, X):
    e = lookup(name)
    p = taylor_coeffs(e, 30, X)
    x = X.mpf("0.3")
    assert abs(p(x) - e(X, x)) < 1e-12


@pytest.mark.parametrize("name", REQUIRED + ["const_one"])
def test_parity_metadata(name, X):
    e = lookup(name)
    if e.parity is Parity.GENERAL:
        return
    sign = 1 if e.parity is Parity.EVEN else -1
    for i in range(100):
        x = X.mpf(i + 1) / 101
        assert abs(e(X, -x) - sign * e(X, x)) <= 4 * X.eps * max(1, abs(e(X, x)))


def test_div_x_limits(X):
    for name, value in (("sin_pi4", X.pi / 4), ("sin_pi2", X.pi / 2), ("tan_pi4", X.pi / 4), ("arctan", 1)):
        assert abs(lookup(name).divided_by_x(X, X.mpf(0)) - value) < 1e-70
    with pytest.raises(ZeroDivisionError):
        lookup("exp").divided_by_x(X, X.mpf(0))


# an independent evaluator: Taylor sums with argument reduction in 400-bit arithmetic


def _oracle(name, x):
    ctx = mpmath.MPContext()
    ctx.prec = 400
    x = ctx.mpf(x)
    pi = 4 * _atan_series(ctx, ctx.mpf(1) / 5) * 4 - 4 * _atan_series(ctx, ctx.mpf(1) / 239)

    def sin_cos(t):
        # halve the argument until tiny, then double back
        k = 0
        while abs(t) > ctx.mpf(2) ** -20:
            t /= 2
            k += 1
        s, c, term, n = ctx.mpf(0), ctx.mpf(0), ctx.mpf(1), 0
        while n < 40:
            if n % 2 == 0:
                c += term if (n // 2) % 2 == 0 else -term
            else:
                s += term if (n // 2) % 2 == 0 else -term
            n += 1
            term = term * t / n
        for _ in range(k):
            s, c = 2 * s * c, c * c - s * s
        return s, c

    if name == "cos_pi4":
        return sin_cos(pi / 4 * x)[1]
    if name == "sin_pi4":
        return sin_cos(pi / 4 * x)[0]
    if name == "sin_pi2":
        return sin_cos(pi / 2 * x)[0]
    if name == "tan_pi4":
        s, c = sin_cos(pi / 4 * x)
        return s / c
    if name == "arctan":
        # atan x = 2 atan(x / (1 + sqrt(1 + x^2))), three times
        y = x
        for _ in range(3):
            y = y / (1 + _sqrt(ctx, 1 + y * y))
        return 8 * _atan_series(ctx, y)
    if name == "exp":
        k = 20
        t = x / 2 ** k
        term, acc = ctx.mpf(1), ctx.mpf(0)
        for n in range(1, 40):
            acc += term
            term = term * t / n
        for _ in range(k):
            acc = acc * acc
        return acc
    if name == "sqrt":
        return _sqrt(ctx, x)
    raise KeyError(name)


def _sqrt(ctx, v):
    r = ctx.mpf(1)
    for _ in range(15):
        r = (r + v / r) / 2
    return r


def _atan_series(ctx, y):
    acc, term, k = ctx.mpf(0), y, 1
    while abs(term) > ctx.mpf(2) ** -420:
        acc += term / k if (k // 2) % 2 == 0 else -term / k
        term = term * y * y
        k += 2
    return acc


@pytest.mark.parametrize("name", REQUIRED)
def test_evaluators_against_independent_oracle(name, X):
    e = lookup(name)
    a, b = (Fraction(v) for v in e.segment)
    for i in range(100):
        x = a + (b - a) * Fraction(i, 99)
        xv = arith.convert(X, x)
        assert abs(e(X, xv) - _oracle(name, xv)) < 1e-60


def test_from_callable():
    e = from_callable("square", lambda ctx, x: x * x, parity="even")
    assert e(arith.double(), 3.0) == 9.0 and not e.has_taylor
