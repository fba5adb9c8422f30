import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padecheb import arith
from padecheb.core_poly import (
    ChebyshevSeries,
    MonomialPoly,
    cheb_eval,
    cheb_product,
    cheb_to_monomial,
    default_node_count,
    economize_taylor,
    fourier_chebyshev_coeffs,
    gauss_chebyshev,
    monomial_to_cheb,
    quadrature,
)
from padecheb.functions import lookup, taylor_coeffs

# --- polynomial types --------------------------------------------------------------


def test_monomial_eval_matches_direct_sum():
    p = MonomialPoly([1.5, -2, 0.25, 3])
    for x in (-1.3, 0, 0.7, 2):
        assert p(x) == pytest.approx(sum(c * x ** k for k, c in enumerate(p.coeffs)), rel=1e-15)


def test_monomial_keeps_trailing_zero_and_rejects_empty():
    assert MonomialPoly([1, 2, 0]).degree == 2
    with pytest.raises(ValueError):
        MonomialPoly([])(0.5)


def test_series_halved_convention():
    s = ChebyshevSeries([2, 0, 1])
    assert s(0.5) == pytest.approx(1 + cheb_eval(2, 0.5))
    assert ChebyshevSeries([0, 0, 0])(0.3) == 0


# --- cheb_eval ---------------------------------------------------------------------------


def test_cheb_eval_examples():
    assert cheb_eval(5, 1.0) == 1
    assert cheb_eval(2, 0.5) == pytest.approx(-0.5)
    assert abs(cheb_eval(3, math.cos(math.pi / 6))) < 1e-15


def test_cheb_eval_rejects_bad_input():
    with pytest.raises(ValueError):
        cheb_eval(-1, 0.1)
    with pytest.raises(ValueError):
        cheb_eval(2, 1.5)


@pytest.mark.parametrize("name", ["double", "extended"])
def test_recurrence_matches_closed_form(name):
    ctx = arith.parse_precision(name)
    eps = arith.eps(ctx)
    thetas = [ctx.pi * i / 999 for i in range(1000)]
    for k in (0, 1, 2, 7, 16, 33, 64):
        worst = max(abs(cheb_eval(k, ctx.cos(t)) - ctx.cos(k * t)) for t in thetas[::7])
        assert worst <= 10 * eps * max(k, 1) * (4 if name == "double" else 1)


# --- products ---------------------------------------------------------------------------


def test_cheb_product_examples():
    assert cheb_product(1, 1).coeffs == (Fraction(1, 2), 0, Fraction(1, 2))
    prod = cheb_product(0, 4)
    assert prod.coeffs[4] == 1 and sum(prod.coeffs) == 1
    p35 = cheb_product(3, 5)
    assert p35.coeffs[8] == Fraction(1, 2) and p35.coeffs[2] == Fraction(1, 2)
    assert not p35.halved_first


@given(st.integers(0, 12), st.integers(0, 12), st.floats(-1, 1))
def test_cheb_product_identity(i, j, x):
    assert cheb_product(i, j)(x) == pytest.approx(cheb_eval(i, x) * cheb_eval(j, x), abs=1e-12)


# --- quadrature ---------------------------------------------------------------------------


def test_rule_properties(X):
    rule = gauss_chebyshev(16, X)
    assert all(-1 < x < 1 for x in rule.nodes)
    assert rule.weight == X.pi / 16
    assert len(rule.nodes) == 16


def test_quadrature_examples(X):
    for s in (1, 5, 40):
        assert quadrature(lambda x: 1, gauss_chebyshev(s, X)) == pytest.approx(X.pi, rel=1e-70)
    rule = gauss_chebyshev(6, X)
    for k in range(1, 12):
        assert abs(quadrature(lambda x, k=k: cheb_eval(k, x), rule)) < 1e-70
    assert abs(quadrature(lambda x: x * x, gauss_chebyshev(2, X)) - X.pi / 2) < 1e-70


def _moment(k, ctx):
    if k % 2:
        return ctx.mpf(0)
    r = Fraction(1)
    for i in range(1, k, 2):
        r *= Fraction(i, i + 1)
    return ctx.pi * arith.convert(ctx, r)


@pytest.mark.parametrize("name", ["double", "extended"])
def test_quadrature_exact_on_moments(name):
    ctx = arith.parse_precision(name)
    eps = arith.eps(ctx)
    s = 12
    rule = gauss_chebyshev(s, ctx)
    for k in range(2 * s):
        got = quadrature(lambda x, k=k: x ** k, rule)
        assert abs(got - _moment(k, ctx)) <= 1e3 * eps * ctx.pi


def test_default_node_count():
    assert default_node_count(2, 3) == 8 * 6 + 64
    assert default_node_count(0, 0) % 2 == 0


# --- Fourier-Chebyshev coefficients ---------------------------------------------------------


def test_fc_coeffs_of_t3(X):
    c = fourier_chebyshev_coeffs(lambda x: cheb_eval(3, x), 5, gauss_chebyshev(16, X))
    assert c.halved_first
    for k, v in enumerate(c.coeffs):
        assert abs(v - (1 if k == 3 else 0)) < 1e-70


def test_fc_coeffs_of_square(X):
    c = fourier_chebyshev_coeffs(lambda x: x * x, 2, gauss_chebyshev(8, X)).coeffs
    assert abs(c[0] - 1) < 1e-70 and abs(c[1]) < 1e-70 and abs(c[2] - X.mpf(1) / 2) < 1e-70


def test_fc_coeffs_of_exp_against_trapezoid_oracle(X):
    c = fourier_chebyshev_coeffs(X.exp, 3, gauss_chebyshev(64, X)).coeffs
    # c_k = (2/pi) int_0^pi exp(cos t) cos(k t) dt; the trapezoid rule on a
    # periodic analytic integrand converges geometrically
    M = 200
    for k in range(4):
        h = X.pi / M
        acc = (X.exp(1) + X.exp(-1) * (-1) ** k) / 2
        acc += sum(X.exp(X.cos(i * h)) * X.cos(k * i * h) for i in range(1, M))
        oracle = 2 / X.pi * h * acc
        assert abs(c[k] - oracle) < 1e-60
        assert abs(c[k] - 2 * X.besseli(k, 1)) < 1e-60


def test_fc_coeffs_needs_enough_nodes(X):
    with pytest.raises(ValueError):
        fourier_chebyshev_coeffs(X.exp, 5, gauss_chebyshev(5, X))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=10))
def test_projection_is_idempotent(ints):
    X = arith.extended()
    series = ChebyshevSeries([X.mpf(v) / 7 for v in ints])
    back = fourier_chebyshev_coeffs(series, len(ints) - 1, gauss_chebyshev(len(ints) + 4, X))
    for a, b in zip(series.coeffs, back.coeffs):
        assert abs(a - b) <= 1e3 * X.eps * 8


# --- basis changes ---------------------------------------------------------------------------


def test_economize_examples(X):
    c = economize_taylor(MonomialPoly([-1, 0, 2]), 2, X)
    assert [float(v) for v in c.plain_coeffs()] == [0, 0, 1]
    c = economize_taylor(MonomialPoly([0, 0, 0, 1]), 3, X)
    assert [float(v) for v in c.plain_coeffs()] == [0, 0.75, 0, 0.25]
    with pytest.raises(ValueError):
        economize_taylor(MonomialPoly([1, 2]), 3, X)


def test_economized_exp_matches_quadrature(X):
    t = taylor_coeffs(lookup("exp"), 15, X)
    econ = economize_taylor(t, 9, X)
    quad = fourier_chebyshev_coeffs(X.exp, 9, gauss_chebyshev(64, X))
    assert max(abs(a - b) for a, b in zip(econ.coeffs, quad.coeffs)) < 1e-10


def test_basis_change_examples(X):
    t2 = ChebyshevSeries([0, 0, 1], halved_first=False)
    mono = cheb_to_monomial(t2, X)
    assert [float(v) for v in mono.coeffs] == [-1, 0, 2]
    back = monomial_to_cheb(mono, X)
    assert [float(v) for v in back.plain_coeffs()] == [0, 0, 1]
    zero = cheb_to_monomial(ChebyshevSeries([0, 0, 0]), X)
    assert not any(zero.coeffs)


def test_random_roundtrip_double():
    rng = random.Random(8)
    D = arith.double()
    for _ in range(20):
        p = MonomialPoly([rng.uniform(-1, 1) for _ in range(9)])
        back = cheb_to_monomial(monomial_to_cheb(p, D), D)
        for a, b in zip(p.coeffs, back.coeffs):
            assert abs(a - b) <= 1e-12 * abs(a)


@pytest.mark.parametrize("name, degree", [("double", 0), ("double", 5), ("double", 16),
                                          ("extended", 0), ("extended", 16), ("extended", 32)])
def test_roundtrip_within_100_eps(name, degree):
    ctx = arith.parse_precision(name)
    rng = random.Random(degree)
    p = MonomialPoly([arith.convert(ctx, rng.uniform(0.5, 2) * rng.choice((-1, 1))) for _ in range(degree + 1)])
    back = cheb_to_monomial(monomial_to_cheb(p, ctx), ctx)
    for a, b in zip(p.coeffs, back.coeffs):
        assert abs(a - b) <= 100 * arith.eps(ctx) * abs(a)


def test_double_roundtrip_degrades_gracefully_at_high_degree():
    # one rounding of the Chebyshev coefficients, amplified by the basis change
    ctx = arith.double()
    rng = random.Random(3)
    p = MonomialPoly([rng.uniform(0.5, 2) for _ in range(33)])
    back = cheb_to_monomial(monomial_to_cheb(p, ctx), ctx)
    assert max(abs(a - b) / abs(a) for a, b in zip(p.coeffs, back.coeffs)) < 1e5 * arith.eps(ctx)
