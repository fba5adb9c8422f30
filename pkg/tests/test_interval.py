import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padecheb.interval import (
    autocorrection_residual,
    basis_values,
    gradient_wrt_coeffs,
    naive_bound,
    pessimism_profile,
)
from padecheb.methods import ApproxSpec
from padecheb.rational import Basis, DenominatorZeroError, Parity, RationalApproximant


def _R(ctx, a, b, **kw):
    return RationalApproximant(tuple(ctx.mpf(v) for v in a), tuple(ctx.mpf(v) for v in b), **kw)


def test_identity_gradient(X):
    ga, gb = gradient_wrt_coeffs(_R(X, [0, 1], [1]), X.mpf("0.5"))
    assert ga == [1, X.mpf("0.5")] and gb == [X.mpf("-0.5")]


def test_constant_gradient(X):
    x = X.mpf("0.3")
    R = _R(X, [3], [2, 1])
    ga, gb = gradient_wrt_coeffs(R, x)
    Q = 2 + x
    assert abs(ga[0] - 1 / Q) < 1e-70
    assert abs(gb[1] - (-3 * x / Q ** 2)) < 1e-70


def test_zero_denominator(X):
    with pytest.raises(DenominatorZeroError):
        gradient_wrt_coeffs(_R(X, [1], [0, 1]), X.mpf(0))


_shapes = st.sampled_from([
    (Basis.MONOMIAL, Parity.GENERAL), (Basis.MONOMIAL, Parity.EVEN), (Basis.MONOMIAL, Parity.ODD),
    (Basis.CHEBYSHEV, Parity.GENERAL), (Basis.CHEBYSHEV, Parity.ODD),
])


@given(shape=_shapes, seed=st.integers(0, 10 ** 6), x=st.floats(-0.95, 0.95))
def test_gradient_matches_finite_differences(D, shape, seed, x):
    basis, parity = shape
    rng = random.Random(seed)
    a = [rng.uniform(-1, 1) for _ in range(rng.randint(1, 4))]
    b = [2.0] + [rng.uniform(-0.3, 0.3) for _ in range(rng.randint(0, 3))]
    R = RationalApproximant(tuple(a), tuple(b), basis, parity)
    ga, gb = gradient_wrt_coeffs(R, x)
    coeffs = a + b
    for k, g in enumerate(ga + gb):
        h = 1e-6 * max(1.0, abs(coeffs[k]))
        up, dn = list(coeffs), list(coeffs)
        up[k] += h
        dn[k] -= h
        Rp = RationalApproximant(tuple(up[: len(a)]), tuple(up[len(a):]), basis, parity)
        Rm = RationalApproximant(tuple(dn[: len(a)]), tuple(dn[len(a):]), basis, parity)
        fd = (Rp(x) - Rm(x)) / (2 * h)
        assert abs(fd - g) <= 1e-6 * max(1.0, abs(g))


def test_basis_values_rebuild_value(X):
    R = _R(X, ["0.4", "-0.2", "0.1"], ["1", "0.3"], basis=Basis.CHEBYSHEV, parity=Parity.ODD)
    x = X.mpf("0.7")
    phi = basis_values(R, x, 3, True)
    psi = basis_values(R, x, 2, False)
    P = sum(c * w for c, w in zip(R.numer, phi))
    Q = sum(c * w for c, w in zip(R.denom, psi))
    assert abs(P / Q - R(x)) < 1e-70


def test_naive_bound_examples(X):
    R = _R(X, ["0.5", "1"], ["1", "0.25"])
    x = X.mpf("0.4")
    assert naive_bound(R, [0, 0], [0, 0], x) == 0
    eps = X.mpf("1e-9")
    Q = 1 + x / 4
    assert abs(naive_bound(R, [eps, 0], [0, 0], x) - eps / Q) < 1e-80


def test_residual_controls(X):
    R = _R(X, ["0.5", "1"], ["1", "0.25"])
    x = X.mpf("0.4")
    ga, gb = gradient_wrt_coeffs(R, x)
    t = X.mpf("1e-8")
    aligned_a = [t * g for g in ga]
    aligned_b = [t * g for g in gb]
    assert abs(autocorrection_residual(R, aligned_a, aligned_b, x)
               - naive_bound(R, aligned_a, aligned_b, x)) < 1e-70
    # orthogonal: move a_0 and a_1 against each other along the gradient
    orth_a = [t * ga[1], -t * ga[0]]
    assert abs(autocorrection_residual(R, orth_a, [0, 0], x)) < 1e-70
    assert naive_bound(R, orth_a, [0, 0], x) > 0


@given(seed=st.integers(0, 10 ** 6), x=st.floats(-1, 1))
def test_triangle_inequality(X, seed, x):
    rng = random.Random(seed)
    R = _R(X, [rng.uniform(-1, 1) for _ in range(4)], [3] + [rng.uniform(-1, 1) for _ in range(2)])
    da = [X.mpf(rng.uniform(-1, 1)) for _ in range(4)]
    db = [X.mpf(rng.uniform(-1, 1)) for _ in range(3)]
    x = X.mpf(x)
    assert abs(autocorrection_residual(R, da, db, x)) <= naive_bound(R, da, db, x)


@pytest.fixture(scope="module")
def arctan_profile():
    from padecheb import arith

    spec = ApproxSpec("arctan", 4, 4, parity="odd")
    lo, hi = spec.build(arith.double()).approximant, spec.build(arith.extended()).approximant
    return pessimism_profile(hi, lo, 100)


def test_arctan_plain_degrees(arctan_profile):
    assert len(arctan_profile.reports[0].gradient) == 10 + 9


def test_arctan_pessimism(arctan_profile):
    summary = arctan_profile.summary()
    assert summary["median"] >= 1e5
    assert summary["points"] >= 90
    for r in arctan_profile.reports:
        assert abs(r.residual) <= r.naive_bound


def test_first_order_model(arctan_profile):
    for r in arctan_profile.reports:
        assert abs(r.measured_delta - r.residual) <= (
            arctan_profile.second_order_constant * arctan_profile.coefficient_error_norm ** 2 * 1.0001
        )


def test_well_conditioned_profile(X, D):
    spec = ApproxSpec("exp", 0, 5)
    prof = pessimism_profile(spec.build(X).approximant, spec.build(D).approximant, 100)
    assert prof.summary()["median"] <= 1e3


def test_exact_marker(X):
    R = ApproxSpec("exp", 1, 1).build(X).approximant
    prof = pessimism_profile(R, R, 20)
    assert all(r.exact for r in prof.reports)
    assert prof.summary()["exact"]
