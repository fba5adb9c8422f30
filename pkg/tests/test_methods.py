import pytest

from padecheb.functions import lookup
from padecheb.methods import ApproxSpec, Method, build
from padecheb.rational import Basis, Parity


def test_name_resolution_and_defaults():
    spec = ApproxSpec("sqrt", 2, 2)
    assert spec.function is lookup("sqrt")
    assert spec.method is Method.LINEAR and spec.parity is Parity.GENERAL
    assert tuple(spec.segment) == tuple(lookup("sqrt").segment)
    assert spec.node_count == 8 * 5 + 64


@pytest.mark.parametrize("kwargs", [dict(m=-1, n=0), dict(m=1, n=1, taylor_N=10), dict(m=1, n=1, method="pade")])
def test_rejects_bad_specs(kwargs):
    with pytest.raises(ValueError):
        ApproxSpec("exp", **kwargs)


@pytest.mark.parametrize("method, basis", [("linear", Basis.MONOMIAL), ("cross", Basis.CHEBYSHEV),
                                           ("nonlinear", Basis.CHEBYSHEV)])
def test_every_method_builds(X, method, basis):
    c = build(ApproxSpec("exp", 2, 2, method=method), X)
    assert c.approximant.basis is basis
    assert c.approximant.m == 2 and c.approximant.n == 2
    assert c.ctx is X
    if method == "nonlinear":
        assert c.extra["gamma"][0] == 1


def test_series_routes_agree(X):
    spec = ApproxSpec("exp", 2, 2, method="cross")
    quad = spec.series(X)
    taylor = spec.with_(taylor_N=60).series(X)
    assert len(quad.coeffs) == len(taylor.coeffs) == 7
    assert max(abs(p - q) for p, q in zip(quad.coeffs, taylor.coeffs)) < 1e-60


def test_with_keeps_other_fields():
    spec = ApproxSpec("cos_pi4", 2, 3, parity="even")
    other = spec.with_(normalization="BM")
    assert other.parity is Parity.EVEN and other.m == 2 and other.normalization == "BM"


def test_condition_value(X):
    assert build(ApproxSpec("exp", 1, 1), X).condition_value() > 1
