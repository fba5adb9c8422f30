"""Backend selection for the double-precision hot loops.

The compiled extension is used when it imports and the arithmetic is native
double; every other case (extended precision, no compiler, or
``PADECHEB_PURE_PYTHON=1``) runs the pure-Python kernels.
"""

import os

from padecheb import _pykernels
from padecheb._pykernels import SingularMatrixError  # noqa: F401
from padecheb.arith import is_double

_compiled = None
if not os.environ.get("PADECHEB_PURE_PYTHON"):
    try:
        from padecheb import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _impl(ctx):
    if _compiled is not None and is_double(ctx):
        return _compiled
    return _pykernels


def horner(ctx, coeffs, x):
    return _impl(ctx).horner(coeffs, x)


def clenshaw(ctx, coeffs, u, halved):
    return _impl(ctx).clenshaw(coeffs, u, halved)


def rational_on_grid(ctx, numer, denom, xs, basis, halved, parity, a, b):
    return _impl(ctx).rational_on_grid(numer, denom, xs, basis, halved, parity, a, b)


def lu_solve(ctx, rows, rhs):
    return _impl(ctx).lu_solve(rows, rhs)


def assemble_linear(ctx, us, ys, gs, m, n, weight):
    return _impl(ctx).assemble_linear(us, ys, gs, m, n, weight)


def chebyshev_coeffs(ctx, values, nodes, count, scale):
    return _impl(ctx).chebyshev_coeffs(values, nodes, count, scale)
