"""Pure-Python kernels.

These are duck-typed over the number type: they run on Python floats (the
fallback for the compiled double-precision kernels) and on mpmath numbers
(the extended-precision path). The operation order here is the contract the
compiled kernels reproduce bit for bit.
"""


class SingularMatrixError(ArithmeticError):
    """Raised when elimination meets an exactly zero pivot column."""


def horner(coeffs, x):
    acc = coeffs[-1]
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * x + coeffs[k]
    return acc


def clenshaw(coeffs, u, halved):
    b1 = 0.0 * u
    b2 = 0.0 * u
    two_u = u + u
    for k in range(len(coeffs) - 1, 0, -1):
        b1, b2 = two_u * b1 - b2 + coeffs[k], b1
    head = coeffs[0] * 0.5 if halved else coeffs[0]
    return u * b1 - b2 + head


def reduced_variable(x, parity, basis, a, b):
    """Map ``x`` on [a, b] to (t, v): the unit-interval variable and the
    variable the numerator/denominator polynomials are written in."""
    if a == -1 and b == 1:
        t = x
    else:
        t = (x + x - a - b) / (b - a)
    if parity == 0:
        return t, t
    tt = t * t
    if basis == 1:
        return t, tt + tt - 1
    return t, tt


def rational_value(numer, denom, x, basis, halved, parity, a, b):
    """Value of the approximant; returns (value, denominator value)."""
    t, v = reduced_variable(x, parity, basis, a, b)
    if basis == 1:
        p = clenshaw(numer, v, halved)
        q = clenshaw(denom, v, halved)
    else:
        p = horner(numer, v)
        q = horner(denom, v)
    if q == 0:
        return None, q
    r = p / q
    if parity == 2:
        r = t * r
    return r, q


def rational_on_grid(numer, denom, xs, basis, halved, parity, a, b):
    out = []
    for x in xs:
        r, q = rational_value(numer, denom, x, basis, halved, parity, a, b)
        if r is None:
            raise ZeroDivisionError(x)
        out.append(r)
    return out


def lu_solve(rows, rhs):
    """Gaussian elimination with partial (row) pivoting.

    ``rows`` is a list of row lists; neither argument is modified.
    """
    n = len(rows)
    m = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for k in range(n):
        p = k
        big = abs(m[k][k])
        for i in range(k + 1, n):
            if abs(m[i][k]) > big:
                big = abs(m[i][k])
                p = i
        if big == 0:
            raise SingularMatrixError(f"zero pivot column {k}")
        if p != k:
            m[k], m[p] = m[p], m[k]
        pivot_row = m[k]
        piv = pivot_row[k]
        for i in range(k + 1, n):
            row = m[i]
            f = row[k] / piv
            if f == 0:
                continue
            for j in range(k, n + 1):
                row[j] = row[j] - f * pivot_row[j]
    y = [None] * n
    for i in range(n - 1, -1, -1):
        row = m[i]
        s = row[n]
        for j in range(i + 1, n):
            s = s - row[j] * y[j]
        y[i] = s / row[i]
    return y


def assemble_linear(us, ys, gs, m, n, weight):
    """Gauss-Chebyshev assembly of the homogeneous linear system.

    Row k, k = 0..m+n, holds the integrals of -y^i T_k (numerator columns)
    and y^j T_k g (denominator columns), where ``ys`` are the values of the
    basis variable and ``gs`` the sampled target at the nodes ``us``.
    """
    rows_count = m + n + 1
    cols = n + m + 2
    zero = 0.0 * weight
    h = [[zero] * cols for _ in range(rows_count)]
    top = max(m, n)
    for node in range(len(us)):
        u = us[node]
        y = ys[node]
        g = gs[node]
        powers = [1.0 + zero]
        for _ in range(top):
            powers.append(powers[-1] * y)
        t_prev = 1.0 + zero
        t_cur = u
        for k in range(rows_count):
            tk = t_prev if k == 0 else t_cur
            row = h[k]
            for i in range(n + 1):
                row[i] = row[i] - powers[i] * tk
            tkg = tk * g
            for j in range(m + 1):
                row[n + 1 + j] = row[n + 1 + j] + powers[j] * tkg
            if k >= 1:
                t_prev, t_cur = t_cur, 2 * u * t_cur - t_prev
    for row in h:
        for c in range(cols):
            row[c] = row[c] * weight
    return h


def chebyshev_coeffs(values, nodes, count, scale):
    """c_k = scale * sum_l values[l] T_k(nodes[l]) for k < count."""
    zero = 0.0 * scale
    out = [zero] * count
    for node in range(len(nodes)):
        u = nodes[node]
        v = values[node]
        t_prev = 1.0 + zero
        t_cur = u
        for k in range(count):
            tk = t_prev if k == 0 else t_cur
            out[k] = out[k] + v * tk
            if k >= 1:
                t_prev, t_cur = t_cur, 2 * u * t_cur - t_prev
    return [c * scale for c in out]
