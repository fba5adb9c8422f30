# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled double-precision kernels.

Each routine mirrors the operation order of its counterpart in
``_pykernels`` so both backends produce bit-identical doubles.
"""

import numpy as np
cimport numpy as cnp

from padecheb._pykernels import SingularMatrixError

cnp.import_array()


cdef inline double _horner(const double[:] c, double x) noexcept nogil:
    cdef Py_ssize_t k = c.shape[0] - 1
    cdef double acc = c[k]
    k -= 1
    while k >= 0:
        acc = acc * x + c[k]
        k -= 1
    return acc


cdef inline double _clenshaw(const double[:] c, double u, bint halved) noexcept nogil:
    cdef double b1 = 0.0, b2 = 0.0, tmp
    cdef double two_u = u + u
    cdef Py_ssize_t k = c.shape[0] - 1
    while k >= 1:
        tmp = two_u * b1 - b2 + c[k]
        b2 = b1
        b1 = tmp
        k -= 1
    cdef double head = c[0] * 0.5 if halved else c[0]
    return u * b1 - b2 + head


def horner(coeffs, double x):
    cdef double[:] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    return _horner(c, x)


def clenshaw(coeffs, double u, bint halved):
    cdef double[:] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    return _clenshaw(c, u, halved)


def rational_on_grid(numer, denom, xs, int basis, bint halved, int parity,
                     double a, double b):
    cdef double[:] p = np.ascontiguousarray(numer, dtype=np.float64)
    cdef double[:] q = np.ascontiguousarray(denom, dtype=np.float64)
    cdef double[:] grid = np.ascontiguousarray(xs, dtype=np.float64)
    cdef Py_ssize_t n = grid.shape[0], i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[:] out = out_arr
    cdef bint unit = (a == -1.0 and b == 1.0)
    cdef double x, t, v, tt, pv, qv, r
    cdef Py_ssize_t bad = -1
    with nogil:
        for i in range(n):
            x = grid[i]
            if unit:
                t = x
            else:
                t = (x + x - a - b) / (b - a)
            if parity == 0:
                v = t
            else:
                tt = t * t
                if basis == 1:
                    v = tt + tt - 1.0
                else:
                    v = tt
            if basis == 1:
                pv = _clenshaw(p, v, halved)
                qv = _clenshaw(q, v, halved)
            else:
                pv = _horner(p, v)
                qv = _horner(q, v)
            if qv == 0.0:
                bad = i
                break
            r = pv / qv
            if parity == 2:
                r = t * r
            out[i] = r
    if bad >= 0:
        raise ZeroDivisionError(grid[bad])
    return out_arr.tolist()


def lu_solve(rows, rhs):
    cdef Py_ssize_t n = len(rows)
    m_arr = np.empty((n, n + 1), dtype=np.float64)
    m_arr[:, :n] = np.asarray(rows, dtype=np.float64).reshape(n, n)
    m_arr[:, n] = np.asarray(rhs, dtype=np.float64)
    cdef double[:, :] m = m_arr
    y_arr = np.empty(n, dtype=np.float64)
    cdef double[:] y = y_arr
    cdef Py_ssize_t i, j, k, p
    cdef double big, piv, f, s, tmp
    cdef Py_ssize_t singular = -1
    with nogil:
        for k in range(n):
            p = k
            big = m[k, k] if m[k, k] >= 0 else -m[k, k]
            for i in range(k + 1, n):
                tmp = m[i, k] if m[i, k] >= 0 else -m[i, k]
                if tmp > big:
                    big = tmp
                    p = i
            if big == 0.0:
                singular = k
                break
            if p != k:
                for j in range(n + 1):
                    tmp = m[k, j]
                    m[k, j] = m[p, j]
                    m[p, j] = tmp
            piv = m[k, k]
            for i in range(k + 1, n):
                f = m[i, k] / piv
                if f == 0.0:
                    continue
                for j in range(k, n + 1):
                    m[i, j] = m[i, j] - f * m[k, j]
        if singular < 0:
            for i in range(n - 1, -1, -1):
                s = m[i, n]
                for j in range(i + 1, n):
                    s = s - m[i, j] * y[j]
                y[i] = s / m[i, i]
    if singular >= 0:
        raise SingularMatrixError(f"zero pivot column {singular}")
    return y_arr.tolist()


def assemble_linear(us, ys, gs, int m, int n, double weight):
    cdef double[:] u_v = np.ascontiguousarray(us, dtype=np.float64)
    cdef double[:] y_v = np.ascontiguousarray(ys, dtype=np.float64)
    cdef double[:] g_v = np.ascontiguousarray(gs, dtype=np.float64)
    cdef Py_ssize_t rows_count = m + n + 1, cols = n + m + 2
    cdef Py_ssize_t top = m if m > n else n
    h_arr = np.zeros((rows_count, cols), dtype=np.float64)
    pw_arr = np.empty(top + 1, dtype=np.float64)
    cdef double[:, :] h = h_arr
    cdef double[:] powers = pw_arr
    cdef Py_ssize_t node, k, i, j
    cdef double u, y, g, t_prev, t_cur, tk, tkg, nxt
    with nogil:
        for node in range(u_v.shape[0]):
            u = u_v[node]
            y = y_v[node]
            g = g_v[node]
            powers[0] = 1.0
            for i in range(1, top + 1):
                powers[i] = powers[i - 1] * y
            t_prev = 1.0
            t_cur = u
            for k in range(rows_count):
                tk = t_prev if k == 0 else t_cur
                for i in range(n + 1):
                    h[k, i] = h[k, i] - powers[i] * tk
                tkg = tk * g
                for j in range(m + 1):
                    h[k, n + 1 + j] = h[k, n + 1 + j] + powers[j] * tkg
                if k >= 1:
                    nxt = 2.0 * u * t_cur - t_prev
                    t_prev = t_cur
                    t_cur = nxt
        for k in range(rows_count):
            for i in range(cols):
                h[k, i] = h[k, i] * weight
    return h_arr.tolist()


def chebyshev_coeffs(values, nodes, int count, double scale):
    cdef double[:] v_v = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[:] u_v = np.ascontiguousarray(nodes, dtype=np.float64)
    out_arr = np.zeros(count, dtype=np.float64)
    cdef double[:] out = out_arr
    cdef Py_ssize_t node, k
    cdef double u, v, t_prev, t_cur, tk, nxt
    with nogil:
        for node in range(u_v.shape[0]):
            u = u_v[node]
            v = v_v[node]
            t_prev = 1.0
            t_cur = u
            for k in range(count):
                tk = t_prev if k == 0 else t_cur
                out[k] = out[k] + v * tk
                if k >= 1:
                    nxt = 2.0 * u * t_cur - t_prev
                    t_prev = t_cur
                    t_cur = nxt
        for k in range(count):
            out[k] = out[k] * scale
    return out_arr.tolist()
