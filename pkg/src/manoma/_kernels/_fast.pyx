# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the pairwise cosine expansion of |h|^2.

Mirrors ``manoma._kernels._ref`` (same signatures, same semantics); see that
module for the meaning of the (diag_sum, amp, da, db, phase, wavenumber)
term arrays.
"""

import numpy as np

from libc.math cimport cos, sin, hypot

cdef enum:
    _TERM_CONVERGED = 0
    _TERM_MAX_ITERATIONS = 1
    _TERM_STATIONARY = 2

TERM_CONVERGED = _TERM_CONVERGED
TERM_MAX_ITERATIONS = _TERM_MAX_ITERATIONS
TERM_STATIONARY = _TERM_STATIONARY


cdef double _power(double x, double y, double diag_sum,
                   double[::1] amp, double[::1] da, double[::1] db,
                   double[::1] phase, double wavenumber) noexcept nogil:
    cdef Py_ssize_t p
    cdef double acc = diag_sum
    for p in range(amp.shape[0]):
        acc += amp[p] * cos(wavenumber * (da[p] * x + db[p] * y) - phase[p])
    return acc


cdef void _grad(double x, double y,
                double[::1] amp, double[::1] da, double[::1] db,
                double[::1] phase, double wavenumber,
                double* gx, double* gy) noexcept nogil:
    cdef Py_ssize_t p
    cdef double s, w
    cdef double ax = 0.0, ay = 0.0
    for p in range(amp.shape[0]):
        s = sin(wavenumber * (da[p] * x + db[p] * y) - phase[p])
        w = wavenumber * amp[p] * s
        ax += w * da[p]
        ay += w * db[p]
    gx[0] = ax
    gy[0] = ay


cdef inline double _clamp(double v, double lo, double hi) noexcept nogil:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v


def power_one(double x, double y, double diag_sum,
              double[::1] amp, double[::1] da, double[::1] db,
              double[::1] phase, double wavenumber):
    """Squared channel magnitude at a single position."""
    return _power(x, y, diag_sum, amp, da, db, phase, wavenumber)


def power_many(xs, ys, double diag_sum,
               double[::1] amp, double[::1] da, double[::1] db,
               double[::1] phase, double wavenumber):
    """Squared channel magnitude at many positions; returns a float array."""
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(ys, dtype=np.float64)
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(xv.shape[0]):
            ov[i] = _power(xv[i], yv[i], diag_sum, amp, da, db, phase, wavenumber)
    return out


def grad_one(double x, double y,
             double[::1] amp, double[::1] da, double[::1] db,
             double[::1] phase, double wavenumber):
    """Gradient of the negated squared magnitude at a single position."""
    cdef double gx, gy
    _grad(x, y, amp, da, db, phase, wavenumber, &gx, &gy)
    return gx, gy


def sca_path(double x0, double y0, double diag_sum,
             double[::1] amp, double[::1] da, double[::1] db,
             double[::1] phase, double wavenumber,
             double delta, double half_side, double eta, double eps,
             Py_ssize_t max_iter, double delta_floor):
    """Damped majorize-minimize descent on F = -|h|^2 over the square box.

    Same iteration rule and stopping logic as the reference backend; returns
    ``(xs, ys, fs, termination)`` with the full iterate path.
    """
    xs_arr = np.empty(max_iter + 2, dtype=np.float64)
    ys_arr = np.empty(max_iter + 2, dtype=np.float64)
    fs_arr = np.empty(max_iter + 2, dtype=np.float64)
    cdef double[::1] xs = xs_arr
    cdef double[::1] ys = ys_arr
    cdef double[::1] fs = fs_arr

    cdef double xp = x0, yp = y0
    cdef double fp, gx, gy, xh, yh, xn, yn, fn
    cdef Py_ssize_t n = 0, count = 1
    cdef int term = _TERM_MAX_ITERATIONS

    fp = -_power(xp, yp, diag_sum, amp, da, db, phase, wavenumber)
    xs[0] = xp
    ys[0] = yp
    fs[0] = fp

    with nogil:
        for n in range(1, max_iter + 1):
            _grad(xp, yp, amp, da, db, phase, wavenumber, &gx, &gy)
            if delta <= delta_floor or (gx == 0.0 and gy == 0.0):
                xs[count] = xp
                ys[count] = yp
                fs[count] = fp
                count += 1
                term = _TERM_STATIONARY
                break
            xh = _clamp(xp - gx / delta, -half_side, half_side)
            yh = _clamp(yp - gy / delta, -half_side, half_side)
            xn = eta * xh + (1.0 - eta) * xp
            yn = eta * yh + (1.0 - eta) * yp
            # re-clamp: the convex combination can exceed the box by a few ulps
            xn = _clamp(xn, -half_side, half_side)
            yn = _clamp(yn, -half_side, half_side)
            fn = -_power(xn, yn, diag_sum, amp, da, db, phase, wavenumber)
            xs[count] = xn
            ys[count] = yn
            fs[count] = fn
            count += 1
            if hypot(xn - xp, yn - yp) <= eps:
                term = _TERM_CONVERGED
                break
            xp = xn
            yp = yn
            fp = fn

    return xs_arr[:count].copy(), ys_arr[:count].copy(), fs_arr[:count].copy(), term


def grid_scan(Py_ssize_t resolution, double half_side, double diag_sum,
              double[::1] amp, double[::1] da, double[::1] db,
              double[::1] phase, double wavenumber):
    """Exhaustive power evaluation on a uniform grid over the box.

    Ties break toward the lowest linear index (x-major, then y).
    Returns ``(best_x, best_y, best_value)``.
    """
    cdef double[::1] coords = np.ascontiguousarray(
        np.linspace(-half_side, half_side, resolution), dtype=np.float64)
    cdef Py_ssize_t ix, iy
    cdef double v
    cdef double best = -1.0
    cdef Py_ssize_t bx = 0, by = 0
    cdef bint first = True
    with nogil:
        for ix in range(resolution):
            for iy in range(resolution):
                v = _power(coords[ix], coords[iy], diag_sum,
                           amp, da, db, phase, wavenumber)
                if first or v > best:
                    best = v
                    bx = ix
                    by = iy
                    first = False
    return float(coords[bx]), float(coords[by]), best
