"""Pure-NumPy reference kernels.

Same call signatures and semantics as the compiled extension
(``manoma._kernels._fast``); selected automatically when the extension is
not built, or explicitly via ``MANOMA_KERNELS=python``.

All kernels work on the pairwise cosine expansion of the squared channel
magnitude.  For receive-path pairs k < l the caller supplies flat arrays

    amp[p]   = 2 * |M[k, l]|          (M = coupling matrix)
    da[p]    = a_k - a_l              (a_n = cos(elev_n) * sin(azim_n))
    db[p]    = b_k - b_l              (b_n = sin(elev_n))
    phase[p] = principal argument of M[k, l]

plus ``diag_sum = trace(M)`` and ``wavenumber = 2*pi/wavelength``, so that

    |h(x, y)|^2 = diag_sum + sum_p amp[p] * cos(u_p),
    u_p = wavenumber * (da[p]*x + db[p]*y) - phase[p].
"""

import math

import numpy as np

TERM_CONVERGED = 0
TERM_MAX_ITERATIONS = 1
TERM_STATIONARY = 2


def power_one(x, y, diag_sum, amp, da, db, phase, wavenumber):
    """Squared channel magnitude at a single position."""
    u = wavenumber * (da * x + db * y) - phase
    return float(diag_sum + np.dot(amp, np.cos(u)))


def power_many(xs, ys, diag_sum, amp, da, db, phase, wavenumber):
    """Squared channel magnitude at many positions; returns a float array."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    u = wavenumber * (np.multiply.outer(xs, da) + np.multiply.outer(ys, db)) - phase
    return diag_sum + np.cos(u) @ amp


def grad_one(x, y, amp, da, db, phase, wavenumber):
    """Gradient of the negated squared magnitude at a single position."""
    u = wavenumber * (da * x + db * y) - phase
    w = wavenumber * (amp * np.sin(u))
    return float(np.dot(w, da)), float(np.dot(w, db))


def sca_path(x0, y0, diag_sum, amp, da, db, phase, wavenumber,
             delta, half_side, eta, eps, max_iter, delta_floor):
    """Damped majorize-minimize descent on F = -|h|^2 over the square box.

    Each iteration moves toward the exact box-clamped minimizer of the
    isotropic quadratic surrogate with curvature ``delta``, blended with the
    previous iterate by the damping factor ``eta``.  Stops when the step norm
    falls to ``eps``, when ``max_iter`` iterations have run, or immediately
    when the curvature or gradient vanishes (stationary guard).

    Returns ``(xs, ys, fs, termination)`` where the arrays hold the full
    iterate path (including the start) and ``termination`` is one of the
    TERM_* codes.
    """
    xs = [float(x0)]
    ys = [float(y0)]
    fs = [-power_one(x0, y0, diag_sum, amp, da, db, phase, wavenumber)]
    xp, yp, fp = xs[0], ys[0], fs[0]
    term = TERM_MAX_ITERATIONS
    for _n in range(1, max_iter + 1):
        gx, gy = grad_one(xp, yp, amp, da, db, phase, wavenumber)
        if delta <= delta_floor or (gx == 0.0 and gy == 0.0):
            xs.append(xp)
            ys.append(yp)
            fs.append(fp)
            term = TERM_STATIONARY
            break
        xh = min(max(xp - gx / delta, -half_side), half_side)
        yh = min(max(yp - gy / delta, -half_side), half_side)
        xn = eta * xh + (1.0 - eta) * xp
        yn = eta * yh + (1.0 - eta) * yp
        # re-clamp: the convex combination can exceed the box by a few ulps
        xn = min(max(xn, -half_side), half_side)
        yn = min(max(yn, -half_side), half_side)
        fn = -power_one(xn, yn, diag_sum, amp, da, db, phase, wavenumber)
        xs.append(xn)
        ys.append(yn)
        fs.append(fn)
        if math.hypot(xn - xp, yn - yp) <= eps:
            term = TERM_CONVERGED
            break
        xp, yp, fp = xn, yn, fn
    return np.array(xs), np.array(ys), np.array(fs), term


def grid_scan(resolution, half_side, diag_sum, amp, da, db, phase, wavenumber):
    """Exhaustive power evaluation on a uniform grid over the box.

    Ties break toward the lowest linear index (x-major, then y).
    Returns ``(best_x, best_y, best_value)``.
    """
    coords = np.linspace(-half_side, half_side, resolution)
    x_all = np.repeat(coords, resolution)
    y_all = np.tile(coords, resolution)
    vals = power_many(x_all, y_all, diag_sum, amp, da, db, phase, wavenumber)
    i = int(np.argmax(vals))
    return float(x_all[i]), float(y_all[i]), float(vals[i])
