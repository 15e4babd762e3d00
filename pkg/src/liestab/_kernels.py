"""Fixed-step RK4 kernels for the quadratic Euler vector field.

The right-hand side is encoded as a quadratic tensor Q with
rhs_j(y) = sum_{i,l} y_i y_l Q[i,l,j]; gram handling is folded into Q by the
caller.  A numba-compiled path is used when available; a vectorized numpy
fallback keeps the package importable without it.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn
        if args and callable(args[0]):
            return args[0]
        return deco


@njit(cache=True)
def _rk4_record_nb(Q, y0, h, steps, out, cap_sq):  # pragma: no cover - compiled
    n = y0.shape[0]
    y = y0.copy()
    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    tmp = np.empty(n)
    for p in range(n):
        out[0, p] = y[p]
    for step in range(steps):
        for j in range(n):
            s = 0.0
            for i in range(n):
                for l in range(n):
                    s += y[i] * y[l] * Q[i, l, j]
            k1[j] = s
        for p in range(n):
            tmp[p] = y[p] + 0.5 * h * k1[p]
        for j in range(n):
            s = 0.0
            for i in range(n):
                for l in range(n):
                    s += tmp[i] * tmp[l] * Q[i, l, j]
            k2[j] = s
        for p in range(n):
            tmp[p] = y[p] + 0.5 * h * k2[p]
        for j in range(n):
            s = 0.0
            for i in range(n):
                for l in range(n):
                    s += tmp[i] * tmp[l] * Q[i, l, j]
            k3[j] = s
        for p in range(n):
            tmp[p] = y[p] + h * k3[p]
        for j in range(n):
            s = 0.0
            for i in range(n):
                for l in range(n):
                    s += tmp[i] * tmp[l] * Q[i, l, j]
            k4[j] = s
        nrm = 0.0
        for p in range(n):
            y[p] = y[p] + (h / 6.0) * (k1[p] + 2.0 * k2[p] + 2.0 * k3[p] + k4[p])
            nrm += y[p] * y[p]
        for p in range(n):
            out[step + 1, p] = y[p]
        if not np.isfinite(nrm) or nrm > cap_sq:
            return step + 1
    return steps


@njit(cache=True)
def _rk4_maxdev_nb(Q, Y, h, steps, xref, dev, stop_thr, cap_sq):  # pragma: no cover
    b, n = Y.shape
    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    tmp = np.empty(n)
    for r in range(b):
        d = 0.0
        for p in range(n):
            d += (Y[r, p] - xref[p]) ** 2
        dev[r] = np.sqrt(d)
    for step in range(steps):
        breached = False
        for r in range(b):
            for j in range(n):
                s = 0.0
                for i in range(n):
                    for l in range(n):
                        s += Y[r, i] * Y[r, l] * Q[i, l, j]
                k1[j] = s
            for p in range(n):
                tmp[p] = Y[r, p] + 0.5 * h * k1[p]
            for j in range(n):
                s = 0.0
                for i in range(n):
                    for l in range(n):
                        s += tmp[i] * tmp[l] * Q[i, l, j]
                k2[j] = s
            for p in range(n):
                tmp[p] = Y[r, p] + 0.5 * h * k2[p]
            for j in range(n):
                s = 0.0
                for i in range(n):
                    for l in range(n):
                        s += tmp[i] * tmp[l] * Q[i, l, j]
                k3[j] = s
            for p in range(n):
                tmp[p] = Y[r, p] + h * k3[p]
            for j in range(n):
                s = 0.0
                for i in range(n):
                    for l in range(n):
                        s += tmp[i] * tmp[l] * Q[i, l, j]
                k4[j] = s
            d = 0.0
            nrm = 0.0
            for p in range(n):
                Y[r, p] = Y[r, p] + (h / 6.0) * (k1[p] + 2.0 * k2[p] + 2.0 * k3[p] + k4[p])
                d += (Y[r, p] - xref[p]) ** 2
                nrm += Y[r, p] * Y[r, p]
            d = np.sqrt(d)
            if d > dev[r]:
                dev[r] = d
            if not np.isfinite(nrm) or nrm > cap_sq:
                return step + 1
            if stop_thr > 0.0 and dev[r] >= stop_thr:
                breached = True
        if breached:
            return step + 1
    return steps


def _rhs_np(Q, Y):
    return np.einsum("...i,...l,ilj->...j", Y, Y, Q)


def _rk4_record_np(Q, y0, h, steps, out, cap_sq):
    y = y0.copy()
    out[0] = y
    for step in range(steps):
        k1 = _rhs_np(Q, y)
        k2 = _rhs_np(Q, y + 0.5 * h * k1)
        k3 = _rhs_np(Q, y + 0.5 * h * k2)
        k4 = _rhs_np(Q, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[step + 1] = y
        nrm = float(y @ y)
        if not np.isfinite(nrm) or nrm > cap_sq:
            return step + 1
    return steps


def _rk4_maxdev_np(Q, Y, h, steps, xref, dev, stop_thr, cap_sq):
    dev[:] = np.linalg.norm(Y - xref, axis=1)
    for step in range(steps):
        k1 = _rhs_np(Q, Y)
        k2 = _rhs_np(Q, Y + 0.5 * h * k1)
        k3 = _rhs_np(Q, Y + 0.5 * h * k2)
        k4 = _rhs_np(Q, Y + h * k3)
        Y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        d = np.linalg.norm(Y - xref, axis=1)
        np.maximum(dev, d, out=dev)
        nrm = float(np.max(np.einsum("bi,bi->b", Y, Y)))
        if not np.isfinite(nrm) or nrm > cap_sq:
            return step + 1
        if stop_thr > 0.0 and float(np.max(dev)) >= stop_thr:
            return step + 1
    return steps


def rk4_record(Q, y0, h, steps, cap_sq):
    """Integrate one trajectory, recording every state.

    Returns (states, steps_done); steps_done < steps signals an abort
    (overflow or non-finite state)."""
    out = np.empty((steps + 1, y0.shape[0]))
    kern = _rk4_record_nb if _HAVE_NUMBA else _rk4_record_np
    done = kern(np.ascontiguousarray(Q), np.ascontiguousarray(y0, dtype=float),
                float(h), int(steps), out, float(cap_sq))
    return out[: done + 1], int(done)


def rk4_maxdev(Q, Y0, h, steps, xref, stop_thr, cap_sq):
    """Integrate a batch, tracking per-row max deviation from xref.

    Stops early once any row's deviation reaches stop_thr (if > 0).
    Returns (dev, steps_done)."""
    Y = np.ascontiguousarray(Y0, dtype=float).copy()
    dev = np.empty(Y.shape[0])
    kern = _rk4_maxdev_nb if _HAVE_NUMBA else _rk4_maxdev_np
    done = kern(np.ascontiguousarray(Q), Y, float(h), int(steps),
                np.ascontiguousarray(xref, dtype=float), dev,
                float(stop_thr), float(cap_sq))
    return dev, int(done)
