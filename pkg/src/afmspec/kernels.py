"""Hot numeric kernels, each with a numba path and a pure-numpy path.

The loop implementations are written in the numba-compatible subset of
Python; when numba is active they are compiled with ``njit``.  The numpy
implementations vectorise over the independent axis instead (energies or
couplings for Numerov, matrix entries for the kinetic matrix, arguments for
Lambert W).  ``afmspec._backend`` decides which one the public names bind to.
"""
import math

import numpy as np

from ._backend import HAVE_NUMBA

if HAVE_NUMBA:
    import numba

INV_E = math.exp(-1.0)

# Freeze a Numerov column once dt^2 F exceeds this inside a growing tail.
_FORBIDDEN_STOP = 1.0
_RESCALE = 1e150


# --------------------------------------------------------------------------
# Lambert W, real branches
# --------------------------------------------------------------------------

def _lambertw_loop(z, lower, tol, max_iter):
    # Branch point.
    q = z + INV_E
    if q <= 0.0:
        return -1.0
    if z == 0.0 and not lower:
        return 0.0
    if not lower:
        if q < 0.3:
            p = math.sqrt(2.0 * math.e * q)
            w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
        elif z < 3.0:
            w = math.log1p(z) * (1.0 - 0.3 * math.log1p(z) / (1.0 + math.log1p(z)))
        else:
            l1 = math.log(z)
            l2 = math.log(l1)
            w = l1 - l2 + l2 / l1
    else:
        if q < 0.25:
            p = -math.sqrt(2.0 * math.e * q)
            w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
        else:
            l1 = math.log(-z)
            l2 = math.log(-l1)
            w = l1 - l2 + l2 / l1
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        dw = f / denom
        w -= dw
        if abs(dw) <= tol * (1.0 + abs(w)):
            break
    if lower and w > -1.0:
        w = -1.0
    if not lower and w < -1.0:
        w = -1.0
    return w


def _lambertw_array_loop(z, lower, tol, max_iter):
    out = np.empty(z.shape[0])
    for i in range(z.shape[0]):
        out[i] = lambertw_scalar(z[i], lower, tol, max_iter)
    return out


def _lambertw_array_numpy(z, lower, tol, max_iter):
    z = np.asarray(z, dtype=float)
    q = z + INV_E
    with np.errstate(invalid="ignore", divide="ignore"):
        p = np.sqrt(2.0 * math.e * np.maximum(q, 0.0))
        if lower:
            p = -p
            series = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
            l1 = np.log(-np.minimum(z, -1e-300))
            l2 = np.log(-l1)
            asym = l1 - l2 + l2 / l1
            w = np.where(q < 0.25, series, asym)
        else:
            series = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
            lz = np.log1p(np.maximum(z, -0.9))
            mid = lz * (1.0 - 0.3 * lz / (1.0 + lz))
            l1 = np.log(np.maximum(z, 3.0))
            l2 = np.log(l1)
            asym = l1 - l2 + l2 / l1
            w = np.where(q < 0.3, series, np.where(z < 3.0, mid, asym))
        active = q > 0.0
        for _ in range(max_iter):
            if not active.any():
                break
            ew = np.exp(w)
            f = w * ew - z
            wp1 = w + 1.0
            denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
            ok = active & (wp1 != 0.0) & (denom != 0.0) & np.isfinite(denom)
            dw = np.where(ok, f / np.where(ok, denom, 1.0), 0.0)
            w = w - dw
            active = ok & (np.abs(dw) > tol * (1.0 + np.abs(w)))
    w = np.where(q <= 0.0, -1.0, w)
    if lower:
        w = np.minimum(w, -1.0)
    else:
        w = np.where(z == 0.0, 0.0, np.maximum(w, -1.0))
    return w


# --------------------------------------------------------------------------
# Numerov sweep on a logarithmic grid
# --------------------------------------------------------------------------
#
# With x = exp(t) and u(x) = exp(t/2) phi(t) the radial equation
#   -u'' + [l(l+1)/x^2 - g x^lam e^-x] u = eps u
# becomes phi'' = F phi with F = -g P(t) - eps X2(t) + (l+1/2)^2,
# P = x^(lam+2) e^-x and X2 = x^2.  Each column j integrates one (g_j, eps_j).

def _numerov_sweep_loop(pot, x2, k2, dt, gs, es, phi0, phi1):
    m = pot.shape[0]
    ncol = gs.shape[0]
    h12 = dt * dt / 12.0
    nodes = np.zeros(ncol, dtype=np.int64)
    tail = np.empty((ncol, 2))
    for j in range(ncol):
        g = gs[j]
        e = es[j]
        f0 = -g * pot[0] - e * x2[0] + k2
        f1 = -g * pot[1] - e * x2[1] + k2
        w0 = 1.0 - h12 * f0
        w1 = 1.0 - h12 * f1
        p0 = phi0
        p1 = phi1
        cnt = 0
        for i in range(1, m - 1):
            f2 = -g * pot[i + 1] - e * x2[i + 1] + k2
            w2 = 1.0 - h12 * f2
            p2 = ((12.0 - 10.0 * w1) * p1 - w0 * p0) / w2
            if p2 == 0.0 or (p2 < 0.0) != (p1 < 0.0):
                cnt += 1
            p0 = p1
            p1 = p2
            w0 = w1
            w1 = w2
            if abs(p1) > _RESCALE:
                p0 /= _RESCALE
                p1 /= _RESCALE
            if 12.0 * h12 * f2 > _FORBIDDEN_STOP and p1 * (p1 - p0) > 0.0:
                break
        nodes[j] = cnt
        tail[j, 0] = p0
        tail[j, 1] = p1
    return nodes, tail


def _numerov_sweep_numpy(pot, x2, k2, dt, gs, es, phi0, phi1, block=32):
    # Same recurrence as the loop kernel, advanced in blocks of ``block``
    # steps; node counting, freezing and rescaling are applied per block.
    gs = np.asarray(gs, dtype=float)
    es = np.asarray(es, dtype=float)
    m = pot.shape[0]
    ncol = gs.shape[0]
    h12 = dt * dt / 12.0
    f = k2 - np.outer(pot, gs) - np.outer(x2, es)
    w = 1.0 - h12 * f
    a = 12.0 - 10.0 * w
    rw = 1.0 / w
    forbidden = 12.0 * h12 * f > _FORBIDDEN_STOP
    nodes = np.zeros(ncol, dtype=np.int64)
    p0 = np.full(ncol, float(phi0))
    p1 = np.full(ncol, float(phi1))
    tail = np.empty((ncol, 2))
    active = np.ones(ncol, dtype=bool)
    i = 1
    with np.errstate(over="ignore", invalid="ignore"):
        while i < m - 1 and active.any():
            nb = min(block, m - 1 - i)
            p = np.empty((nb + 2, ncol))
            p[0] = p0
            p[1] = p1
            for k in range(nb):
                ii = i + k
                p[k + 2] = (a[ii] * p[k + 1] - w[ii - 1] * p[k]) * rw[ii + 1]
            new = p[2:]
            prev = p[1:-1]
            crossed = (new == 0.0) | ((new < 0.0) != (prev < 0.0))
            freeze = forbidden[i + 1:i + 1 + nb] & (new * (new - prev) > 0.0)
            hit = freeze.any(axis=0) & active
            first = np.where(hit, freeze.argmax(axis=0), nb)
            counted = np.arange(nb)[:, None] <= first[None, :]
            nodes += np.where(active, (crossed & counted).sum(axis=0), 0)
            if hit.any():
                cols = np.nonzero(hit)[0]
                tail[cols, 0] = p[first[cols] + 1, cols]
                tail[cols, 1] = p[first[cols] + 2, cols]
                active &= ~hit
            p0 = np.where(active, p[nb], p0)
            p1 = np.where(active, p[nb + 1], p1)
            scale = np.maximum(np.abs(p0), np.abs(p1))
            big = active & (scale > _RESCALE)
            if big.any():
                p0 = np.where(big, p0 / scale, p0)
                p1 = np.where(big, p1 / scale, p1)
            i += nb
    tail[active, 0] = p0[active]
    tail[active, 1] = p1[active]
    return nodes, tail


# --------------------------------------------------------------------------
# Kinetic matrix of the regularised Lagrange-Laguerre mesh
# --------------------------------------------------------------------------

def _laguerre_kinetic_loop(x):
    n = x.shape[0]
    t = np.empty((n, n))
    for i in range(n):
        xi = x[i]
        t[i, i] = (4.0 + (4.0 * n + 2.0) * xi - xi * xi) / (12.0 * xi * xi)
        for j in range(i + 1, n):
            xj = x[j]
            d = xi - xj
            v = (xi + xj) / (math.sqrt(xi * xj) * d * d)
            if (i - j) % 2 != 0:
                v = -v
            t[i, j] = v
            t[j, i] = v
    return t


def _laguerre_kinetic_numpy(x):
    n = x.shape[0]
    idx = np.arange(n)
    xi = x[:, None]
    xj = x[None, :]
    sign = np.where((idx[:, None] - idx[None, :]) % 2 == 0, 1.0, -1.0)
    d = xi - xj
    np.fill_diagonal(d, 1.0)
    t = sign * (xi + xj) / (np.sqrt(xi * xj) * d * d)
    t[idx, idx] = (4.0 + (4.0 * n + 2.0) * x - x * x) / (12.0 * x * x)
    return t


KERNELS = {
    "numpy": {
        "lambertw_array": _lambertw_array_numpy,
        "numerov_sweep": _numerov_sweep_numpy,
        "laguerre_kinetic": _laguerre_kinetic_numpy,
    },
}

if HAVE_NUMBA:
    lambertw_scalar = numba.njit(cache=True)(_lambertw_loop)
    KERNELS["numba"] = {
        "lambertw_array": numba.njit(cache=True)(_lambertw_array_loop),
        "numerov_sweep": numba.njit(cache=True)(_numerov_sweep_loop),
        "laguerre_kinetic": numba.njit(cache=True)(_laguerre_kinetic_loop),
    }
    BACKEND = "numba"
else:
    lambertw_scalar = _lambertw_loop
    BACKEND = "numpy"

lambertw_array = KERNELS[BACKEND]["lambertw_array"]
numerov_sweep = KERNELS[BACKEND]["numerov_sweep"]
laguerre_kinetic = KERNELS[BACKEND]["laguerre_kinetic"]

# Columns integrated per Numerov call during bisection: numba walks one
# column cheaply, numpy amortises the Python-level grid loop over a batch.
SWEEP_BATCH = 1 if BACKEND == "numba" else 64
