"""Hot numeric kernels with a numba path and a pure-numpy path.

Both variants of every kernel are importable (``*_numba`` / ``*_numpy``) so the
test-suite and ``benchmarks/bench_kernels.py`` can compare them; the unsuffixed
names dispatch according to :data:`subordkit._accel.USE_NUMBA`.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit

_CHUNK = 1 << 22  # elements per temporary block in the numpy fallbacks


# --------------------------------------------------------------------------
# Batched Horner evaluation: rows of coefficients at a shared set of points.

@njit
def horner_numba(coeffs, z):
    n_rows, n_coef = coeffs.shape
    out = np.empty((n_rows, z.shape[0]), dtype=np.complex128)
    for i in range(n_rows):
        for j in range(z.shape[0]):
            zj = z[j]
            acc = coeffs[i, n_coef - 1]
            for c in range(n_coef - 2, -1, -1):
                acc = acc * zj + coeffs[i, c]
            out[i, j] = acc
    return out


def horner_numpy(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    acc = np.repeat(coeffs[:, -1:], z.shape[0], axis=1)
    for c in range(coeffs.shape[1] - 2, -1, -1):
        acc = acc * z + coeffs[:, c : c + 1]
    return acc


# --------------------------------------------------------------------------
# Integer winding number of a closed polyline (crossing rule).  Edges are
# bucketed into horizontal bands so each probe only visits edges whose
# y-range meets its band.

def edge_bands(bx, by, n_bands=None):
    """CSR table of edge indices per horizontal band: ``(y_lo, inv_height, starts, edges)``."""
    bx = np.asarray(bx, dtype=np.float64)
    by = np.asarray(by, dtype=np.float64)
    n = by.shape[0]
    if n_bands is None:
        n_bands = max(1, n // 16)
    y_next = np.roll(by, -1)
    lo_y, hi_y = float(by.min()), float(by.max())
    span = hi_y - lo_y
    inv_h = n_bands / span if span > 0 else 0.0
    first = np.clip(((np.minimum(by, y_next) - lo_y) * inv_h).astype(np.int64), 0, n_bands - 1)
    last = np.clip(((np.maximum(by, y_next) - lo_y) * inv_h).astype(np.int64), 0, n_bands - 1)
    counts = last - first + 1
    edge_ids = np.repeat(np.arange(n, dtype=np.int64), counts)
    offsets = np.arange(edge_ids.shape[0]) - np.repeat(np.cumsum(counts) - counts, counts)
    band_ids = np.repeat(first, counts) + offsets
    order = np.argsort(band_ids, kind="stable")
    starts = np.zeros(n_bands + 1, dtype=np.int64)
    np.cumsum(np.bincount(band_ids, minlength=n_bands), out=starts[1:])
    return lo_y, inv_h, starts, np.ascontiguousarray(edge_ids[order])


@njit
def _crossing_banded_kernel(bx, by, px, py, lo_y, inv_h, starts, edges):
    n = bx.shape[0]
    n_bands = starts.shape[0] - 1
    out = np.zeros(px.shape[0], dtype=np.int64)
    for j in range(px.shape[0]):
        x = px[j]
        y = py[j]
        pos = (y - lo_y) * inv_h
        if not (pos >= 0.0 and pos <= n_bands):
            continue
        band = int(pos)
        if band >= n_bands:
            band = n_bands - 1
        w = 0
        for e in range(starts[band], starts[band + 1]):
            k = edges[e]
            k1 = k + 1 if k + 1 < n else 0
            x0 = bx[k]
            y0 = by[k]
            x1 = bx[k1]
            y1 = by[k1]
            if y0 <= y:
                if y1 > y:
                    if (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0) > 0.0:
                        w += 1
            elif y1 <= y:
                if (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0) < 0.0:
                    w -= 1
        out[j] = w
    return out


def crossing_winding_numba(bx, by, px, py):
    bx = np.ascontiguousarray(bx, dtype=np.float64)
    by = np.ascontiguousarray(by, dtype=np.float64)
    lo_y, inv_h, starts, edges = edge_bands(bx, by)
    return _crossing_banded_kernel(bx, by, np.ascontiguousarray(px, dtype=np.float64),
                                   np.ascontiguousarray(py, dtype=np.float64),
                                   lo_y, inv_h, starts, edges)


def _crossing_dense(x0, y0, x1, y1, px, py):
    out = np.zeros(px.shape[0], dtype=np.int64)
    step = max(1, _CHUNK // max(1, x0.shape[0]))
    for lo in range(0, px.shape[0], step):
        x = px[lo : lo + step, None]
        y = py[lo : lo + step, None]
        side = (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0)
        up = (y0 <= y) & (y1 > y) & (side > 0.0)
        down = (y0 > y) & (y1 <= y) & (side < 0.0)
        out[lo : lo + step] = up.sum(axis=1) - down.sum(axis=1)
    return out


def crossing_winding_numpy(bx, by, px, py):
    bx = np.asarray(bx, dtype=np.float64)
    by = np.asarray(by, dtype=np.float64)
    px = np.asarray(px, dtype=np.float64)
    py = np.asarray(py, dtype=np.float64)
    lo_y, inv_h, starts, edges = edge_bands(bx, by)
    n_bands = starts.shape[0] - 1
    x1_all, y1_all = np.roll(bx, -1), np.roll(by, -1)
    out = np.zeros(px.shape[0], dtype=np.int64)
    pos = (py - lo_y) * inv_h
    inside = (pos >= 0.0) & (pos <= n_bands)
    band = np.minimum(pos[inside].astype(np.int64), n_bands - 1)
    idx = np.flatnonzero(inside)
    order = np.argsort(band, kind="stable")
    idx, band = idx[order], band[order]
    cuts = np.searchsorted(band, np.arange(n_bands + 1))
    for b in range(n_bands):
        sel = idx[cuts[b] : cuts[b + 1]]
        if sel.size == 0:
            continue
        e = edges[starts[b] : starts[b + 1]]
        out[sel] = _crossing_dense(bx[e], by[e], x1_all[e], y1_all[e], px[sel], py[sel])
    return out


def crossing_winding_brute(bx, by, px, py):
    """Unbanded reference: every probe against every edge."""
    bx = np.asarray(bx, dtype=np.float64)
    by = np.asarray(by, dtype=np.float64)
    return _crossing_dense(bx, by, np.roll(bx, -1), np.roll(by, -1),
                           np.asarray(px, dtype=np.float64), np.asarray(py, dtype=np.float64))


# --------------------------------------------------------------------------
# Accumulated argument change of (boundary - w) around the closed polyline,
# plus the distance from w to the nearest boundary sample.

@njit
def argument_change_numba(bx, by, px, py):
    n = bx.shape[0]
    total = np.zeros(px.shape[0], dtype=np.float64)
    nearest = np.empty(px.shape[0], dtype=np.float64)
    for j in range(px.shape[0]):
        acc = 0.0
        best = np.inf
        for k in range(n):
            k1 = k + 1 if k + 1 < n else 0
            ax = bx[k] - px[j]
            ay = by[k] - py[j]
            bxx = bx[k1] - px[j]
            byy = by[k1] - py[j]
            acc += math.atan2(ax * byy - ay * bxx, ax * bxx + ay * byy)
            d = math.hypot(ax, ay)
            if d < best:
                best = d
        total[j] = acc
        nearest[j] = best
    return total, nearest


def argument_change_numpy(bx, by, px, py):
    b = np.asarray(bx, dtype=np.float64) + 1j * np.asarray(by, dtype=np.float64)
    p = np.asarray(px, dtype=np.float64) + 1j * np.asarray(py, dtype=np.float64)
    total = np.empty(p.shape[0])
    nearest = np.empty(p.shape[0])
    b_next = np.roll(b, -1)
    step = max(1, _CHUNK // max(1, b.shape[0]))
    for lo in range(0, p.shape[0], step):
        d0 = b[None, :] - p[lo : lo + step, None]
        d1 = b_next[None, :] - p[lo : lo + step, None]
        total[lo : lo + step] = np.angle(d1 * np.conj(d0)).sum(axis=1)
        nearest[lo : lo + step] = np.abs(d0).min(axis=1)
    return total, nearest


if USE_NUMBA:
    horner = horner_numba
    crossing_winding = crossing_winding_numba
    argument_change = argument_change_numba
else:
    horner = horner_numpy
    crossing_winding = crossing_winding_numpy
    argument_change = argument_change_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
