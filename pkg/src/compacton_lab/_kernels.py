"""Hot numerical kernels in two flavours.

Every kernel has an explicit-loop implementation compiled with numba and a
vectorized numpy implementation with identical semantics.  The numpy path is
the default; set ``COMPACTON_LAB_NUMBA`` to a true value (``1``, ``true``,
``yes``, ``on``) to use the numba path when numba imports.  numpy wins end to
end on hosts where its SIMD transcendentals outrun numba's scalar libm calls
(see benchmarks/bench_kernels.py); numba wins on single-panel and small-batch
calls.  Both flavours stay importable so tests and benchmarks can compare them.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba as _numba
except ImportError:  # pragma: no cover - exercised only without numba
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("COMPACTON_LAB_NUMBA", "").strip().lower() \
    in ("1", "true", "yes", "on")


def _jit(fn):
    if HAVE_NUMBA:
        return _numba.njit(cache=True, nogil=True)(fn)
    return fn


_MAX_LANDEN = 64
_T_MAX = 3.5


# ---------------------------------------------------------------------------
# Descending Landen / AGM for real modulus 0 <= k < 1
# ---------------------------------------------------------------------------

def landen_sequence(k: float):
    """AGM arrays (a_j, c_j) used by both K(k) and the Jacobi functions."""
    kc = math.sqrt((1.0 - k) * (1.0 + k))
    a = [1.0]
    c = [k]
    b = kc
    while abs(c[-1]) > 2.0 ** -53 * a[-1] and len(a) < _MAX_LANDEN:
        an = 0.5 * (a[-1] + b)
        cn = 0.5 * (a[-1] - b)
        b = math.sqrt(a[-1] * b)
        a.append(an)
        c.append(cn)
    return np.array(a), np.array(c)


@_jit
def _sncn_loops(u, a, c):
    nl = a.shape[0] - 1
    scale = 2.0 ** nl * a[nl]
    sn = np.empty(u.shape[0])
    cn = np.empty(u.shape[0])
    for i in range(u.shape[0]):
        phi = scale * u[i]
        for j in range(nl, 0, -1):
            phi = 0.5 * (phi + math.asin(c[j] / a[j] * math.sin(phi)))
        sn[i] = math.sin(phi)
        cn[i] = math.cos(phi)
    return sn, cn


def _sncn_numpy(u, a, c):
    nl = a.shape[0] - 1
    phi = (2.0 ** nl * a[nl]) * u
    for j in range(nl, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c[j] / a[j] * np.sin(phi)))
    return np.sin(phi), np.cos(phi)


# ---------------------------------------------------------------------------
# Quadrature panels for  xi = int dW / sqrt(Phi(W))
#
# Each panel is written as F(sigma) = int_0^sigma g(s) ds with a bounded
# integrand g after a singularity-removing substitution:
#   side 0: W = s^(1/(1-gamma)), removes W^-gamma at W = 0
#   side 1: W = vmax - s^2, removes the square-root turning point
#   side 2: W = exp(s_hi - s), logarithmic tail of a solitary wave
# Phi(W) = sum_i c_i W^e_i ; aux = (gamma, vmax, s_hi, e_lead).
# ---------------------------------------------------------------------------

@_jit
def _g_scalar(sig, side, c, e, aux):
    gamma = aux[0]
    vmax = aux[1]
    acc = 0.0
    if side == 0:
        w = sig ** (1.0 / (1.0 - gamma))
        for i in range(c.shape[0]):
            if c[i] != 0.0:
                d = e[i] - aux[3]
                acc += c[i] * (1.0 if d == 0.0 else w ** d)
        if acc <= 0.0:
            return np.nan
        return 1.0 / ((1.0 - gamma) * math.sqrt(acc))
    if side == 1:
        delta = sig * sig
        lg = math.log1p(-delta / vmax)
        for i in range(c.shape[0]):
            if c[i] != 0.0 and e[i] != 0.0:
                if delta == 0.0:
                    dq = e[i] * vmax ** (e[i] - 1.0)
                else:
                    dq = -vmax ** e[i] * math.expm1(e[i] * lg) / delta
                acc -= c[i] * dq
        if acc <= 0.0:
            return np.nan
        return 2.0 / math.sqrt(acc)
    w = math.exp(aux[2] - sig)
    for i in range(c.shape[0]):
        if c[i] != 0.0:
            acc += c[i] * w ** (e[i] - 2.0)
    if acc <= 0.0:
        return np.nan
    return 1.0 / math.sqrt(acc)


@_jit
def _panel_F_loops(sig, side, c, e, aux, x, wt):
    out = np.empty(sig.shape[0])
    for i in range(sig.shape[0]):
        acc = 0.0
        for j in range(x.shape[0]):
            acc += wt[j] * _g_scalar(sig[i] * x[j], side, c, e, aux)
        out[i] = sig[i] * acc
    return out


@_jit
def _invert_loops(targets, smax, side, c, e, aux, x, wt):
    """Solve F(sigma) = target on [0, smax] by bracketed Newton."""
    out = np.empty(targets.shape[0])
    one = np.empty(1)
    ftot = 0.0
    for j in range(x.shape[0]):
        ftot += wt[j] * _g_scalar(smax * x[j], side, c, e, aux)
    ftot *= smax
    for i in range(targets.shape[0]):
        tgt = targets[i]
        if tgt <= 0.0:
            out[i] = 0.0
            continue
        if tgt >= ftot:
            out[i] = smax
            continue
        lo = 0.0
        hi = smax
        sg = smax * tgt / ftot
        for _ in range(200):
            one[0] = sg
            f = _panel_F_loops(one, side, c, e, aux, x, wt)[0] - tgt
            if f < 0.0:
                lo = sg
            else:
                hi = sg
            step = f / _g_scalar(sg, side, c, e, aux)
            nxt = sg - step
            if not (nxt > lo and nxt < hi):
                nxt = 0.5 * (lo + hi)
            if abs(nxt - sg) <= 1e-15 * smax or hi - lo <= 1e-15 * smax:
                sg = nxt
                break
            sg = nxt
        out[i] = sg
    return out


def _g_numpy(sig, side, c, e, aux):
    gamma, vmax, s_hi, e_lead = aux
    sig = np.asarray(sig, dtype=float)
    acc = np.zeros_like(sig)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if side == 0:
            w = sig ** (1.0 / (1.0 - gamma))
            for ci, ei in zip(c, e):
                if ci != 0.0:
                    d = ei - e_lead
                    acc += ci * (1.0 if d == 0.0 else w ** d)
            return np.where(acc > 0, 1.0 / ((1.0 - gamma) * np.sqrt(acc)), np.nan)
        if side == 1:
            delta = sig * sig
            safe = np.where(delta == 0.0, 1.0, delta)
            for ci, ei in zip(c, e):
                if ci != 0.0 and ei != 0.0:
                    dq = -vmax ** ei * np.expm1(ei * np.log1p(-safe / vmax)) / safe
                    dq = np.where(delta == 0.0, ei * vmax ** (ei - 1.0), dq)
                    acc -= ci * dq
            return np.where(acc > 0, 2.0 / np.sqrt(acc), np.nan)
        w = np.exp(s_hi - sig)
        for ci, ei in zip(c, e):
            if ci != 0.0:
                acc += ci * w ** (ei - 2.0)
        return np.where(acc > 0, 1.0 / np.sqrt(acc), np.nan)


def _panel_F_numpy(sig, side, c, e, aux, x, wt):
    sig = np.asarray(sig, dtype=float)
    g = _g_numpy(sig[:, None] * x[None, :], side, c, e, aux)
    return sig * (g @ wt)


def _invert_numpy(targets, smax, side, c, e, aux, x, wt):
    targets = np.asarray(targets, dtype=float)
    ftot = _panel_F_numpy(np.array([smax]), side, c, e, aux, x, wt)[0]
    lo = np.zeros_like(targets)
    hi = np.full_like(targets, smax)
    sg = np.clip(smax * targets / ftot, 0.0, smax)
    active = (targets > 0.0) & (targets < ftot)
    for _ in range(200):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        s = sg[idx]
        f = _panel_F_numpy(s, side, c, e, aux, x, wt) - targets[idx]
        neg = f < 0.0
        lo[idx] = np.where(neg, s, lo[idx])
        hi[idx] = np.where(neg, hi[idx], s)
        nxt = s - f / _g_numpy(s, side, c, e, aux)
        bad = ~((nxt > lo[idx]) & (nxt < hi[idx]))
        nxt = np.where(bad, 0.5 * (lo[idx] + hi[idx]), nxt)
        done = (np.abs(nxt - s) <= 1e-15 * smax) | (hi[idx] - lo[idx] <= 1e-15 * smax)
        sg[idx] = nxt
        active[idx[done]] = False
    sg = np.where(targets <= 0.0, 0.0, sg)
    sg = np.where(targets >= ftot, smax, sg)
    return sg


# ---------------------------------------------------------------------------
# Tanh-sinh rule on [0, 1]
# ---------------------------------------------------------------------------

def tanh_sinh_rule(level: int, t_max: float = _T_MAX):
    """Nodes and weights of the tanh-sinh rule on [0, 1] with step 2**-level.

    Nodes near 0 are computed without cancellation, which matters for the
    singular end of side-0 panels.
    """
    h = 2.0 ** -level
    kk = int(math.ceil(t_max / h))
    t = h * np.arange(-kk, kk + 1)
    u = 0.5 * math.pi * np.sinh(t)
    x = 1.0 / (1.0 + np.exp(-2.0 * u))
    w = h * math.pi * np.cosh(t) / (4.0 * np.cosh(u) ** 2)
    return x, w


if USE_NUMBA:
    sncn = _sncn_loops
    panel_F = _panel_F_loops
    invert_panel = _invert_loops
else:
    sncn = _sncn_numpy
    panel_F = _panel_F_numpy
    invert_panel = _invert_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
