"""Special functions: elliptic K, Jacobi sn/cn/dn, signed rational powers.

Everything here is real-valued.  Imaginary modulus is reduced to a real
modulus by the standard transformation, so no complex arithmetic is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .errors import DomainError
from .params import as_rational


@dataclass(frozen=True)
class EllipticModulus:
    """Modulus ``k`` (real regime) or ``i*k`` (imaginary regime)."""

    k: float
    imaginary: bool = False

    def __post_init__(self):
        if self.imaginary:
            if not self.k > 0:
                raise DomainError("imaginary modulus needs k > 0")
        elif not 0.0 <= self.k < 1.0:
            raise DomainError("real modulus needs 0 <= k < 1")

    @property
    def regime(self) -> str:
        return "imaginary-modulus" if self.imaginary else "real-modulus"


def _check_k(k: float) -> float:
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise DomainError(f"modulus must satisfy 0 <= k < 1, got {k!r}")
    return k


@lru_cache(maxsize=256)
def _landen(k: float):
    return _kernels.landen_sequence(k)


def elliptic_K(k: float) -> float:
    """Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k'))."""
    a, _ = _landen(_check_k(k))
    return math.pi / (2.0 * a[-1])


def _sncn(u, k):
    k = _check_k(k)
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    a, c = _landen(k)
    # reduce modulo the real period 4K to keep the Landen phase small
    period = 4.0 * math.pi / (2.0 * a[-1])
    u_red = u_arr - period * np.round(u_arr / period)
    sn, cn = _kernels.sncn(np.ascontiguousarray(u_red), a, c)
    dn = np.sqrt(np.maximum(1.0 - (k * sn) ** 2, 0.0))
    return sn, cn, dn


def _shape(u, arr):
    return float(arr[0]) if np.ndim(u) == 0 else arr.reshape(np.shape(u))


def jacobi_sn(u, k):
    sn, _, _ = _sncn(u, k)
    return _shape(u, sn)


def jacobi_cn(u, k):
    _, cn, _ = _sncn(u, k)
    return _shape(u, cn)


def jacobi_dn(u, k):
    _, _, dn = _sncn(u, k)
    return _shape(u, dn)


def jacobi_sncndn(u, k):
    """All three functions from a single Landen pass."""
    sn, cn, dn = _sncn(u, k)
    return _shape(u, sn), _shape(u, cn), _shape(u, dn)


def _imag_parts(k):
    k = float(k)
    if not k > 0.0:
        raise DomainError(f"imaginary modulus needs k > 0, got {k!r}")
    root = math.sqrt(1.0 + k * k)
    return k / root, 1.0 / root


def jacobi_sn_imag(u, k):
    """sn(u, i k) = k1' sd(u / k1', k1) with k1 = k / sqrt(1 + k^2)."""
    k1, k1c = _imag_parts(k)
    sn, _, dn = _sncn(np.asarray(u, dtype=float) / k1c, k1)
    return _shape(u, k1c * sn / dn)


def jacobi_cn_imag(u, k):
    """cn(u, i k) = cd(u / k1', k1)."""
    k1, k1c = _imag_parts(k)
    _, cn, dn = _sncn(np.asarray(u, dtype=float) / k1c, k1)
    return _shape(u, cn / dn)


def jacobi_dn_imag(u, k):
    """dn(u, i k) = nd(u / k1', k1)."""
    k1, k1c = _imag_parts(k)
    _, _, dn = _sncn(np.asarray(u, dtype=float) / k1c, k1)
    return _shape(u, 1.0 / dn)


def elliptic_K_imag(k: float) -> float:
    """K(i k) = k1' K(k1)."""
    k1, k1c = _imag_parts(k)
    return k1c * elliptic_K(k1)


def arccn_zero(k: float) -> float:
    """First positive zero of cn(., k)."""
    return elliptic_K(k)


def arcsn_zero_imag(k: float) -> float:
    """First strictly positive zero of sn(., i k), namely 2 K(i k)."""
    return 2.0 * elliptic_K_imag(k)


# ---------------------------------------------------------------------------
# Signed rational powers
# ---------------------------------------------------------------------------

def signed_pow(x, r):
    """Real power x**r for a rational r, following parity rules.

    Negative bases are allowed only with an odd denominator; the sign of the
    result is then (-1)**numerator.  Works on scalars and arrays.
    """
    r = as_rational(r)
    num, den = r.numerator, r.denominator
    rf = float(r)
    if np.ndim(x) == 0:
        x = float(x)
        if x > 0.0:
            return x ** rf
        if x == 0.0:
            if r <= 0:
                raise DomainError("0 raised to a non-positive power")
            return 0.0
        if den % 2 == 0:
            raise DomainError(f"negative base {x!r} with even-denominator power {r}")
        mag = (-x) ** rf
        return -mag if num % 2 else mag
    x = np.asarray(x, dtype=float)
    neg = x < 0.0
    if r <= 0 and np.any(x == 0.0):
        raise DomainError("0 raised to a non-positive power")
    if neg.any():
        if den % 2 == 0:
            raise DomainError(f"negative base with even-denominator power {r}")
        mag = np.abs(x) ** rf
        return np.where(neg & (num % 2 == 1), -mag, mag)
    return x ** rf


def parity_class(q: Fraction) -> str:
    """Sign behaviour of ``base**q`` for a base that changes sign."""
    q = as_rational(q)
    if q.numerator % 2 == 0:
        return "squared-node"
    return "sign-changing"


# ---------------------------------------------------------------------------
# Fixed points of tan z = z
# ---------------------------------------------------------------------------

def _tan_gap(z):
    # sin z - z cos z has the same positive zeros as tan z - z but no poles
    return math.sin(z) - z * math.cos(z)


def tan_fixed_points(count: int) -> List[float]:
    """First ``count`` positive solutions of z = tan z (z = 0 excluded).

    The j-th root lies in (j pi, j pi + pi/2).
    """
    if int(count) != count or count < 1:
        raise ValueError("count must be a positive integer")
    roots = []
    for j in range(1, int(count) + 1):
        lo = j * math.pi
        hi = j * math.pi + 0.5 * math.pi
        roots.append(brentq(_tan_gap, lo, hi, xtol=1e-15, rtol=4.0 * np.finfo(float).eps,
                            maxiter=200))
    return roots
