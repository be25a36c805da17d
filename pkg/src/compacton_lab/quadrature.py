"""Quadrature engine: the independent numerical oracle for the closed forms.

Compactons solve ``V'^2 = Phi(V)`` with ``Phi(V) = E + C V + B V^(1+1/n) -
A V^(1+m/n)`` and ``V = U^n``; the profile is recovered by inverting
``int_V^Vmax dW / sqrt(Phi(W)) = |xi|``.  Solitary waves use the same machinery
on ``U'^2 = B U^(3-n) - A U^(2+m-n)``.

Both endpoint singularities (``W^-gamma`` at 0 and the square-root turning
point) are removed by substitution before a tanh-sinh rule is applied; see
:mod:`compacton_lab._kernels`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from . import _kernels
from .errors import DivergentIntegral, DomainError, NoRoot, NoTurningPoint
from .params import ReducedConstants, as_rational
from .specfun import signed_pow


class NotASolutionWarning(UserWarning):
    """The quadrature is finite but its cutoff cannot yield a weak solution."""


@dataclass(frozen=True)
class PotentialSpec:
    rc: ReducedConstants
    m: Fraction
    n: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", as_rational(self.m))
        object.__setattr__(self, "n", as_rational(self.n))

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([self.rc.E, self.rc.C, self.rc.B, -self.rc.A], dtype=float)

    @property
    def exponents(self) -> np.ndarray:
        n, m = float(self.n), float(self.m)
        return np.array([0.0, 1.0, 1.0 + 1.0 / n, 1.0 + m / n])

    def leading(self):
        """(coefficient, exponent) of the dominant small-V term."""
        for c, e in sorted(zip(self.coeffs, self.exponents), key=lambda t: t[1]):
            if c != 0.0:
                return float(c), float(e)
        return 0.0, math.inf


def _powsum(c, e, V):
    V = np.asarray(V, dtype=float)
    out = np.zeros_like(V)
    for ci, ei in zip(c, e):
        if ci != 0.0:
            out = out + ci * (np.ones_like(V) if ei == 0.0 else V ** ei)
    return out


def potential(spec: PotentialSpec, V):
    if np.any(np.asarray(V) < 0):
        raise DomainError("the potential is defined for V >= 0 only")
    out = _powsum(spec.coeffs, spec.exponents, V)
    return float(out) if np.ndim(V) == 0 else out


def vstar(spec: PotentialSpec) -> Optional[float]:
    B, A = spec.rc.B, spec.rc.A
    m, n = float(spec.m), float(spec.n)
    if B == 0.0 or A == 0.0 or (B > 0) != (A > 0) or m == 1.0:
        return None
    return (B / (m * A)) ** (n / (m - 1.0))


def _first_root(c, e, extra_points=(), kmin=-200, kmax=1020):
    """Smallest positive root of sum c_i V^e_i given positivity near V=0."""
    grid = [2.0 ** k for k in range(kmin, kmax)]
    grid = np.array(sorted(set(grid) | {v for v in extra_points if v and v > 0}))
    with np.errstate(over="ignore", invalid="ignore"):
        vals = _powsum(c, e, grid)
    prev_v, prev_f = None, None
    for v, f in zip(grid, vals):
        if not math.isfinite(f):
            break
        if f <= 0.0:
            if prev_v is None:
                raise NoRoot("potential is not positive near V=0")
            if f == 0.0:
                return float(v)
            fun = lambda x: float(_powsum(c, e, np.array(x)))
            return brentq(fun, prev_v, v, xtol=1e-300, rtol=4.0 * np.finfo(float).eps,
                          maxiter=500)
        prev_v, prev_f = v, f
    raise NoRoot("potential stays positive over the searched range")


def find_vmax(spec: PotentialSpec) -> float:
    lead_c, _ = spec.leading()
    if lead_c <= 0.0:
        raise NoRoot("the potential is not positive near V=0, no profile starts there")
    vs = vstar(spec)
    return _first_root(spec.coeffs, spec.exponents, extra_points=(vs,) if vs else ())


@dataclass(frozen=True)
class QuadratureSolution:
    spec: PotentialSpec
    vmax: float
    L: float
    split: float
    gamma: float
    level: int
    xi_split: float  # distance from the peak at which V = split
    warning: Optional[str] = None

    @property
    def aux(self) -> np.ndarray:
        return np.array([self.gamma, self.vmax, 0.0, 2.0 * self.gamma])


def _adaptive_total(smax, side, c, e, aux, level0=3, max_level=10, rtol=1e-14):
    prev = None
    for level in range(level0, max_level + 1):
        x, w = _kernels.tanh_sinh_rule(level)
        val = float(_kernels.panel_F(np.array([smax]), side, c, e, aux, x, w)[0])
        if not math.isfinite(val):
            raise DomainError("potential vanished inside the integration range")
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return val, level
        prev = val
    return val, max_level


def solve_quadrature(spec: PotentialSpec, split: Optional[float] = None) -> QuadratureSolution:
    """V_max and the half-width L, with the panel layout kept for inversion."""
    vmax = find_vmax(spec)
    _, e_lead = spec.leading()
    if e_lead >= 2.0:
        raise DivergentIntegral(
            f"integrand behaves like V^-{e_lead / 2:g} at V=0; the half-width is infinite")
    gamma = 0.5 * e_lead
    warning = None
    if spec.rc.E != 0.0:
        warning = "E≠0: finite width but the cutoff has pn=1 and is not a solution"
        warnings.warn(warning, NotASolutionWarning, stacklevel=2)
    if split is None:
        vs = vstar(spec)
        split = vs if vs is not None and 0.1 * vmax <= vs <= 0.9 * vmax else 0.5 * vmax
    if not 0.0 < split < vmax:
        raise DomainError("panel split must lie strictly inside (0, V_max)")
    c, e = spec.coeffs, spec.exponents
    aux = np.array([gamma, vmax, 0.0, e_lead])
    left, lv0 = _adaptive_total(split ** (1.0 - gamma), 0, c, e, aux)
    right, lv1 = _adaptive_total(math.sqrt(vmax - split), 1, c, e, aux)
    return QuadratureSolution(spec, vmax, left + right, split, gamma, max(lv0, lv1), right,
                              warning)


def half_width(spec: PotentialSpec, split: Optional[float] = None) -> float:
    return solve_quadrature(spec, split).L


@dataclass(frozen=True)
class NumericProfile:
    """Sampled profile on [0, L] (or [0, xi_max] for solitary waves)."""

    grid: np.ndarray
    V: np.ndarray
    U: np.ndarray
    L: float
    n: Fraction
    xi_max: float
    solver: object = field(default=None, repr=False, compare=False)

    def evaluate(self, xi):
        """Even extension with monotone cubic interpolation; zero beyond L."""
        x = np.abs(np.asarray(xi, dtype=float))
        interp = PchipInterpolator(self.grid, self.U, extrapolate=False)
        out = np.where(x <= min(self.L, self.xi_max), interp(np.minimum(x, self.grid[-1])), 0.0)
        out = np.nan_to_num(out)
        return float(out) if out.ndim == 0 else out

    def solve_at(self, xi):
        """Re-solve the integral equation at arbitrary |xi| (no interpolation)."""
        return self.solver(np.abs(np.atleast_1d(np.asarray(xi, dtype=float))))


def _compacton_solver(sol: QuadratureSolution):
    spec = sol.spec
    c, e = spec.coeffs, spec.exponents
    aux = sol.aux
    aux[3] = 2.0 * sol.gamma
    x, w = _kernels.tanh_sinh_rule(sol.level)
    ymax = sol.split ** (1.0 - sol.gamma)
    zmax = math.sqrt(sol.vmax - sol.split)

    def solve(xi):
        xi = np.asarray(xi, dtype=float)
        V = np.zeros_like(xi)
        near = xi <= sol.xi_split
        if near.any():
            z = _kernels.invert_panel(np.ascontiguousarray(xi[near]), zmax, 1, c, e, aux, x, w)
            V[near] = sol.vmax - z * z
        far = (~near) & (xi < sol.L)
        if far.any():
            y = _kernels.invert_panel(np.ascontiguousarray(sol.L - xi[far]), ymax, 0, c, e,
                                      aux, x, w)
            V[far] = y ** (1.0 / (1.0 - sol.gamma))
        return V

    return solve


def chebyshev_grid(L: float, samples: int) -> np.ndarray:
    j = np.arange(samples)
    g = 0.5 * L * (1.0 - np.cos(math.pi * j / (samples - 1)))
    g[0], g[-1] = 0.0, L
    return g


def invert_profile(spec: PotentialSpec, samples: int = 200,
                   split: Optional[float] = None) -> NumericProfile:
    if samples < 16:
        raise ValueError("need at least 16 samples")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotASolutionWarning)
        sol = solve_quadrature(spec, split)
    solve = _compacton_solver(sol)
    grid = chebyshev_grid(sol.L, samples)
    V = solve(grid)
    V[0], V[-1] = sol.vmax, 0.0
    U = signed_pow(V, 1 / spec.n)
    return NumericProfile(grid, V, U, sol.L, spec.n, sol.L, solver=solve)


# ---------------------------------------------------------------------------
# solitary waves
# ---------------------------------------------------------------------------

def solitary_turning_point(Acoef: float, Bcoef: float, m) -> float:
    m = float(as_rational(m))
    if Acoef == 0.0 or Bcoef == 0.0 or (Acoef > 0) != (Bcoef > 0):
        raise NoTurningPoint("a turning point needs sgn(A)=sgn(B)")
    return (Bcoef / Acoef) ** (1.0 / (m - 1.0))


def solitary_profile(Acoef: float, Bcoef: float, m, n, xi_max: float = 10.0,
                     samples: int = 201) -> NumericProfile:
    """Peak-centred solitary wave by quadrature of U'^2 = B U^(3-n) - A U^(2+m-n)."""
    m, n = as_rational(m), as_rational(n)
    ustar = solitary_turning_point(Acoef, Bcoef, m)
    mf, nf = float(m), float(n)
    c = np.array([Bcoef, -Acoef])
    e = np.array([3.0 - nf, 2.0 + mf - nf])
    # the potential must be positive just below the turning point
    probe = float(_powsum(c, e, np.array(0.5 * ustar)))
    if not probe > 0:
        raise NoTurningPoint("potential is not positive below the turning point")
    s_hi = math.log(0.5 * ustar)
    aux = np.array([0.0, ustar, s_hi, 0.0])
    zmax = math.sqrt(0.5 * ustar)
    xi_half, level = _adaptive_total(zmax, 1, c, e, aux)
    # extend the logarithmic tail panel until it covers xi_max
    smax = 1.0
    x, w = _kernels.tanh_sinh_rule(max(level, 6))
    while True:
        tail = float(_kernels.panel_F(np.array([smax]), 2, c, e, aux, x, w)[0])
        if xi_half + tail >= xi_max or smax > 700.0:
            break
        smax *= 2.0

    def solve(xi):
        xi = np.asarray(xi, dtype=float)
        U = np.zeros_like(xi)
        near = xi <= xi_half
        if near.any():
            z = _kernels.invert_panel(np.ascontiguousarray(xi[near]), zmax, 1, c, e, aux, x, w)
            U[near] = ustar - z * z
        far = ~near
        if far.any():
            s = _kernels.invert_panel(np.ascontiguousarray(xi[far] - xi_half), smax, 2, c, e,
                                      aux, x, w)
            U[far] = np.exp(s_hi - s)
        return U

    grid = np.linspace(0.0, xi_max, samples)
    U = solve(grid)
    U[0] = ustar
    V = signed_pow(U, n)
    return NumericProfile(grid, V, U, math.inf, n, float(xi_max), solver=lambda g: solve(g))


def tanh_sinh(f, a: float, b: float, rtol: float = 1e-12, level0: int = 3,
              max_level: int = 10) -> float:
    """Adaptive tanh-sinh integral of a vectorized ``f`` over [a, b].

    Suited to integrands with algebraic endpoint behaviour; interior kinks
    must be handled by the caller through panel splitting.  Nodes that round
    onto an endpoint are dropped.  A singularity at a nonzero endpoint is
    therefore resolved only down to a distance of about eps*|b|; for
    1/sqrt behaviour that caps the relative accuracy near 1e-8.  Move such
    singularities to the origin by substitution when more is needed.
    """
    if b <= a:
        return 0.0
    prev = None
    span = b - a
    for level in range(level0, max_level + 1):
        x, w = _kernels.tanh_sinh_rule(level, t_max=6.0)
        # the rule is symmetric: reversed nodes are the exact complements 1 - x,
        # so the upper half is placed from b and never rounds onto it
        pts = np.where(x <= 0.5, a + span * x, b - span * x[::-1])
        keep = (pts > a) & (pts < b)
        val = span * float(np.dot(w[keep], f(pts[keep])))
        if prev is not None and abs(val - prev) <= rtol * max(abs(val), 1e-300):
            return val
        prev = val
    return val
