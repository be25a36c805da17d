"""Numerical verification of profiles.

All checks return scale-free (relative) measures so that one tolerance works
across amplitudes and units; each docstring says what the scale is.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .classify import Kind, classify_profile
from .conslaws import (ConsLawId, applicable_laws, first_integral_pieces, pieces,
                       require_applicable)
from .errors import DomainError, NonCompact
from .families import Profile, evaluate, evaluate_field
from .params import solitary_coefficients
from .quadrature import tanh_sinh
from .specfun import signed_pow

# ---------------------------------------------------------------------------
# finite differences
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def fd_weights(order: int, half: int) -> np.ndarray:
    """Central-difference weights for the ``order``-th derivative on 2*half+1 points."""
    k = np.arange(-half, half + 1, dtype=float)
    A = np.vander(k, increasing=True).T
    rhs = np.zeros(2 * half + 1)
    rhs[order] = math.factorial(order)
    w = np.linalg.solve(A, rhs)
    w.setflags(write=False)
    return w


def derivative(f, x, order: int, h: float, half: int = 2):
    """Central difference of a vectorized function; ``half=2`` is 4th order for d/dx."""
    x = np.asarray(x, dtype=float)
    w = fd_weights(order, half)
    acc = np.zeros_like(x)
    for j, wj in zip(range(-half, half + 1), w):
        if wj != 0.0:
            acc = acc + wj * f(x + j * h)
    return acc / h ** order


def _U(profile):
    return lambda x: evaluate(profile, x)


def _Um(profile):
    m = profile.eq.m
    return lambda x: signed_pow(evaluate(profile, x), m)


def _Vn(profile):
    n = profile.eq.n
    return lambda x: signed_pow(evaluate(profile, x), n)


def interior_grid(profile: Profile, points: int, frac: float = 0.95,
                  node_gap: float = 0.01, window: float = 10.0) -> np.ndarray:
    """Sample points away from the cutoff and from interior nodes.

    Compact profiles use ``|xi| <= frac*L``; solitary ones ``|xi| <= window *
    width``.  Points closer than ``node_gap*L`` to a node are dropped because
    difference stencils straddling a node see a non-smooth U^n.
    """
    half = frac * profile.L if profile.compact else window * profile.width
    xs = np.linspace(-half, half, points)
    if profile.nodes:
        gap = node_gap * (profile.L if profile.compact else profile.width)
        keep = np.ones(xs.shape, dtype=bool)
        for z in profile.nodes:
            keep &= np.abs(xs - z) > gap
        xs = xs[keep]
    return xs


# ---------------------------------------------------------------------------
# reduced ODE
# ---------------------------------------------------------------------------

def residual_reduced(profile: Profile, C1: Optional[float] = None, C2: Optional[float] = None,
                     grid_points: int = 801, frac: float = 0.95, relative: bool = True,
                     h_rel: float = 1e-4) -> float:
    """max |-kappa U + a U^m + b (U^n)'' - C1 xi - C2| on the interior grid.

    With ``relative`` the maximum is divided by the largest magnitude any of
    the four terms reaches on the grid.
    """
    C1 = profile.C1 if C1 is None else C1
    C2 = profile.C2 if C2 is None else C2
    xs = interior_grid(profile, grid_points, frac)
    h = h_rel * profile.width
    U = evaluate(profile, xs)
    terms = [-profile.kappa * U,
             profile.eq.a * signed_pow(U, profile.eq.m),
             profile.eq.b * derivative(_Vn(profile), xs, 2, h),
             -(C1 * xs + C2)]
    res = float(np.max(np.abs(sum(terms))))
    if not relative:
        return res
    scale = max(float(np.max(np.abs(t))) for t in terms)
    return res / scale if scale > 0 else res


def residual_solitary(profile: Profile, grid_points: int = 801, window: float = 10.0) -> float:
    """Relative residual of U'^2 - B U^(3-n) + A U^(2+m-n) on |xi| <= window*width."""
    A, B = solitary_coefficients(profile.eq, profile.wave)
    n, m = float(profile.eq.n), float(profile.eq.m)
    xs = interior_grid(profile, grid_points, window=window)
    U = evaluate(profile, xs)
    up = derivative(_U(profile), xs, 1, 1e-3 * profile.width, half=4)
    terms = [up * up, -B * U ** (3.0 - n), A * U ** (2.0 + m - n)]
    scale = max(float(np.max(np.abs(t))) for t in terms)
    return float(np.max(np.abs(sum(terms)))) / scale


# ---------------------------------------------------------------------------
# singular cutoff terms
# ---------------------------------------------------------------------------

TERM_NAMES = ("A0", "A1", "A2", "A3")


def asymptotic_singular_terms(p, U0: float, eq, kappa: float, side: int = 1) -> Dict[str, float]:
    """Leading-order limits of A0..A3 for U ~ U0 d^p, d = L - side*xi.

    Only power counting is used: a term with a negative exponent diverges, a
    zero exponent gives its coefficient, positive exponents vanish.  Exact
    cancellations between terms are invisible at this order.
    """
    p = Fraction(p) if not isinstance(p, float) else p
    n, m = eq.n, eq.m
    pn, pm = p * n, p * m
    V0 = signed_pow(U0, n)
    sgn = -side  # d/dxi = -side * d/dd

    def limit(terms):
        total = 0.0
        for coef, expo in terms:
            if coef == 0.0:
                continue
            if expo < 0:
                return math.copysign(math.inf, coef)
            if expo == 0:
                total += coef
        return total

    fp, fpm, fpn = float(p), float(pm), float(pn)
    A3 = [(eq.b * V0, pn)]
    A2 = [(sgn * eq.b * fpn * V0, pn - 1)]
    A1 = [(-kappa * U0, p), (eq.a * signed_pow(U0, m), pm),
          (eq.b * fpn * (fpn - 1.0) * V0, pn - 2)]
    A0 = [(sgn * -kappa * fp * U0, p - 1), (sgn * eq.a * fpm * signed_pow(U0, m), pm - 1),
          (sgn * eq.b * fpn * (fpn - 1.0) * (fpn - 2.0) * V0, pn - 3)]
    return {"A0": limit(A0), "A1": limit(A1), "A2": limit(A2), "A3": limit(A3)}


def _richardson(vals: Sequence[float]) -> float:
    """Limit of a sequence sampled at halving distances, correction order fitted."""
    g = np.asarray(vals, dtype=float)
    if len(g) < 3:
        return float(g[-1])
    d1, d2 = g[-2] - g[-3], g[-1] - g[-2]
    if d1 == 0.0 or d2 == 0.0 or d1 * d2 < 0:
        return float(g[-1])
    r = math.log2(abs(d1 / d2))
    if not (r > 0.05 and math.isfinite(r)):
        return float(g[-1])
    return float(g[-1] + d2 / (2.0 ** r - 1.0))


def numeric_singular_terms(profile: Profile, side: int = 1, levels: int = 8,
                           scale: float = 1.0) -> Tuple[Dict[str, float], Dict[str, float]]:
    """A0..A3 near the cutoff by finite differences, extrapolated to d -> 0.

    Returns ``(limits, last_samples)``.  A term whose samples grow by more
    than 20% per halving of the distance, and ends above ``scale``, is
    reported as diverging (inf).
    """
    L = profile.L
    eq, kappa = profile.eq, profile.kappa
    U, Um, V = _U(profile), _Um(profile), _Vn(profile)
    seq = {k: [] for k in TERM_NAMES}
    for j in range(3, 3 + levels):
        d = L * 2.0 ** -j
        x = np.array([side * (L - d)])
        h = d / 8.0
        seq["A3"].append(float(eq.b * V(x)[0]))
        seq["A2"].append(float(eq.b * derivative(V, x, 1, h)[0]))
        seq["A1"].append(float(-kappa * U(x)[0] + eq.a * Um(x)[0]
                               + eq.b * derivative(V, x, 2, h)[0]))
        seq["A0"].append(float(-kappa * derivative(U, x, 1, h)[0]
                               + eq.a * derivative(Um, x, 1, h)[0]
                               + eq.b * derivative(V, x, 3, h, half=3)[0]))
    out = {}
    for k, vals in seq.items():
        a = np.abs(vals[-4:])
        if np.all(a[1:] > 1.2 * a[:-1]) and a[-1] > scale:
            out[k] = math.copysign(math.inf, vals[-1])
        else:
            out[k] = _richardson(vals)
    return out, {k: v[-1] for k, v in seq.items()}


@dataclass
class SingularTerms:
    analytic: Dict[int, Dict[str, float]]
    numeric: Dict[int, Dict[str, float]]
    scale: float
    vanishing: Dict[int, Dict[str, bool]]
    agreement: float

    @property
    def implied_class(self) -> Kind:
        sides = self.vanishing.values()
        if all(all(v.values()) for v in sides):
            return Kind.COMPACTON
        if all(v["A2"] and v["A3"] for v in sides):
            return Kind.WEAK
        return Kind.NOT_A_SOLUTION


def singular_terms(profile: Profile, tol: float = 1e-8) -> SingularTerms:
    """One-sided limits of A0..A3 at xi = +L and -L.

    Catalog profiles solve ``-kappa U + a U^m + b (U^n)'' = C1 xi + C2`` on
    the open support, so A1 and A0 tend exactly to ``+-C1 L + C2`` and
    ``C1``; A2 and A3 follow from the power law ``U ~ U0 d^p``.  Profiles
    without a family use the asymptotic power counting for all four.
    Vanishing is decided against ``scale``, the largest interior magnitude of
    b U^n, |kappa U| and |a U^m|.
    """
    if not profile.compact:
        raise NonCompact(f"{profile.family} has unbounded support")
    xs = interior_grid(profile, 401, frac=0.9)
    U = evaluate(profile, xs)
    scale = max(float(np.max(np.abs(profile.eq.b * signed_pow(U, profile.eq.n)))),
                float(np.max(np.abs(profile.kappa * U))),
                float(np.max(np.abs(profile.eq.a * signed_pow(U, profile.eq.m)))))
    scale = max(scale, abs(profile.C2), abs(profile.C1) * profile.L) or 1.0
    analytic, numeric, vanish = {}, {}, {}
    worst = 0.0
    for side, U0 in ((1, profile.U0plus), (-1, profile.U0minus)):
        asym = asymptotic_singular_terms(profile.p, U0, profile.eq, profile.kappa, side)
        if profile.family is not None:
            asym["A1"] = side * profile.C1 * profile.L + profile.C2
            asym["A0"] = profile.C1
        num, _ = numeric_singular_terms(profile, side, scale=scale)
        analytic[side] = asym
        numeric[side] = num
        vanish[side] = {k: abs(asym[k]) <= tol * scale for k in TERM_NAMES}
        for k in TERM_NAMES:
            a_val, n_val = asym[k], num[k]
            if math.isinf(a_val) or math.isinf(n_val):
                if not (math.isinf(a_val) and math.isinf(n_val)):
                    worst = math.inf
                continue
            worst = max(worst, abs(a_val - n_val) / scale)
    return SingularTerms(analytic, numeric, scale, vanish, worst)


# ---------------------------------------------------------------------------
# weak formulation
# ---------------------------------------------------------------------------

def _bump_numerators(kmax: int = 4):
    """N_j with d^j/dt^j exp(-1/(1-t^2)) = exp(-1/(1-t^2)) N_j(t) / (1-t^2)^(2j)."""
    P = np.polynomial.Polynomial
    t = P([0.0, 1.0])
    s = 1.0 - t * t
    out = [P([1.0])]
    for j in range(kmax):
        Nj = out[-1]
        out.append(Nj.deriv() * s * s + 4.0 * j * t * Nj * s - 2.0 * t * Nj)
    return out


_BUMP_N = _bump_numerators()


@dataclass(frozen=True)
class TestFunction:
    """psi(xi) = P(t) exp(-1/(1-t^2)), t = (xi - center)/width, on |t| < 1."""

    __test__ = False  # keep pytest from collecting this class

    center: float
    width: float
    poly_coeffs: Tuple[float, ...] = (1.0,)

    @property
    def poly_degree(self) -> int:
        return len(self.poly_coeffs) - 1

    @property
    def support(self) -> Tuple[float, float]:
        return self.center - self.width, self.center + self.width

    def derivative(self, xi, k: int = 0):
        xi = np.asarray(xi, dtype=float)
        t = (xi - self.center) / self.width
        inside = np.abs(t) < 1.0
        ti = t[inside]
        s = 1.0 - ti * ti
        P = np.polynomial.Polynomial(self.poly_coeffs)
        acc = np.zeros_like(ti)
        for j in range(k + 1):
            g_j = np.exp(-1.0 / s - 2.0 * j * np.log(s)) * _BUMP_N[j](ti)
            acc += math.comb(k, j) * P.deriv(k - j)(ti) * g_j
        out = np.zeros_like(t)
        out[inside] = acc / self.width ** k
        return out


def _panels(lo: float, hi: float, cuts: Iterable[float]) -> List[Tuple[float, float]]:
    pts = sorted({lo, hi, *[c for c in cuts if lo < c < hi]})
    return list(zip(pts[:-1], pts[1:]))


def weak_form_residual(profile: Profile, tests: Sequence[TestFunction], order: str = "fourth",
                       relative: bool = True, rtol: float = 1e-12) -> float:
    """Largest weak-form residual over a set of bump test functions.

    fourth: int (-kappa U_c + a U_c^m) psi'' + b U_c^n psi''''
    second: int (-kappa U_c + a U_c^m - (C1 xi + C2) H) psi + b U_c^n psi''

    The second-order form carries the profile's own integration constants,
    cut off with the same step H as U_c.  Relative values are divided by
    int |b U_c^n psi''''| (or psi'' for the second-order form).
    """
    if order not in ("fourth", "second"):
        raise ValueError("order must be 'fourth' or 'second'")
    eq, kappa = profile.eq, profile.kappa
    L = profile.L
    cuts = [-L, L, *profile.nodes]
    hi_k, lo_k = (4, 2) if order == "fourth" else (2, 0)
    worst = 0.0
    for psi in tests:
        def lower(x):
            U = evaluate(profile, x)
            val = -kappa * U + eq.a * signed_pow(U, eq.m)
            if order == "second":
                val = val - np.where(np.abs(x) <= L, profile.C1 * x + profile.C2, 0.0)
            return val * psi.derivative(x, lo_k)

        def upper(x):
            return eq.b * signed_pow(evaluate(profile, x), eq.n) * psi.derivative(x, hi_k)

        total = 0.0
        ref = 0.0
        for a, b in _panels(*psi.support, cuts):
            total += tanh_sinh(lambda x: lower(x) + upper(x), a, b, rtol)
            if relative:
                ref += tanh_sinh(lambda x: np.abs(upper(x)), a, b, 1e-8)
        if relative:
            val = abs(total) / ref if ref > 0 else 0.0
        else:
            val = abs(total)
        worst = max(worst, val)
    return worst


def random_tests(profile: Profile, count: int = 20, seed: int = 0,
                 straddle: bool = True) -> List[TestFunction]:
    """Random bumps over the support plus bumps straddling both cutoffs.

    The straddling bumps are off-centre with a linear weight so that psi and
    psi' are both non-zero at the cutoff point.
    """
    rng = np.random.default_rng(seed)
    L = profile.L
    tests = []
    for _ in range(count):
        w = float(rng.uniform(0.05, 0.5)) * L
        c = float(rng.uniform(-1.2, 1.2)) * L
        coeffs = tuple(float(v) for v in rng.normal(size=int(rng.integers(1, 4))))
        tests.append(TestFunction(c, w, coeffs))
    if straddle:
        for side in (1.0, -1.0):
            w = 0.3 * L
            tests.append(TestFunction(side * (L - 0.35 * w), w, (1.0, 0.5)))
    return tests


def straddling_tests(profile: Profile) -> List[TestFunction]:
    return random_tests(profile, count=0)


# ---------------------------------------------------------------------------
# conservation laws
# ---------------------------------------------------------------------------

def _step(profile: Profile) -> float:
    return 2e-3 * profile.width


def travelling_jet(profile: Profile, xi: np.ndarray, h: Optional[float] = None) -> Dict:
    """Field derivatives of u = U(x + mu.y - nu t) at t = 0, y = 0, x = xi."""
    h = _step(profile) if h is None else h
    U, Um, V = _U(profile), _Um(profile), _Vn(profile)
    up = derivative(U, xi, 1, h, half=4)
    return {"t": np.zeros_like(xi), "x": xi, "y": [np.zeros_like(xi) for _ in profile.wave.mu],
            "u": U(xi), "u_x": up, "u_t": -profile.wave.nu * up,
            "u_y": [m_i * up for m_i in profile.wave.mu],
            "um": Um(xi), "um_x": derivative(Um, xi, 1, h, half=4),
            "v_xx": derivative(V, xi, 2, h, half=4),
            "v_xxx": derivative(V, xi, 3, h, half=4)}


def first_integral_check(profile: Profile, law, grid_points: int = 401,
                         frac: float = 0.9) -> float:
    """Variation (max - min) of X + mu.Y - nu T along the travelling wave.

    Normalized by max(|mean|, largest individual piece), because for several
    laws the first integral is identically zero while its pieces are not.
    """
    law = ConsLawId(law)
    require_applicable(law, profile.eq, profile.wave)
    xi = interior_grid(profile, grid_points, frac=frac, node_gap=0.03)
    pcs = pieces(law, profile.eq, profile.wave, travelling_jet(profile, xi))
    parts = first_integral_pieces(law, profile.eq, profile.wave, pcs)
    total = sum(parts)
    scale = max(float(np.max(np.abs(p))) for p in parts)
    denom = max(abs(float(np.mean(total))), scale)
    if denom == 0.0:
        return 0.0
    return float(np.max(total) - np.min(total)) / denom


def _axis_steps(wave, h: float) -> Tuple[float, float, List[float]]:
    """Steps in x, t and each y_i that all move xi by at most h."""
    return (h, h / max(1.0, abs(wave.nu)),
            [h / max(1.0, abs(m_i)) for m_i in wave.mu])


def _field_jet(profile: Profile, t, x, y, h):
    """Jet of u at arbitrary spacetime points by differences of the field map."""
    eq = profile.eq
    hx, ht, hy = _axis_steps(profile.wave, h)

    def u_at(tt, xx, yy):
        return evaluate_field(profile, tt, xx, yy)

    u = u_at(t, x, y)
    ux = derivative(lambda xx: u_at(t, xx, y), x, 1, hx, half=4)
    ut = derivative(lambda tt: u_at(tt, x, y), t, 1, ht, half=4)
    uy = []
    for i in range(len(y)):
        def fy(yi, i=i):
            yy = list(y)
            yy[i] = yi
            return u_at(t, x, yy)
        uy.append(derivative(fy, y[i], 1, hy[i], half=4))
    um = lambda xx: signed_pow(u_at(t, xx, y), eq.m)
    vn = lambda xx: signed_pow(u_at(t, xx, y), eq.n)
    return {"t": t, "x": x, "y": list(y), "u": u, "u_x": ux, "u_t": ut, "u_y": uy,
            "um": um(x), "um_x": derivative(um, x, 1, hx, half=4),
            "v_xx": derivative(vn, x, 2, hx, half=4),
            "v_xxx": derivative(vn, x, 3, hx, half=4)}


def divergence_check(profile: Profile, law, points: int = 100, seed: int = 0,
                     frac: float = 0.85) -> float:
    """max |D_t T + D_x X + D_y Y| at random interior spacetime points.

    Every partial derivative is a central difference of the field map, nested
    for the fluxes.  The result is divided by the largest derivative of any
    single piece of T, X or Y, so cancellation inside a flux is not mistaken
    for accuracy.
    """
    law = ConsLawId(law)
    require_applicable(law, profile.eq, profile.wave)
    eq, wave = profile.eq, profile.wave
    rng = np.random.default_rng(seed)
    half = frac * profile.L if profile.compact else 8.0 * profile.width
    h = 5.0 * _step(profile)
    xi = rng.uniform(-half, half, size=4 * points)
    if profile.nodes:
        # nested stencils reach 8h from the centre
        gap = max(0.05 * (profile.L if profile.compact else profile.width), 10.0 * h)
        for z in profile.nodes:
            xi = xi[np.abs(xi - z) > gap]
    xi = xi[:points]
    t = rng.uniform(-1.0, 1.0, size=xi.shape)
    y = [rng.uniform(-1.0, 1.0, size=xi.shape) for _ in wave.mu]
    x = xi + wave.nu * t - sum((m_i * y_i for m_i, y_i in zip(wave.mu, y)), np.zeros_like(xi))

    def flux(tt, xx, yy):
        return pieces(law, eq, wave, _field_jet(profile, tt, xx, yy, h))

    hx, ht, hy = _axis_steps(wave, h)

    def d_pieces(key, axis, idx=None):
        """List of central differences, one per piece of flux[key]."""
        w = fd_weights(1, 4)
        step = {"t": ht, "x": hx}.get(axis) or hy[idx]
        acc = None
        for j, wj in zip(range(-4, 5), w):
            if wj == 0.0:
                continue
            tt, xx, yy = t, x, list(y)
            if axis == "t":
                tt = t + j * step
            elif axis == "x":
                xx = x + j * step
            else:
                yy[idx] = y[idx] + j * step
            got = flux(tt, xx, yy)[key]
            got = got[idx] if idx is not None else got
            acc = [wj * g for g in got] if acc is None else [a + wj * g for a, g in zip(acc, got)]
        return [a / step for a in acc]

    parts = d_pieces("T", "t") + d_pieces("X", "x")
    for i in range(len(wave.mu)):
        parts += d_pieces("Y", "y", i)
    total = sum(parts)
    scale = max(float(np.max(np.abs(p))) for p in parts)
    res = float(np.max(np.abs(total)))
    return res / scale if scale > 0 else res


# ---------------------------------------------------------------------------
# cutoff power
# ---------------------------------------------------------------------------

def estimate_cutoff_power(profile: Profile, side: int = 1, dmin: float = 1e-6,
                          dmax: float = 1e-3) -> Tuple[float, float]:
    """Least-squares slope of log|U| against log(L - |xi|), with R^2.

    Distances are taken relative to L, i.e. (L - |xi|)/L in [dmin, dmax].
    """
    if not profile.compact:
        raise NonCompact(f"{profile.family} has unbounded support")
    d = profile.L * np.logspace(math.log10(dmin), math.log10(dmax), 60)
    u = np.abs(evaluate(profile, side * (profile.L - d)))
    X, Y = np.log(d), np.log(u)
    slope, icpt = np.polyfit(X, Y, 1)
    pred = slope * X + icpt
    ss_res = float(np.sum((Y - pred) ** 2))
    ss_tot = float(np.sum((Y - Y.mean()) ** 2))
    return float(slope), 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

DEFAULT_TOLERANCES: Dict[str, float] = {
    "residual": 1e-5,
    "singular": 1e-3,
    "weakform2": 1e-6,
    "weakform4": 1e-6,
    "conslaw": 1e-6,
    "divergence": 1e-4,
    "power": 0.02,
}
CHECKS = ("residual", "singular", "weakform2", "weakform4", "conslaw", "power")
TOLERANCE_ENV = "COMPACTON_LAB_TOLERANCE"


def parse_tolerance_overrides(text: str) -> Dict[str, float]:
    """``"1e-7"`` sets every tolerance; ``"residual=1e-6,power=0.05"`` sets some."""
    text = (text or "").strip()
    if not text:
        return {}
    if "=" not in text:
        val = float(text)
        return {k: val for k in DEFAULT_TOLERANCES}
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in DEFAULT_TOLERANCES:
            raise ValueError(f"unknown tolerance name {key!r}")
        out[key] = float(val)
    return out


def tolerances(overrides: Optional[Dict[str, float]] = None) -> Dict[str, float]:
    """Defaults, then the environment variable, then explicit overrides."""
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(parse_tolerance_overrides(os.environ.get(TOLERANCE_ENV, "")))
    tol.update(overrides or {})
    return tol


@dataclass
class CheckResult:
    check_name: str
    measured: float
    tolerance: float
    details: Dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.tolerance)

    def as_dict(self) -> Dict:
        return {"check_name": self.check_name, "measured": self.measured,
                "tolerance": self.tolerance, "pass": self.passed, "details": self.details}


@dataclass
class VerificationReport:
    family: Optional[str]
    entries: List[CheckResult] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def as_dict(self) -> Dict:
        entries = sorted(self.entries, key=lambda e: e.check_name)
        return {"schema": 1, "family": self.family, "pass": self.passed,
                "entries": [e.as_dict() for e in entries], "skipped": sorted(self.skipped)}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=_json_default)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"not serializable: {type(obj)}")


def run_checks(profile: Profile, checks: Sequence[str] = CHECKS,
               overrides: Optional[Dict[str, float]] = None, seed: int = 0,
               n_tests: int = 20) -> VerificationReport:
    tol = tolerances(overrides)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}")
    rep = VerificationReport(str(profile.family) if profile.family else None)
    compact_only = {"singular", "weakform2", "weakform4", "power"}
    tests = random_tests(profile, n_tests, seed) if profile.compact else []
    for name in checks:
        if name in compact_only and not profile.compact:
            rep.skipped.append(f"{name}: not applicable to unbounded support")
            continue
        if name == "residual":
            if profile.compact:
                val = residual_reduced(profile)
                det = {"C1": profile.C1, "C2": profile.C2}
            else:
                val = max(residual_reduced(profile), residual_solitary(profile))
                det = {"equation": "first-order solitary and reduced"}
            rep.entries.append(CheckResult("residual", val, tol["residual"], det))
        elif name == "singular":
            st = singular_terms(profile)
            cls = classify_profile(profile)
            coherent = st.implied_class is cls.kind
            det = {"class": str(cls), "implied_by_limits": str(st.implied_class),
                   "coherent": coherent,
                   "limits": {("+L" if s > 0 else "-L"): v for s, v in st.analytic.items()},
                   "numeric": {("+L" if s > 0 else "-L"): v for s, v in st.numeric.items()}}
            val = st.agreement if coherent else math.inf
            rep.entries.append(CheckResult("singular", val, tol["singular"], det))
        elif name in ("weakform2", "weakform4"):
            order = "second" if name == "weakform2" else "fourth"
            val = weak_form_residual(profile, tests, order)
            det = {"order": order, "tests": len(tests), "seed": seed}
            if order == "fourth" and classify_profile(profile).kind is Kind.WEAK:
                det["note"] = "weak-compacton: boundary term A1 survives at the cutoff"
            rep.entries.append(CheckResult(name, val, tol[name], det))
        elif name == "conslaw":
            for law in applicable_laws(profile.eq, profile.wave):
                rep.entries.append(CheckResult(f"conslaw:{law}",
                                               first_integral_check(profile, law),
                                               tol["conslaw"]))
                rep.entries.append(CheckResult(f"divergence:{law}",
                                               divergence_check(profile, law, seed=seed),
                                               tol["divergence"]))
        elif name == "power":
            est, r2 = estimate_cutoff_power(profile)
            p = float(profile.p)
            rep.entries.append(CheckResult("power", abs(est - p) / p, tol["power"],
                                           {"estimate": est, "analytic": str(profile.p),
                                            "r2": r2}))
    return rep


# ---------------------------------------------------------------------------
# quadrature oracle comparison
# ---------------------------------------------------------------------------

def oracle_deviation(profile: Profile, numeric) -> Tuple[float, float]:
    """Sup-norm and half-width discrepancy between a closed form and the quadrature.

    The quadrature produces one lobe centred at 0.  Profiles with a single
    node at the origin consist of two lobes of half-width L/2 centred at
    +-L/2, so the closed form is sampled at xi + L/2.  Both numbers are
    relative: to the closed-form peak and to the closed-form half-width.
    """
    if not profile.compact:
        raise NonCompact(f"{profile.family} has unbounded support")
    if profile.C1 != 0.0:
        raise DomainError("the quadrature oracle assumes C1 = 0")
    if not profile.nodes:
        shift, half = 0.0, profile.L
    elif tuple(profile.nodes) == (0.0,):
        shift, half = 0.5 * profile.L, 0.5 * profile.L
    else:
        raise DomainError("profiles with several lobes have no single-lobe oracle")
    xs = np.asarray(numeric.grid, dtype=float)
    ref = np.abs(evaluate(profile, xs + shift))
    got = np.abs(numeric.U)
    peak = float(np.max(ref))
    return float(np.max(np.abs(got - ref))) / peak, abs(numeric.L - half) / half
