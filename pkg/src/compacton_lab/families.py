"""Catalog of explicit travelling-wave solutions.

Each family maps (equation, wave, extras) to a :class:`Profile` carrying the
closed-form evaluator plus the metadata the classifier and the verification
suite rely on: half-width ``L``, cutoff power ``p``, the leading coefficients
``U0plus``/``U0minus`` of ``U ~ U0 (L -+ xi)^p`` and the integration
constants ``C1``, ``C2`` of the reduced ODE ``-kappa U + a U^m + b (U^n)'' =
C1 xi + C2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from . import specfun as sf
from .errors import DimensionMismatch, DomainError, ParityError, ValidityError
from .params import (EquationParams, WaveParams, check_dimensions, is_zero_kappa,
                     kappa_of, solitary_coefficients)


class FamilyId(str, Enum):
    LinCos = "LinCos"
    LinSin = "LinSin"
    LinMixed = "LinMixed"
    SolitarySech = "SolitarySech"
    HeavyTailHi = "HeavyTailHi"
    SolitarySechSub = "SolitarySechSub"
    HeavyTailSub = "HeavyTailSub"
    CosCompacton = "CosCompacton"
    SinCompacton = "SinCompacton"
    CnZeroKappa = "CnZeroKappa"
    SnZeroKappa = "SnZeroKappa"
    AlgZeroKappa = "AlgZeroKappa"
    CnGeneral = "CnGeneral"
    SnGeneral = "SnGeneral"
    CnNegB = "CnNegB"
    SnNegB = "SnNegB"
    AlgGeneral = "AlgGeneral"
    AlgNonconvex = "AlgNonconvex"

    def __str__(self) -> str:
        return self.value


SOLITARY = frozenset({FamilyId.SolitarySech, FamilyId.HeavyTailHi,
                      FamilyId.SolitarySechSub, FamilyId.HeavyTailSub})
LINEAR = frozenset({FamilyId.LinCos, FamilyId.LinSin, FamilyId.LinMixed})


@dataclass(frozen=True)
class Profile:
    family: Optional[FamilyId]
    eq: EquationParams
    wave: WaveParams
    alpha: float
    beta: float
    q: Optional[Fraction]
    modulus: Optional[sf.EllipticModulus]
    L: float
    p: Optional[Fraction]
    U0plus: float
    U0minus: float
    sign_class: str
    C1: float = 0.0
    C2: float = 0.0
    nodes: Tuple[float, ...] = ()
    width: float = 1.0
    symmetry: str = "even"
    extras: Tuple[Tuple[str, float], ...] = ()
    func: Callable[[np.ndarray], np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def kappa(self) -> float:
        return kappa_of(self.eq, self.wave)

    @property
    def compact(self) -> bool:
        return math.isfinite(self.L)

    @property
    def pn(self) -> Optional[Fraction]:
        return None if self.p is None else self.p * self.eq.n

    def __call__(self, xi):
        return evaluate(self, xi)

    def scaled(self, factor: float) -> "Profile":
        """Same metadata, amplitude multiplied by ``factor`` (for negative controls)."""
        f = self.func
        return replace(self, alpha=self.alpha * factor,
                       func=lambda x: factor * f(x))


def evaluate(profile: Profile, xi):
    """Cut-off profile U_c(xi); exactly zero for |xi| >= L.

    The endpoints themselves are excluded because rounding in the argument
    of a fractional power would otherwise leave values like (1e-16)^(1/n)
    where the closed form has an exact zero.
    """
    x = np.asarray(xi, dtype=float)
    out = np.zeros(x.shape)
    inside = np.abs(x) < profile.L
    if inside.any():
        out[inside] = profile.func(x[inside])
    return float(out) if out.ndim == 0 else out


def evaluate_field(profile: Profile, t, x, y=()):
    """u(t, x, y) = U_c(x + mu . y - nu t); broadcasts over array inputs."""
    mu = profile.wave.mu
    y = tuple(y) if np.ndim(y) == 1 or isinstance(y, (tuple, list)) else (y,)
    if len(y) != len(mu):
        raise DimensionMismatch(f"expected {len(mu)} transverse coordinates, got {len(y)}")
    xi = np.asarray(x, dtype=float) - profile.wave.nu * np.asarray(t, dtype=float)
    for m_i, y_i in zip(mu, y):
        xi = xi + m_i * np.asarray(y_i, dtype=float)
    return evaluate(profile, xi)


def zero_profile(eq: EquationParams, wave: WaveParams, L: float = 1.0) -> Profile:
    return Profile(None, eq, wave, 0.0, 0.0, None, None, float(L), None, 0.0, 0.0,
                   "nonnegative", width=float(L), func=lambda x: np.zeros_like(x))


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def _sgn(x: float) -> int:
    return (x > 0) - (x < 0)


def _pin_ok(eq: EquationParams, kappa: float, rtol: float = 1e-10) -> bool:
    n = float(eq.n)
    pin = -2.0 * eq.b * n * (n + 1.0) / (n - 1.0) ** 2
    return math.isclose(kappa, pin, rel_tol=rtol, abs_tol=0.0)


def _window(eq: EquationParams, kappa: float) -> bool:
    n = eq.n
    return (1 < n < 3) or (n >= 3 and _pin_ok(eq, kappa))


def _no_unit_powers(eq):
    return [] if eq.compacton_capable else ["requires m≠1 and n≠1"]


def _pred_lin(eq, w):
    out = _no_unit_powers(eq)
    if eq.m != eq.n:
        out.append("requires m=n")
    if not is_zero_kappa(eq, w):
        out.append("requires ν=s|μ|² (κ=0)")
    if _sgn(eq.a) != _sgn(eq.b):
        out.append("requires sgn(a)=sgn(b)")
    return out


def _pred_solitary(family):
    def pred(eq, w):
        A, B = solitary_coefficients(eq, w)
        m, n = eq.m, eq.n
        out = []
        if family is FamilyId.SolitarySech:
            if n != 1:
                out.append("requires n=1")
            if not m > 1:
                out.append("requires m>1")
            if not (A > 0 and B > 0):
                out.append("requires A>0 and B>0")
        elif family is FamilyId.HeavyTailHi:
            if n != 2 - m:
                out.append("requires n=2-m")
            if not 1 < m < 2:
                out.append("requires 1<m<2")
            if not (A > 0 and B > 0):
                out.append("requires A>0 and B>0")
        elif family is FamilyId.SolitarySechSub:
            if n != m:
                out.append("requires n=m")
            if not m < 1:
                out.append("requires m<1")
            if not (A < 0 and B < 0):
                out.append("requires A<0 and B<0")
        else:
            if n != 2 * m - 1:
                out.append("requires n=2m-1")
            if not Fraction(1, 2) < m < 1:
                out.append("requires 1/2<m<1")
            if not (A < 0 and B < 0):
                out.append("requires A<0 and B<0")
        return out
    return pred


def _pred_cos(eq, w):
    out = _no_unit_powers(eq)
    kappa = kappa_of(eq, w)
    if eq.m != eq.n:
        out.append("requires m=n")
    if not (_sgn(kappa) == _sgn(eq.a) == _sgn(eq.b) and kappa != 0):
        out.append("requires sgn(κ)=sgn(a)=sgn(b)")
    if not _window(eq, kappa):
        out.append("requires 1<n<3, or n≥3 with κ=-2bn(n+1)/(n-1)²")
    return out


def _pred_zero_kappa(m_of_n):
    def pred(eq, w):
        out = _no_unit_powers(eq)
        if eq.m != m_of_n(eq.n):
            out.append(f"requires m={'2n' if m_of_n(Fraction(2)) == 4 else 'n/2'}")
        if not is_zero_kappa(eq, w):
            out.append("κ=0 required")
        if _sgn(eq.a) != _sgn(eq.b):
            out.append("requires sgn(a)=sgn(b)")
        return out
    return pred


def _pred_general(eq, w):
    out = _no_unit_powers(eq)
    kappa = kappa_of(eq, w)
    if eq.m != 2 * eq.n - 1:
        out.append("requires m=2n-1")
    if not eq.b > 0:
        out.append("requires b>0")
    # the closed form only solves the ODE on the a>0, kappa>0 branch
    if not (eq.a > 0 and kappa > 0):
        out.append("requires a>0 and κ>0")
    if not _window(eq, kappa):
        out.append("requires 1<n<3, or n≥3 with κ=-2bn(n+1)/(n-1)²")
    return out


def _pred_negb(eq, w):
    out = _no_unit_powers(eq)
    kappa = kappa_of(eq, w)
    if eq.m != 2 * eq.n - 1:
        out.append("requires m=2n-1")
    if not eq.b < 0:
        out.append("requires b<0")
    if not 1 > eq.n > eq.m:
        out.append("requires 1>n>m")
    if not (eq.a > 0 and kappa > 0):
        out.append("requires a>0 and κ>0")
    return out


def _pred_alg_general(eq, w):
    out = _no_unit_powers(eq)
    kappa = kappa_of(eq, w)
    if eq.m != (eq.n + 1) / 2:
        out.append("requires m=(n+1)/2")
    if not (_sgn(kappa) == _sgn(eq.a) == _sgn(eq.b) and kappa != 0):
        out.append("requires sgn(κ)=sgn(a)=sgn(b)")
    if not _window(eq, kappa):
        out.append("requires 1<n<3, or n≥3 with κ=-2bn(n+1)/(n-1)²")
    return out


def _pred_alg_nonconvex(eq, w):
    out = _no_unit_powers(eq)
    kappa = kappa_of(eq, w)
    if eq.m != 2 - eq.n:
        out.append("requires m=2-n")
    if not (kappa != 0 and _sgn(kappa) == _sgn(eq.a) == -_sgn(eq.b)):
        out.append("requires sgn(κ)=sgn(a)=-sgn(b)")
    if not 1 < eq.n < 2:
        out.append("requires 1<n<2")
    return out


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _parity_check(q: Fraction, what: str, odd_only: bool = False) -> str:
    if q.denominator % 2 == 0:
        raise ParityError(f"{what}: exponent {q} has an even denominator but the base changes sign")
    if odd_only and q.numerator % 2 == 0:
        raise ParityError(f"{what}: exponent {q} would square the sign of an odd profile")
    return sf.parity_class(q)


def _nonneg_base(base):
    return np.maximum(base, 0.0)


def _ext(extras: Mapping[str, float], key: str, default: float) -> float:
    return float(extras.get(key, default))


def _known_extras(family, extras, allowed):
    unknown = set(extras) - set(allowed)
    if unknown:
        raise ValidityError(f"{family}: unknown extras {sorted(unknown)}")


def _amp_class(alpha: float) -> str:
    return "nonnegative" if alpha > 0 else "nonpositive"


def _build_lin(family, eq, w, extras):
    n = eq.n
    omega = math.sqrt(eq.a / eq.b)
    alpha = _ext(extras, "alpha", 1.0)
    if not alpha > 0:
        raise ValidityError("requires alpha>0")
    alpha_n = alpha ** float(n)
    if family is FamilyId.LinCos:
        _known_extras(family, extras, ("alpha",))
        q = 2 / n
        L = math.pi / omega
        qf = float(q)
        U0 = alpha * (0.5 * omega) ** qf
        return dict(alpha=alpha, beta=0.5 * omega, q=q, L=L, p=q, U0plus=U0, U0minus=U0,
                    sign_class="nonnegative", C2=0.5 * eq.a * alpha_n, width=L,
                    func=lambda x: alpha * _nonneg_base(np.cos(0.5 * omega * x)) ** qf)
    if family is FamilyId.LinSin:
        _known_extras(family, extras, ("alpha",))
        q = 2 / n
        sc = _parity_check(q, "LinSin")
        L = 2.0 * math.pi / omega
        U0 = alpha * (0.5 * omega) ** float(q)
        U0m = alpha * sf.signed_pow(-0.5 * omega, q)
        return dict(alpha=alpha, beta=0.5 * omega, q=q, L=L, p=q, U0plus=U0, U0minus=U0m,
                    sign_class=sc, C2=0.5 * eq.a * alpha_n, nodes=(0.0,), width=L,
                    symmetry="odd" if sc == "sign-changing" else "even",
                    func=lambda x: alpha * sf.signed_pow(np.sin(0.5 * omega * x), q))
    # LinMixed: V = sigma alpha^n (omega cos z xi - sin omega xi), L = z / omega
    _known_extras(family, extras, ("alpha", "root_index", "phase_sign"))
    j = int(_ext(extras, "root_index", 1))
    if j < 1 or j != _ext(extras, "root_index", 1):
        raise ValidityError("root_index must be a positive integer")
    sigma = _ext(extras, "phase_sign", 1.0)
    if sigma not in (1.0, -1.0):
        raise ValidityError("phase_sign must be +1 or -1")
    z = sf.tan_fixed_points(j)[-1]
    q = 1 / n
    sc = _parity_check(q, "LinMixed", odd_only=True)
    L = z / omega
    cz, sz = math.cos(z), math.sin(z)

    def base(x):
        return sigma * (omega * cz * x - np.sin(omega * x))

    curv = sigma * omega * omega * sz / 2.0
    U0 = alpha * sf.signed_pow(curv, q)
    U0m = alpha * sf.signed_pow(-curv, q)
    nodes = _interior_zeros(base, L)
    return dict(alpha=alpha, beta=omega, q=q, L=L, p=2 / n, U0plus=U0, U0minus=U0m,
                sign_class=sc, C1=sigma * eq.a * alpha_n * omega * cz, C2=0.0,
                nodes=nodes, width=L, symmetry="odd",
                extras_used=(("alpha", alpha), ("root_index", float(j)), ("phase_sign", sigma)),
                func=lambda x: alpha * sf.signed_pow(base(x), q))


def _interior_zeros(f, L: float, samples: int = 4001) -> Tuple[float, ...]:
    xs = np.linspace(-L, L, samples)[1:-1]
    vals = f(xs)
    zeros = [float(x) for x, v in zip(xs, vals) if v == 0.0]
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        zeros.append(brentq(f, xs[i], xs[i + 1], xtol=1e-15 * max(L, 1.0)))
    return tuple(sorted(zeros))


def _build_solitary(family, eq, w, extras):
    _known_extras(family, extras, ())
    A, B = solitary_coefficients(eq, w)
    m = float(eq.m)
    if family is FamilyId.SolitarySech:
        amp = (B / A) ** (1.0 / (m - 1.0))
        rate = 0.5 * (m - 1.0) * math.sqrt(B)
        e = 2.0 / (m - 1.0)
        func = lambda x: amp / np.cosh(rate * x) ** e
        width = 1.0 / rate
        beta = rate
    elif family is FamilyId.SolitarySechSub:
        amp = abs(A / B) ** (1.0 / (1.0 - m))
        rate = 0.5 * (1.0 - m) * math.sqrt(abs(A))
        e = 2.0 / (1.0 - m)
        func = lambda x: amp / np.cosh(rate * x) ** e
        width = 1.0 / rate
        beta = rate
    elif family is FamilyId.HeavyTailHi:
        c0 = A / B
        c2 = (m - 1.0) ** 2 * B / 4.0
        e = 1.0 / (m - 1.0)
        amp = c0 ** -e
        func = lambda x: (c0 + c2 * x * x) ** -e
        width = math.sqrt(c0 / c2)
        beta = math.sqrt(c2)
    else:
        c0 = abs(B / A)
        c2 = (1.0 - m) ** 2 * abs(A) / 4.0
        e = 1.0 / (1.0 - m)
        amp = c0 ** -e
        func = lambda x: (c0 + c2 * x * x) ** -e
        width = math.sqrt(c0 / c2)
        beta = math.sqrt(c2)
    return dict(alpha=amp, beta=beta, q=None, L=math.inf, p=None, U0plus=0.0, U0minus=0.0,
                sign_class="nonnegative", width=width, func=func)


def _build_trig(family, eq, w, extras):
    _known_extras(family, extras, ())
    n = float(eq.n)
    kappa = kappa_of(eq, w)
    alpha = (2.0 * n * kappa / ((n + 1.0) * eq.a)) ** (1.0 / (n - 1.0))
    beta = (n - 1.0) / (2.0 * n) * math.sqrt(eq.a / eq.b)
    q = 2 / (eq.n - 1)
    qf = float(q)
    U0 = alpha * beta ** qf
    if family is FamilyId.CosCompacton:
        L = 0.5 * math.pi / beta
        return dict(alpha=alpha, beta=beta, q=q, L=L, p=q, U0plus=U0, U0minus=U0,
                    sign_class="nonnegative", width=L,
                    func=lambda x: alpha * _nonneg_base(np.cos(beta * x)) ** qf)
    sc = _parity_check(q, "SinCompacton")
    L = math.pi / beta
    return dict(alpha=alpha, beta=beta, q=q, L=L, p=q, U0plus=U0,
                U0minus=alpha * sf.signed_pow(-beta, q), sign_class=sc, nodes=(0.0,),
                width=L, symmetry="odd" if sc == "sign-changing" else "even",
                func=lambda x: alpha * sf.signed_pow(np.sin(beta * x), q))


def _zero_kappa_alpha(family, eq, extras, power):
    alpha = _ext(extras, "alpha", 1.0)
    if alpha == 0.0:
        raise ValidityError(f"{family}: requires α≠0")
    try:
        alpha_pow = sf.signed_pow(alpha, power)
    except DomainError as exc:
        raise ParityError(f"{family}: negative α needs an odd denominator in {power}") from exc
    if not alpha_pow > 0:
        raise ValidityError(f"{family}: requires α^{power} > 0")
    return alpha, alpha_pow


def _build_zero_kappa(family, eq, w, extras):
    _known_extras(family, extras, ("alpha",))
    n = eq.n
    q = 2 / n
    qf = float(q)
    if family is FamilyId.AlgZeroKappa:
        alpha, ah = _zero_kappa_alpha(family, eq, extras, n / 2)
        beta = eq.a / (12.0 * eq.b * ah)
        L = 1.0 / math.sqrt(beta)
        U0 = alpha * (2.0 * math.sqrt(beta)) ** qf
        return dict(alpha=alpha, beta=beta, q=q, L=L, p=q, U0plus=U0, U0minus=U0,
                    sign_class=_amp_class(alpha), C2=2.0 * eq.a * ah / 3.0, width=L,
                    func=lambda x: alpha * _nonneg_base(1.0 - beta * x * x) ** qf)
    alpha, an = _zero_kappa_alpha(family, eq, extras, n)
    C2 = eq.a * an * an / 3.0
    if family is FamilyId.CnZeroKappa:
        k = 1.0 / math.sqrt(2.0)
        beta = math.sqrt(eq.a * an / (3.0 * eq.b))
        L = sf.arccn_zero(k) / beta
        U0 = alpha * (k * beta) ** qf
        return dict(alpha=alpha, beta=beta, q=q, modulus=sf.EllipticModulus(k), L=L, p=q,
                    U0plus=U0, U0minus=U0, sign_class=_amp_class(alpha), C2=C2, width=L,
                    func=lambda x: alpha * _nonneg_base(sf.jacobi_cn(beta * x, k)) ** qf)
    sc = _parity_check(q, "SnZeroKappa")
    beta = math.sqrt(eq.a * an / (6.0 * eq.b))
    L = sf.arcsn_zero_imag(1.0) / beta
    return dict(alpha=alpha, beta=beta, q=q, modulus=sf.EllipticModulus(1.0, True), L=L, p=q,
                U0plus=alpha * beta ** qf, U0minus=alpha * sf.signed_pow(-beta, q),
                sign_class=sc, C2=C2, nodes=(0.0,), width=L,
                symmetry="odd" if sc == "sign-changing" else "even",
                func=lambda x: alpha * sf.signed_pow(sf.jacobi_sn_imag(beta * x, 1.0), q))


def _build_elliptic(family, eq, w, extras):
    _known_extras(family, extras, ())
    n = float(eq.n)
    kappa = kappa_of(eq, w)
    alpha = ((3.0 * n - 1.0) * kappa / ((n + 1.0) * eq.a)) ** (1.0 / (2.0 * (n - 1.0)))
    r4 = (eq.a * kappa / ((n + 1.0) * (3.0 * n - 1.0))) ** 0.25
    neg_b = family in (FamilyId.CnNegB, FamilyId.SnNegB)
    q = 2 / (1 - eq.n) if neg_b else 2 / (eq.n - 1)
    qf = float(q)
    spread = abs(n - 1.0) * r4
    if family in (FamilyId.CnGeneral, FamilyId.CnNegB):
        k = 1.0 / math.sqrt(2.0)
        beta = spread / math.sqrt(n * abs(eq.b))
        L = sf.arccn_zero(k) / beta
        U0 = alpha * (k * beta) ** qf
        return dict(alpha=alpha, beta=beta, q=q, modulus=sf.EllipticModulus(k), L=L, p=q,
                    U0plus=U0, U0minus=U0, sign_class="nonnegative", width=L,
                    func=lambda x: alpha * _nonneg_base(sf.jacobi_cn(beta * x, k)) ** qf)
    sc = _parity_check(q, str(family))
    beta = spread / math.sqrt(2.0 * n * abs(eq.b))
    L = sf.arcsn_zero_imag(1.0) / beta
    return dict(alpha=alpha, beta=beta, q=q, modulus=sf.EllipticModulus(1.0, True), L=L, p=q,
                U0plus=alpha * beta ** qf, U0minus=alpha * sf.signed_pow(-beta, q),
                sign_class=sc, nodes=(0.0,), width=L,
                symmetry="odd" if sc == "sign-changing" else "even",
                func=lambda x: alpha * sf.signed_pow(sf.jacobi_sn_imag(beta * x, 1.0), q))


def _build_alg(family, eq, w, extras):
    _known_extras(family, extras, ())
    n = float(eq.n)
    kappa = kappa_of(eq, w)
    if family is FamilyId.AlgGeneral:
        alpha = ((3.0 * n + 1.0) * kappa / (2.0 * (n + 1.0) * eq.a)) ** (2.0 / (n - 1.0))
        beta = ((n - 1.0) ** 2 * (n + 1.0) * eq.a ** 2
                / (2.0 * (3.0 * n + 1.0) ** 2 * kappa * n * eq.b))
        q = 2 / (eq.n - 1)
    else:
        alpha = ((n + 1.0) * eq.a / (2.0 * kappa)) ** (1.0 / (n - 1.0))
        beta = (n - 1.0) ** 2 * kappa ** 2 / ((n + 1.0) ** 2 * n * abs(eq.a * eq.b))
        q = 1 / (eq.n - 1)
    qf = float(q)
    L = 1.0 / math.sqrt(beta)
    U0 = alpha * (2.0 * math.sqrt(beta)) ** qf
    return dict(alpha=alpha, beta=beta, q=q, L=L, p=q, U0plus=U0, U0minus=U0,
                sign_class="nonnegative", width=L,
                func=lambda x: alpha * _nonneg_base(1.0 - beta * x * x) ** qf)


@dataclass(frozen=True)
class FamilyInfo:
    family: FamilyId
    summary: str
    expected_class: Optional[str]
    extras: Mapping[str, str]
    predicate: Callable[[EquationParams, WaveParams], List[str]]
    builder: Callable


_W = "weak-compacton"
_C = "compacton"

FAMILY_TABLE: Dict[FamilyId, FamilyInfo] = {
    FamilyId.LinCos: FamilyInfo(FamilyId.LinCos, "U = α cos(ωξ/2)^{2/n}, ω=√(a/b), L=π/ω",
                                _W, {"alpha": "α > 0 (default 1)"}, _pred_lin, _build_lin),
    FamilyId.LinSin: FamilyInfo(FamilyId.LinSin, "U = α sin(ωξ/2)^{2/n}, L=2π/ω",
                                _W, {"alpha": "α > 0 (default 1)"}, _pred_lin, _build_lin),
    FamilyId.LinMixed: FamilyInfo(
        FamilyId.LinMixed, "U^n = ±α^n (ω cos z ξ − sin ωξ), z=tan z, L=z/ω", _W,
        {"alpha": "α > 0 (default 1)", "root_index": "j ≥ 1 selects the j-th root of z=tan z",
         "phase_sign": "+1 or -1 (phase ±π/2)"}, _pred_lin, _build_lin),
    FamilyId.SolitarySech: FamilyInfo(FamilyId.SolitarySech,
                                      "U = (B/A)^{1/(m-1)} sech^{2/(m-1)}((m-1)√B ξ/2), n=1",
                                      None, {}, _pred_solitary(FamilyId.SolitarySech),
                                      _build_solitary),
    FamilyId.HeavyTailHi: FamilyInfo(FamilyId.HeavyTailHi,
                                     "U = (A/B + (m-1)²Bξ²/4)^{-1/(m-1)}, n=2-m",
                                     None, {}, _pred_solitary(FamilyId.HeavyTailHi),
                                     _build_solitary),
    FamilyId.SolitarySechSub: FamilyInfo(FamilyId.SolitarySechSub,
                                         "U = |A/B|^{1/(1-m)} sech^{2/(1-m)}((1-m)√|A| ξ/2), n=m<1",
                                         None, {}, _pred_solitary(FamilyId.SolitarySechSub),
                                         _build_solitary),
    FamilyId.HeavyTailSub: FamilyInfo(FamilyId.HeavyTailSub,
                                      "U = (|B/A| + (1-m)²|A|ξ²/4)^{-1/(1-m)}, n=2m-1",
                                      None, {}, _pred_solitary(FamilyId.HeavyTailSub),
                                      _build_solitary),
    FamilyId.CosCompacton: FamilyInfo(FamilyId.CosCompacton,
                                      "U = α cos(βξ)^{2/(n-1)}, m=n", _C, {}, _pred_cos,
                                      _build_trig),
    FamilyId.SinCompacton: FamilyInfo(FamilyId.SinCompacton,
                                      "U = α sin(βξ)^{2/(n-1)}, m=n", _C, {}, _pred_cos,
                                      _build_trig),
    FamilyId.CnZeroKappa: FamilyInfo(FamilyId.CnZeroKappa,
                                     "U = α cn(βξ, 1/√2)^{2/n}, m=2n, κ=0", _W,
                                     {"alpha": "α ≠ 0 with α^n > 0 (default 1)"},
                                     _pred_zero_kappa(lambda n: 2 * n), _build_zero_kappa),
    FamilyId.SnZeroKappa: FamilyInfo(FamilyId.SnZeroKappa,
                                     "U = α sn(βξ, i)^{2/n}, m=2n, κ=0", _W,
                                     {"alpha": "α ≠ 0 with α^n > 0 (default 1)"},
                                     _pred_zero_kappa(lambda n: 2 * n), _build_zero_kappa),
    FamilyId.AlgZeroKappa: FamilyInfo(FamilyId.AlgZeroKappa,
                                      "U = α (1 − βξ²)^{2/n}, m=n/2, κ=0", _W,
                                      {"alpha": "α ≠ 0 with α^{n/2} > 0 (default 1)"},
                                      _pred_zero_kappa(lambda n: n / 2), _build_zero_kappa),
    FamilyId.CnGeneral: FamilyInfo(FamilyId.CnGeneral,
                                   "U = α cn(βξ, 1/√2)^{2/(n-1)}, m=2n-1, b>0", _C, {},
                                   _pred_general, _build_elliptic),
    FamilyId.SnGeneral: FamilyInfo(FamilyId.SnGeneral,
                                   "U = α sn(βξ, i)^{2/(n-1)}, m=2n-1, b>0", _C, {},
                                   _pred_general, _build_elliptic),
    FamilyId.CnNegB: FamilyInfo(FamilyId.CnNegB,
                                "U = α cn(βξ, 1/√2)^{2/(1-n)}, m=2n-1, b<0", _C, {},
                                _pred_negb, _build_elliptic),
    FamilyId.SnNegB: FamilyInfo(FamilyId.SnNegB,
                                "U = α sn(βξ, i)^{2/(1-n)}, m=2n-1, b<0", _C, {},
                                _pred_negb, _build_elliptic),
    FamilyId.AlgGeneral: FamilyInfo(FamilyId.AlgGeneral,
                                    "U = α (1 − βξ²)^{2/(n-1)}, m=(n+1)/2", _C, {},
                                    _pred_alg_general, _build_alg),
    FamilyId.AlgNonconvex: FamilyInfo(FamilyId.AlgNonconvex,
                                      "U = α (1 − βξ²)^{1/(n-1)}, m=2-n, 1<n<2", _C, {},
                                      _pred_alg_nonconvex, _build_alg),
}


def as_family(name) -> FamilyId:
    if isinstance(name, FamilyId):
        return name
    try:
        return FamilyId(str(name))
    except ValueError:
        raise ValueError(f"unknown family {name!r}") from None


def validity_failures(family, eq: EquationParams, wave: WaveParams) -> List[str]:
    check_dimensions(eq, wave)
    return FAMILY_TABLE[as_family(family)].predicate(eq, wave)


def make_profile(family, eq: EquationParams, wave: WaveParams,
                 extras: Optional[Mapping[str, float]] = None) -> Profile:
    family = as_family(family)
    extras = dict(extras or {})
    failures = validity_failures(family, eq, wave)
    if failures:
        raise ValidityError(f"{family}: {failures[0]}")
    info = FAMILY_TABLE[family]
    fields = info.builder(family, eq, wave, extras)
    used = fields.pop("extras_used", tuple(sorted((k, float(v)) for k, v in extras.items())))
    return Profile(family=family, eq=eq, wave=wave,
                   modulus=fields.pop("modulus", None), extras=used, **fields)


def catalog_admissible(eq: EquationParams, wave: WaveParams) -> List[FamilyId]:
    """Families whose validity predicate holds for (eq, wave).

    Parity restrictions are not part of the predicate: a family may be
    admissible here while make_profile still raises ParityError.  Use
    :data:`FAMILY_TABLE` for the ranges of the extras.
    """
    check_dimensions(eq, wave)
    return [f for f in FamilyId if not FAMILY_TABLE[f].predicate(eq, wave)]


def family_cutoff_power(family, eq: EquationParams) -> Optional[Fraction]:
    """Analytic cutoff power p of a compact family, without building it."""
    family = as_family(family)
    n = eq.n
    if family in SOLITARY:
        return None
    if family in (FamilyId.LinCos, FamilyId.LinSin, FamilyId.LinMixed, FamilyId.CnZeroKappa,
                  FamilyId.SnZeroKappa, FamilyId.AlgZeroKappa):
        return 2 / n
    if family in (FamilyId.CnNegB, FamilyId.SnNegB):
        return 2 / (1 - n)
    if family is FamilyId.AlgNonconvex:
        return 1 / (n - 1)
    return 2 / (n - 1)
