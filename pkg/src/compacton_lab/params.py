"""Equation and wave parameters, exact exponents and derived constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch, NonPositivePower, ZeroCoefficient

# Exponents are kept exact; Fraction already normalizes to lowest terms with
# a positive denominator.
Rational = Fraction
RationalLike = Union[Fraction, int, str, float]


def as_rational(value: RationalLike) -> Fraction:
    """Convert ints, ``"p/q"`` strings or decimal literals to a Fraction.

    Floats go through their shortest repr so that ``1.5`` becomes ``3/2``
    rather than a 53-bit binary fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not exponents")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite exponent {value!r}")
        return Fraction(repr(value))
    return Fraction(str(value).strip())


def fmt_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class EquationParams:
    """Coefficients and powers of the K_N(m,n) equation.

    ``(u_t + a (u^m)_x + b (u^n)_xxx)_x + s * Laplacian_perp(u) = 0``
    """

    a: float
    b: float
    s: int
    m: Fraction
    n: Fraction
    N: int

    @property
    def compacton_capable(self) -> bool:
        return self.m != 1 and self.n != 1


def make_equation(a: float, b: float, s: int, m: RationalLike, n: RationalLike,
                  N: int = 2) -> EquationParams:
    a = float(a)
    b = float(b)
    if a == 0.0 or b == 0.0:
        raise ZeroCoefficient("coefficients a and b must be non-zero")
    if not math.isfinite(a) or not math.isfinite(b):
        raise ValueError("coefficients must be finite")
    if s not in (-1, 0, 1):
        raise ValueError(f"s must be -1, 0 or 1, got {s!r}")
    m = as_rational(m)
    n = as_rational(n)
    if m <= 0 or n <= 0:
        raise NonPositivePower(f"powers must be positive (m={m}, n={n})")
    if int(N) != N or N < 1:
        raise DimensionMismatch(f"N must be a positive integer, got {N!r}")
    if s == 0 and N != 1:
        raise DimensionMismatch("s=0 is the one-dimensional reduction and needs N=1")
    return EquationParams(a, b, int(s), m, n, int(N))


@dataclass(frozen=True)
class WaveParams:
    mu: Tuple[float, ...]
    nu: float

    @property
    def mu2(self) -> float:
        return math.fsum(v * v for v in self.mu)


def make_wave(mu: Sequence[float], nu: float) -> WaveParams:
    mu = tuple(float(v) for v in mu)
    if not all(math.isfinite(v) for v in mu) or not math.isfinite(nu):
        raise ValueError("wave parameters must be finite")
    return WaveParams(mu, float(nu))


def check_dimensions(eq: EquationParams, w: WaveParams) -> None:
    if len(w.mu) != eq.N - 1:
        raise DimensionMismatch(
            f"N={eq.N} needs {eq.N - 1} transverse slopes, got {len(w.mu)}")


@dataclass(frozen=True)
class Kinematics:
    kappa: float
    speed: float
    theta: float
    phi: Optional[float]


def kappa_of(eq: EquationParams, w: WaveParams) -> float:
    return w.nu - eq.s * w.mu2


def kinematics(eq: EquationParams, w: WaveParams) -> Kinematics:
    check_dimensions(eq, w)
    mu_abs = math.sqrt(w.mu2)
    phi = math.atan2(w.mu[1], w.mu[0]) if eq.N == 3 else None
    return Kinematics(kappa=kappa_of(eq, w),
                      speed=w.nu / math.sqrt(1.0 + w.mu2),
                      theta=math.atan(mu_abs),
                      phi=phi)


def is_zero_kappa(eq: EquationParams, w: WaveParams, rtol: float = 1e-10) -> bool:
    """True when nu = s|mu|^2 up to a relative tolerance."""
    scale = max(abs(w.nu), abs(eq.s) * w.mu2, 1.0)
    return abs(kappa_of(eq, w)) <= rtol * scale


@dataclass(frozen=True)
class ReducedConstants:
    """Coefficients of ``V'^2 = E + C V + B V^(1+1/n) - A V^(1+m/n)``.

    C1..C4 record the integration constants the coefficients came from;
    C4 (the half-width) is unknown until the quadrature is solved.
    """

    E: float
    C: float
    B: float
    A: float
    C1: float = 0.0
    C2: float = 0.0
    C3: float = 0.0
    C4: Optional[float] = None


def reduced_constants(eq: EquationParams, w: WaveParams, C2: float = 0.0,
                      C3: float = 0.0) -> ReducedConstants:
    check_dimensions(eq, w)
    n = float(eq.n)
    m = float(eq.m)
    kappa = kappa_of(eq, w)
    return ReducedConstants(
        E=2.0 * C3 / eq.b,
        C=2.0 * C2 / eq.b,
        B=2.0 * n * kappa / ((n + 1.0) * eq.b),
        A=2.0 * n * eq.a / ((m + n) * eq.b),
        C1=0.0, C2=float(C2), C3=float(C3))


def solitary_coefficients(eq: EquationParams, w: WaveParams) -> Tuple[float, float]:
    """(A, B) of the first-order solitary ODE ``U'^2 = B U^(3-n) - A U^(2+m-n)``."""
    n = float(eq.n)
    m = float(eq.m)
    kappa = kappa_of(eq, w)
    A = 2.0 * eq.a / (n * (m + n) * eq.b)
    B = 2.0 * kappa / (n * (n + 1.0) * eq.b)
    return A, B


def solitary_equation(A: float, B: float, m: RationalLike, n: RationalLike,
                      b: float = 1.0) -> Tuple[EquationParams, WaveParams]:
    """An (equation, wave) pair in one dimension realizing given A and B."""
    m = as_rational(m)
    n = as_rational(n)
    nf, mf = float(n), float(m)
    a = A * nf * (mf + nf) * b / 2.0
    kappa = B * nf * (nf + 1.0) * b / 2.0
    return make_equation(a, b, 0, m, n, 1), make_wave((), kappa)
