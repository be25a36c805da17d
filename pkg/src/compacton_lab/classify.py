"""Solution classes of cut-off profiles and of quadrature constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import DegenerateError, DomainError, NonCompact
from .families import Profile
from .params import EquationParams, ReducedConstants, WaveParams, kappa_of

Number = Union[float, Fraction]


class Kind(str, Enum):
    CLASSICAL = "classical"
    COMPACTON = "compacton"
    WEAK = "weak-compacton"
    NOT_A_SOLUTION = "not-a-solution"
    UNCLASSIFIABLE = "unclassifiable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SolutionClass:
    kind: Kind
    case: Optional[int] = None
    cases: Tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind is Kind.COMPACTON:
            return f"compacton(case {self.case})"
        return str(self.kind)

    @property
    def is_compacton(self) -> bool:
        return self.kind is Kind.COMPACTON


def _equal(x: Number, y: Number, rtol: float) -> bool:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    return math.isclose(float(x), float(y), rel_tol=rtol, abs_tol=0.0)


def _rational_or_float(v):
    return v if isinstance(v, Fraction) else float(v)


def satisfied_cases(p: Number, eq: EquationParams, kappa: float,
                    rtol: float = 1e-9) -> Tuple[int, ...]:
    """Which of the four pointwise cutoff condition sets hold for power p."""
    p = _rational_or_float(p)
    m, n = eq.m, eq.n
    if not isinstance(p, Fraction):
        m, n = float(m), float(n)
    pm, pn = p * m, p * n
    cases = []
    if p > 1 and pm > 1 and pn > 3:
        cases.append(1)
    p_n1 = 2 / (n - 1)
    if p_n1 > 0 and _equal(p, p_n1, rtol) and pm > 1:
        lhs = float(2 * n * (n + 1) / (n - 1) ** 2)
        if math.isclose(lhs, -kappa / eq.b, rel_tol=rtol, abs_tol=0.0):
            cases.append(2)
    if n != m:
        p_nm = 2 / (n - m)
        if p_nm > 0 and _equal(p, p_nm, rtol):
            lhs = float(2 * n * (n + m) / (n - m) ** 2)
            if math.isclose(lhs, -eq.a / eq.b, rel_tol=rtol, abs_tol=0.0) and \
                    abs(kappa) <= rtol * max(1.0, abs(eq.a), abs(eq.b)):
                cases.append(3)
            if p_nm > 1:
                cases.append(4)
    return tuple(cases)


def classical_conditions(p: Number, eq: EquationParams) -> bool:
    """m >= 2, n >= 4 and U, U', ..., U'''' all vanishing at the cutoff."""
    return eq.m >= 2 and eq.n >= 4 and float(p) > 4


def classify_pointwise(p: Number, eq: EquationParams, wave: WaveParams,
                       rtol: float = 1e-9) -> SolutionClass:
    if p is None:
        return SolutionClass(Kind.UNCLASSIFIABLE)
    if not float(p) > 0:
        raise DomainError(f"cutoff power must be positive, got {p}")
    if not eq.compacton_capable:
        raise DomainError("classification needs m≠1 and n≠1")
    if classical_conditions(p, eq):
        return SolutionClass(Kind.CLASSICAL)
    cases = satisfied_cases(p, eq, kappa_of(eq, wave), rtol)
    if cases:
        return SolutionClass(Kind.COMPACTON, cases[0], cases)
    if float(_rational_or_float(p) * (eq.n if isinstance(p, Fraction) else float(eq.n))) > 1:
        return SolutionClass(Kind.WEAK)
    return SolutionClass(Kind.NOT_A_SOLUTION)


def classify_profile(profile: Profile, rtol: float = 1e-9) -> SolutionClass:
    if not profile.compact:
        raise NonCompact(f"{profile.family} has unbounded support")
    return classify_pointwise(profile.p, profile.eq, profile.wave, rtol)


# ---------------------------------------------------------------------------
# quadrature case analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseReport:
    quadrature_case: str
    pn_value: Optional[float]
    exists_weak: bool
    exists_compacton: bool
    compacton_cases: Tuple[int, ...] = ()
    vmax: Optional[float] = None
    vstar: Optional[float] = None
    pstar_condition: Optional[bool] = None
    threshold_case_text: Optional[float] = None
    threshold_closed_form: Optional[float] = None
    notes: Tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def vstar_of(B: float, A: float, m: float, n: float) -> Optional[float]:
    """Extremum V* = (B/(mA))^(n/(m-1)) of C - A V^(m/n) + B V^(1/n), if real."""
    if B == 0.0 or (B > 0) != (A > 0):
        return None
    return (B / (m * A)) ** (n / (m - 1.0))


def weak_thresholds(B: float, A: float, m: float, n: float):
    """Upper bound on C for a positive root, in two algebraically equal forms.

    Returns ``(case_text, closed_form)``: ``((1-m)/m) B V*^(1/n)`` and the
    power expression obtained by substituting V*.  None when no threshold
    applies.
    """
    vs = vstar_of(B, A, m, n)
    if vs is None:
        return None, None
    text = (1.0 - m) / m * B * vs ** (1.0 / n)
    if m > 1:
        closed = (m - 1.0) / m ** (m / (m - 1.0)) * (abs(B) ** m / abs(A)) ** (1.0 / (m - 1.0))
    else:
        closed = (1.0 - m) / m ** (m / (m - 1.0)) * (A / B ** m) ** (1.0 / (1.0 - m))
    return text, closed


def quadrature_case(rc: ReducedConstants, eq: EquationParams, rtol: float = 1e-9,
                    find_root: bool = True) -> CaseReport:
    from .quadrature import PotentialSpec, find_vmax  # local import: quadrature uses us

    E, C, B, A = rc.E, rc.C, rc.B, rc.A
    if A == 0.0:
        raise DegenerateError("A=0: the potential has no nonlinear term")
    m, n = float(eq.m), float(eq.n)
    vs = vstar_of(B, A, m, n)

    def root():
        if not find_root:
            return None
        try:
            return find_vmax(PotentialSpec(rc, eq.m, eq.n))
        except Exception:
            return None

    if E != 0.0:
        return CaseReport("E_nonzero", 1.0, False, False, vmax=root() if E > 0 else None,
                          vstar=vs, notes=("pn=1: no compacton of any kind",))
    if C != 0.0:
        text, closed = weak_thresholds(B, A, m, n)
        if C < 0:
            exists, cond = False, None
        elif m > 1:
            if A > 0:
                exists, cond = True, None
            else:
                cond = B < 0 and text is not None and C < text
                exists = bool(cond)
        else:
            if B < 0 or (B == 0 and A > 0):
                exists, cond = True, None
            elif A > 0 and B > 0:
                cond = C < text
                exists = bool(cond)
            else:
                exists, cond = False, None
        return CaseReport("C_leading", 2.0, exists, False, vmax=root() if exists else None,
                          vstar=vs, pstar_condition=cond, threshold_case_text=text,
                          threshold_closed_form=closed)
    if B == 0.0:
        return CaseReport("degenerate", None, False, False, vstar=vs,
                          notes=("no positive root exists",))
    kappa = B * (n + 1.0) * eq.b / (2.0 * n)
    if m > 1:
        p = 2 / (eq.n - 1) if eq.n != 1 else None
        pn = 2.0 * n / (n - 1.0) if n != 1 else math.inf
        roots = B > 0 and A > 0
        weak = roots and n > 1
        label = "B_leading"
    else:
        p = 2 / (eq.n - eq.m) if eq.n != eq.m else None
        pn = 2.0 * n / (n - m) if n != m else math.inf
        roots = A < 0 and B < 0
        weak = roots and n > m
        label = "A_leading"
    cases: Tuple[int, ...] = ()
    if weak and p is not None and p > 0 and eq.compacton_capable:
        cases = satisfied_cases(p, eq, kappa, rtol)
    return CaseReport(label, pn, weak, bool(cases), cases,
                      vmax=root() if roots else None, vstar=vs)
