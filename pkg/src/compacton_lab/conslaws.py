"""Conservation laws of the K_N(m,n) equation as density/flux pieces.

Each law is returned as lists of additive pieces for the density T, the
x-flux X and the transverse fluxes Y_i, so that callers can both sum them
and measure the size of the individual contributions (the natural scale for
a relative error when the sum itself cancels to zero).

Fluxes use the compact derivatives (u^m)_x, (u^n)_xx, (u^n)_xxx rather than
their chain-rule expansions, which contain u^(n-3) and blow up at nodes.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Dict, List, Sequence

import numpy as np

from .errors import LawNotApplicable
from .params import EquationParams, WaveParams, is_zero_kappa


class ConsLawId(str, Enum):
    TopologicalCharge = "TopologicalCharge"
    Mass = "Mass"
    WeightedMassCos = "WeightedMassCos"
    WeightedMassSin = "WeightedMassSin"

    def __str__(self) -> str:
        return self.value


WEIGHTED = (ConsLawId.WeightedMassCos, ConsLawId.WeightedMassSin)


def law_applicable(law, eq: EquationParams, wave: WaveParams) -> bool:
    law = ConsLawId(law)
    if law not in WEIGHTED:
        return True
    return eq.m == eq.n and is_zero_kappa(eq, wave) and eq.a / eq.b > 0


def require_applicable(law, eq, wave) -> None:
    if not law_applicable(law, eq, wave):
        raise LawNotApplicable(
            f"{law} needs m=n, ν=s|μ|² and sgn(a)=sgn(b)")


def applicable_laws(eq, wave) -> List[ConsLawId]:
    return [law for law in ConsLawId if law_applicable(law, eq, wave)]


def pieces(law, eq: EquationParams, wave: WaveParams, jet: Dict) -> Dict[str, list]:
    """Density and fluxes of ``law`` from a jet of field derivatives.

    ``jet`` holds arrays: t, x, y (list per transverse axis), u, u_t, u_x,
    u_y (list), um (u^m), um_x, v_xx, v_xxx, with v = u^n.
    """
    law = ConsLawId(law)
    a, b, s = eq.a, eq.b, eq.s
    mu = wave.mu
    core = [jet["u_t"], a * jet["um_x"], b * jet["v_xxx"]]
    if law is ConsLawId.TopologicalCharge:
        return {"T": [np.zeros_like(jet["u"])], "X": core,
                "Y": [[s * uy] for uy in jet["u_y"]]}
    if law is ConsLawId.Mass:
        xi = jet["x"] - wave.nu * jet["t"]
        for m_i, y_i in zip(mu, jet["y"]):
            xi = xi + m_i * y_i
        X = [xi * c for c in core] + [-a * jet["um"], -b * jet["v_xx"]]
        Y = [[s * xi * uy, -s * m_i * jet["u"]] for m_i, uy in zip(mu, jet["u_y"])]
        return {"T": [-jet["u"]], "X": X, "Y": Y}
    require_applicable(law, eq, wave)
    omega = math.sqrt(eq.a / eq.b)
    zeta = jet["x"] - s * wave.mu2 * jet["t"]
    for m_i, y_i in zip(mu, jet["y"]):
        zeta = zeta + m_i * y_i
    if law is ConsLawId.WeightedMassCos:
        Q = -np.sin(omega * zeta)
        Qp = -omega * np.cos(omega * zeta)
    else:
        Q = np.cos(omega * zeta)
        Qp = -omega * np.sin(omega * zeta)
    X = [Q * jet["u_t"], Q * b * jet["v_xxx"], -b * Qp * jet["v_xx"]]
    Y = [[s * Q * uy, -s * m_i * Qp * jet["u"]] for m_i, uy in zip(mu, jet["u_y"])]
    return {"T": [-Qp * jet["u"]], "X": X, "Y": Y}


def first_integral_pieces(law, eq, wave, pcs) -> List[np.ndarray]:
    """Pieces of X + mu.Y - nu T."""
    out = list(pcs["X"])
    for m_i, ys in zip(wave.mu, pcs["Y"]):
        out.extend(m_i * y for y in ys)
    out.extend(-wave.nu * t for t in pcs["T"])
    return out
