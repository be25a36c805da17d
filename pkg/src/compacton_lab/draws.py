"""Random valid parameter draws for every family (used by tests and the CLI)."""

from __future__ import annotations

import math
from fractions import Fraction as F
from typing import Dict, Tuple

import numpy as np

from .errors import ParityError
from .families import FamilyId, make_profile
from .params import EquationParams, WaveParams, make_equation, make_wave

_N_CHOICES = {
    "lin": [F(2), F(3, 2), F(2, 5), F(4, 3), F(1, 3), F(5, 3), F(3, 5), F(1, 5), F(5, 2), F(3)],
    "linmixed": [F(1, 3), F(1, 5), F(3, 5), F(3), F(5, 3), F(3, 7), F(7, 5), F(5, 7)],
    "window": [F(2), F(3, 2), F(5, 2), F(4, 3), F(5, 3), F(7, 5), F(7, 3), F(9, 5), F(11, 5)],
    "zero_kappa": [F(2, 3), F(3, 2), F(1, 5), F(2, 5), F(4, 3), F(2), F(3), F(1, 3), F(6, 5)],
    "alg_zero": [F(2, 3), F(3, 2), F(1, 5), F(4, 3), F(3), F(2, 5), F(6, 5), F(1, 3)],
    "negb": [F(3, 4), F(5, 7), F(2, 3), F(4, 5), F(3, 5), F(5, 6), F(7, 9)],
    "nonconvex": [F(3, 2), F(6, 5), F(4, 3), F(5, 3), F(7, 4), F(5, 4)],
    "sech": [F(2), F(3, 2), F(3), F(5, 2), F(9, 5)],
    "heavy_hi": [F(9, 5), F(3, 2), F(4, 3), F(5, 3), F(6, 5)],
    "sech_sub": [F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(1, 5)],
    "heavy_sub": [F(3, 4), F(2, 3), F(3, 5), F(4, 5), F(5, 6)],
}


def _mag(rng) -> float:
    return float(rng.uniform(0.5, 2.0))


def _geometry(rng) -> Tuple[int, int, Tuple[float, ...]]:
    N = int(rng.choice([1, 2, 3]))
    if N == 1:
        return N, 0, ()
    s = int(rng.choice([-1, 1]))
    mu = tuple(float(v) for v in rng.uniform(-1.5, 1.5, size=N - 1))
    return N, s, mu


def _eq_wave(a, b, m, n, kappa, rng) -> Tuple[EquationParams, WaveParams]:
    N, s, mu = _geometry(rng)
    eq = make_equation(a, b, s, m, n, N)
    nu = kappa + s * math.fsum(v * v for v in mu)
    return eq, make_wave(mu, nu)


def draw(family, rng: np.random.Generator, max_tries: int = 200
         ) -> Tuple[EquationParams, WaveParams, Dict[str, float]]:
    """A random (eq, wave, extras) triple for which make_profile succeeds."""
    family = FamilyId(family)
    for _ in range(max_tries):
        eq, wave, extras = _draw_once(family, rng)
        try:
            make_profile(family, eq, wave, extras)
        except ParityError:
            continue
        return eq, wave, extras
    raise RuntimeError(f"no valid draw found for {family}")


def _pick(rng, key):
    choices = _N_CHOICES[key]
    return choices[int(rng.integers(len(choices)))]


def _draw_once(family, rng):
    sg = float(rng.choice([-1.0, 1.0]))
    extras: Dict[str, float] = {}
    if family in (FamilyId.LinCos, FamilyId.LinSin, FamilyId.LinMixed):
        n = _pick(rng, "linmixed" if family is FamilyId.LinMixed else "lin")
        a, b = sg * _mag(rng), sg * _mag(rng)
        extras["alpha"] = float(rng.uniform(0.5, 2.0))
        if family is FamilyId.LinMixed:
            extras["root_index"] = float(rng.integers(1, 3))
            extras["phase_sign"] = float(rng.choice([-1.0, 1.0]))
        eq, wave = _eq_wave(a, b, n, n, 0.0, rng)
        return eq, wave, extras
    if family in (FamilyId.CosCompacton, FamilyId.SinCompacton, FamilyId.AlgGeneral):
        n = _pick(rng, "window")
        m = n if family is not FamilyId.AlgGeneral else (n + 1) / 2
        eq, wave = _eq_wave(sg * _mag(rng), sg * _mag(rng), m, n, sg * _mag(rng), rng)
        return eq, wave, extras
    if family in (FamilyId.CnZeroKappa, FamilyId.SnZeroKappa, FamilyId.AlgZeroKappa):
        key = "alg_zero" if family is FamilyId.AlgZeroKappa else "zero_kappa"
        n = _pick(rng, key)
        m = n / 2 if family is FamilyId.AlgZeroKappa else 2 * n
        extras["alpha"] = float(rng.uniform(0.5, 2.0))
        eq, wave = _eq_wave(sg * _mag(rng), sg * _mag(rng), m, n, 0.0, rng)
        return eq, wave, extras
    if family in (FamilyId.CnGeneral, FamilyId.SnGeneral):
        n = _pick(rng, "window")
        eq, wave = _eq_wave(_mag(rng), _mag(rng), 2 * n - 1, n, _mag(rng), rng)
        return eq, wave, extras
    if family in (FamilyId.CnNegB, FamilyId.SnNegB):
        n = _pick(rng, "negb")
        eq, wave = _eq_wave(_mag(rng), -_mag(rng), 2 * n - 1, n, _mag(rng), rng)
        return eq, wave, extras
    if family is FamilyId.AlgNonconvex:
        n = _pick(rng, "nonconvex")
        eq, wave = _eq_wave(sg * _mag(rng), -sg * _mag(rng), 2 - n, n, sg * _mag(rng), rng)
        return eq, wave, extras
    if family is FamilyId.SolitarySech:
        m, n = _pick(rng, "sech"), F(1)
    elif family is FamilyId.HeavyTailHi:
        m = _pick(rng, "heavy_hi")
        n = 2 - m
    elif family is FamilyId.SolitarySechSub:
        m = _pick(rng, "sech_sub")
        n = m
    else:
        m = _pick(rng, "heavy_sub")
        n = 2 * m - 1
    b = sg * _mag(rng)
    if family in (FamilyId.SolitarySech, FamilyId.HeavyTailHi):
        a, kappa = sg * _mag(rng), sg * _mag(rng)
    else:
        a, kappa = -sg * _mag(rng), -sg * _mag(rng)
    eq, wave = _eq_wave(a, b, m, n, kappa, rng)
    return eq, wave, extras
