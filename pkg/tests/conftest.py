import math
import sys

import numpy as np
import pytest

from compacton_lab.draws import draw
from compacton_lab.families import FamilyId, make_profile
from compacton_lab.params import make_equation, make_wave


def cos_instance():
    """a=b=1, m=n=2, one transverse direction, kappa=3/4: u = cos(xi/4)^2, L = 2 pi."""
    return make_equation(1, 1, 1, 2, 2, 2), make_wave((1.0,), 1.75)


def line_instance(n=2):
    """m=n with nu = s|mu|^2, the line-compacton regime."""
    return make_equation(1, 1, 1, n, n, 2), make_wave((1.0,), 1.0)


def drawn_profiles(family, count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        eq, wave, extras = draw(family, rng)
        out.append(make_profile(family, eq, wave, extras))
    return out


@pytest.fixture
def cos_profile():
    eq, wave = cos_instance()
    return make_profile(FamilyId.CosCompacton, eq, wave)


@pytest.fixture
def lincos_profile():
    eq, wave = line_instance()
    return make_profile(FamilyId.LinCos, eq, wave)


COMPACT_FAMILIES = [f for f in FamilyId if f.value not in
                    ("SolitarySech", "HeavyTailHi", "SolitarySechSub", "HeavyTailSub")]
SOLITARY_FAMILIES = [FamilyId.SolitarySech, FamilyId.HeavyTailHi, FamilyId.SolitarySechSub,
                     FamilyId.HeavyTailSub]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = [mod.RESULTS[k] for k in sorted(mod.RESULTS)] if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
