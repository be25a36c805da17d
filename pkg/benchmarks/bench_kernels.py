"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py --repeat 5 --size 20000 --targets 200

Both flavours are imported directly, so the COMPACTON_LAB_NUMBA flag does not
matter here.  Each row reports the best of ``--repeat`` runs after one
warm-up call (which also triggers JIT compilation) and the largest absolute
difference between the two results.
"""

import argparse
import math
import time

import numpy as np

from compacton_lab import _kernels as K
from compacton_lab.params import make_equation, make_wave, reduced_constants
from compacton_lab.quadrature import PotentialSpec, solve_quadrature


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(size, targets):
    rng = np.random.default_rng(0)
    u = rng.uniform(-10, 10, size)
    a, c = K.landen_sequence(1 / math.sqrt(2))
    yield "sncn", (lambda: K._sncn_loops(u, a, c)), (lambda: K._sncn_numpy(u, a, c))

    eq, w = make_equation(1, 1, 1, 2, 2, 2), make_wave((1.0,), 1.75)
    spec = PotentialSpec(reduced_constants(eq, w), 2, 2)
    sol = solve_quadrature(spec)
    coef, expo = spec.coeffs, spec.exponents
    aux = sol.aux
    x, wts = K.tanh_sinh_rule(sol.level)
    zmax = math.sqrt(sol.vmax - sol.split)
    s = np.array([zmax])  # the adaptive half-width loop integrates one panel at a time
    yield ("panel_F", lambda: K._panel_F_loops(s, 1, coef, expo, aux, x, wts),
           lambda: K._panel_F_numpy(s, 1, coef, expo, aux, x, wts))
    xi = np.ascontiguousarray(np.linspace(0.0, sol.xi_split, targets))
    yield ("invert_panel", lambda: K._invert_loops(xi, zmax, 1, coef, expo, aux, x, wts),
           lambda: K._invert_numpy(xi, zmax, 1, coef, expo, aux, x, wts))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=20000, help="points per sncn call")
    ap.add_argument("--targets", type=int, default=200,
                    help="abscissae per inversion call (the profile sample count)")
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not installed; only the numpy kernels exist")
        return 1
    print(f"{'kernel':<14s}{'numba [ms]':>12s}{'numpy [ms]':>12s}{'speed-up':>10s}"
          f"{'max diff':>11s}")
    for name, fast, slow in cases(args.size, args.targets):
        diff = float(np.max(np.abs(np.asarray(fast()) - np.asarray(slow()))))
        tf, ts = best_of(fast, args.repeat), best_of(slow, args.repeat)
        print(f"{name:<14s}{1e3 * tf:12.3f}{1e3 * ts:12.3f}{ts / tf:10.1f}{diff:11.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
