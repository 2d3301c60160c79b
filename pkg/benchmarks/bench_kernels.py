"""Time the compiled and numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints the best-of-``repeat`` wall time per call for each kernel and the
speed-up of the compiled backend.  Outputs are cross-checked before timing.
"""
import argparse
import timeit

import numpy as np

from doublejc import kernels
from doublejc.model import embed_array


def _inputs(rng):
    z = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    coeffs = z / np.linalg.norm(z)
    params = (1.0, 1.3, 0.7, 1.1, 0.9, 1.4)
    times = np.linspace(0, 50, 2000)
    psi = embed_array(np.tile(coeffs, (2000, 1))).reshape(2000, 4, 4)
    x = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    herm = x + x.conj().T
    return {
        "trajectory (2000 times)": lambda impl: impl.trajectory(coeffs, params, times),
        "wedge_batch (2000 states)": lambda impl: impl.wedge_batch(psi),
        "jacobi_eigh (8x8)": lambda impl: impl.jacobi_eigh(herm),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled backend not built; timing the numpy backend only")
    cases = _inputs(np.random.default_rng(0))
    print(f"{'kernel':<28}" + "".join(f"{n:>14}" for n in sorted(impls)) + f"{'speed-up':>10}")
    for name, call in cases.items():
        ref = call(impls["python"])
        for impl in impls.values():
            out = call(impl)
            got = out[0] if isinstance(out, tuple) else out
            want = ref[0] if isinstance(ref, tuple) else ref
            assert np.allclose(got, want, atol=1e-12), name
        best = {}
        for key in sorted(impls):
            timer = timeit.Timer(lambda: call(impls[key]))
            number, _ = timer.autorange()
            best[key] = min(timer.repeat(args.repeat, number)) / number
        row = "".join(f"{best[k] * 1e6:>11.1f} us" for k in sorted(best))
        ratio = best["python"] / best["cython"] if "cython" in best else float("nan")
        print(f"{name:<28}{row}{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
