"""Compare the compiled kernels against the pure-Python fallback.

The backend is chosen at import time from TORSIONLAB_PURE_PYTHON, so this
script re-runs itself in a subprocess per backend and prints a table.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _build_inputs():
    import random

    from torsionlab.laurent import LaurentPoly
    from torsionlab.linalg import Matrix, det_laurent
    from torsionlab.scalars import CycloNumber, field_degree

    rng = random.Random(0)

    def rand_poly(deg, order):
        width = field_degree(order)
        coeffs = [CycloNumber(order, [rng.randint(-9, 9) for _ in range(width)])
                  for _ in range(deg + 1)]
        return LaurentPoly(coeffs, 0)

    big_a = rand_poly(120, 4)
    big_b = rand_poly(120, 4)

    width12 = field_degree(12)
    zeta12 = [CycloNumber(12, [rng.randint(-9, 9) for _ in range(width12)])
              for _ in range(400)]

    det_rows = [[rand_poly(2, 3) for _ in range(5)] for _ in range(5)]
    det_m = Matrix(5, 5, det_rows)

    return {
        "laurent_product_deg120": lambda: big_a * big_b,
        "cyclo_products_zeta12": lambda: [x * y for x, y in
                                          zip(zeta12, reversed(zeta12))],
        "bareiss_det_5x5": lambda: det_laurent(det_m),
        "random_complex_torsion": lambda: _torsion_workload(),
    }


def _torsion_workload():
    import random

    from torsionlab import corpus
    from torsionlab.complexes import alexander_invariant, reidemeister_torsion

    rng = random.Random(1)
    out = []
    for _ in range(10):
        c = corpus.random_complex(rng)
        tau, _ = reidemeister_torsion(c)
        out.append(tau.unit_quotient(alexander_invariant(c, "chain")))
    return out


def run_worker(repeat: int) -> None:
    from torsionlab.kernels import BACKEND

    results = {"backend": BACKEND, "timings": {}}
    for name, fn in _build_inputs().items():
        best = min(_timed(fn) for _ in range(repeat))
        results["timings"][name] = best
    json.dump(results, sys.stdout)


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        run_worker(args.repeat)
        return 0

    runs = {}
    for label, env_value in (("compiled", ""), ("pure", "1")):
        env = dict(os.environ)
        if env_value:
            env["TORSIONLAB_PURE_PYTHON"] = env_value
        else:
            env.pop("TORSIONLAB_PURE_PYTHON", None)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__),
             "--worker", "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True)
        payload = json.loads(out.stdout)
        runs[label] = payload
        if label == "compiled" and payload["backend"] != "compiled":
            print("note: compiled extension unavailable, comparing pure "
                  "against itself")

    print(f"{'workload':30s} {'compiled (s)':>14s} {'pure (s)':>14s} "
          f"{'speedup':>9s}")
    for name in runs["compiled"]["timings"]:
        fast = runs["compiled"]["timings"][name]
        slow = runs["pure"]["timings"][name]
        ratio = slow / fast if fast > 0 else float("inf")
        print(f"{name:30s} {fast:14.4f} {slow:14.4f} {ratio:8.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
