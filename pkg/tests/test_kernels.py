"""The compiled kernels and the pure-Python fallback must agree exactly."""

import os
import random
import subprocess
import sys

import pytest
from gmpy2 import mpq

from torsionlab import _kernels_py
from torsionlab.scalars import CycloNumber, field_degree

_compiled = pytest.importorskip("torsionlab._kernels")


def _rand_mpq(rng):
    return mpq(rng.randint(-30, 30), rng.randint(1, 9))


def _rand_cyclo(rng, order=12):
    width = field_degree(order)
    return CycloNumber(order, [rng.randint(-5, 5) for _ in range(width)])


@pytest.mark.parametrize("make", [_rand_mpq, _rand_cyclo])
def test_convolve_backends_agree(make):
    rng = random.Random(2)
    for _ in range(25):
        a = [make(rng) for _ in range(rng.randint(1, 12))]
        b = [make(rng) for _ in range(rng.randint(1, 12))]
        assert _compiled.convolve(a, b) == _kernels_py.convolve(a, b)


def test_reduce_tail_backends_agree():
    rng = random.Random(3)
    deg = 4
    # rows mimic a power-basis reduction table: a tuple of coordinate tuples
    rows = tuple(tuple(_rand_mpq(rng) for _ in range(deg)) for _ in range(6))
    for _ in range(25):
        coeffs = [_rand_mpq(rng) for _ in range(rng.randint(deg, deg + 6))]
        assert (_compiled.reduce_tail(coeffs, deg, rows)
                == _kernels_py.reduce_tail(coeffs, deg, rows))


def test_poly_divmod_backends_agree_and_are_exact():
    rng = random.Random(4)
    for _ in range(25):
        num = [_rand_mpq(rng) for _ in range(rng.randint(1, 10))]
        den = [_rand_mpq(rng) for _ in range(rng.randint(1, 6))]
        if den[-1] == 0:
            den[-1] = mpq(1)
        qc, rc = _compiled.poly_divmod(num, den)
        qp, rp = _kernels_py.poly_divmod(num, den)
        assert qc == qp and rc == rp
        # num == q * den + r, coefficient by coefficient
        recombined = [mpq(0)] * len(num)
        if qc:
            for i, c in enumerate(_kernels_py.convolve(qc, den)):
                recombined[i] += c
        for i, c in enumerate(rc):
            recombined[i] += c
        assert recombined == [mpq(x) for x in num]


def test_mat_mul_backends_agree():
    rng = random.Random(5)
    for _ in range(25):
        n, k, m = (rng.randint(1, 5) for _ in range(3))
        a = [[_rand_mpq(rng) for _ in range(k)] for _ in range(n)]
        b = [[_rand_mpq(rng) for _ in range(m)] for _ in range(k)]
        assert _compiled.mat_mul(a, b) == _kernels_py.mat_mul(a, b)


def test_env_var_selects_pure_backend():
    env = dict(os.environ, TORSIONLAB_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from torsionlab.kernels import BACKEND; print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"
