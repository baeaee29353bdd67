import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest
import sympy

from jacobidiag import kernel
from jacobidiag._modelim_py import DEFAULT_PRIME
from jacobidiag._modelim_py import ModEliminator as PyEliminator
from jacobidiag.linalg import ExactEliminator, exact_rank, markowitz_order, solve_combination

try:
    from jacobidiag._modelim import ModEliminator as CEliminator
except ImportError:  # extension not built
    CEliminator = None

P = DEFAULT_PRIME


def modp(v: Fraction) -> int:
    return v.numerator * pow(v.denominator, -1, P) % P


def random_system(rng):
    ncols, nrows = rng.randint(1, 12), rng.randint(1, 14)
    rows = []
    for _ in range(nrows):
        r = {c: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for c in rng.sample(range(ncols), rng.randint(1, ncols))}
        r = {c: v for c, v in r.items() if v}
        if r:
            rows.append(r)
    coeffs = [rng.randint(-2, 2) for _ in rows]
    target = {}
    for k, r in zip(coeffs, rows):
        for c, v in r.items():
            target[c] = target.get(c, 0) + k * v
    return ncols, rows, {c: v for c, v in target.items() if v}


def backends():
    out = [PyEliminator]
    if CEliminator is not None:
        out.append(CEliminator)
    return out


def test_backend_selection():
    assert kernel.BACKEND in ("compiled", "python")
    if CEliminator is not None:
        assert kernel.BACKEND == "compiled"


def test_pure_python_switch():
    env = dict(os.environ, JACOBI_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from jacobidiag import kernel; print(kernel.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("seed", range(4))
def test_eliminators_agree_with_sympy(seed):
    rng = random.Random(seed)
    for _ in range(50):
        ncols, rows, target = random_system(rng)
        if not rows:
            continue
        rank = sympy.Matrix([[r.get(c, 0) for c in range(ncols)] for r in rows]).rank()
        assert exact_rank(rows) == rank
        mods = [B(P, True) for B in backends()]
        exact = ExactEliminator(True, column_order=markowitz_order(rows))
        for r in rows:
            cols = sorted(r)
            vals = [modp(r[c]) for c in cols]
            added = {m.add(cols, vals) for m in mods}
            assert len(added) == 1
            exact.add(r)
        assert {m.rank for m in mods} == {rank} and exact.rank == rank
        if target:
            cols = sorted(target)
            vals = [modp(target[c]) for c in cols]
            exprs = [m.express(cols, vals) for m in mods]
            assert all(e is not None for e in exprs) and all(e == exprs[0] for e in exprs)
            sol = solve_combination(rows, target)
            check = {}
            for i, k in sol.items():
                for c, v in rows[i].items():
                    check[c] = check.get(c, 0) + k * v
            assert {c: v for c, v in check.items() if v} == target


def test_outside_span_detected():
    for B in backends():
        m = B(P, True)
        m.add([0, 1], [1, 1])
        assert m.express([0], [1]) is None
        assert not m.contains([0], [1])
        assert m.contains([0, 1], [2, 2])
    assert solve_combination([{0: Fraction(1), 1: Fraction(1)}], {0: Fraction(1)}) is None
