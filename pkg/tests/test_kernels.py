import os
import subprocess
import sys

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from bihilbert import kernels
from bihilbert.kernels import (
    _mulmod_np,
    _prefix_ranks_modp_numba,
    _prefix_ranks_modp_numpy,
    prefix_ranks_bareiss,
    prefix_ranks_modp,
)

P = 2**61 - 1
P2 = 9223372036854775783  # largest prime below 2**63


def sympy_prefix_ranks(rows):
    return [sympy.Matrix([r[: c + 1] for r in rows]).rank() for c in range(len(rows[0]))]


small_matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 7).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_bareiss_matches_sympy(rows):
    assert prefix_ranks_bareiss(rows) == sympy_prefix_ranks(rows)


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_modp_paths_match_rational_rank_on_small_entries(rows):
    # entries are tiny, so no minor can vanish mod a 61-bit prime by accident
    mat = np.array([[v % P for v in r] for r in rows], dtype=np.uint64)
    expected = prefix_ranks_bareiss(rows)
    assert list(_prefix_ranks_modp_numba(mat, P)) == expected
    assert list(_prefix_ranks_modp_numpy(mat, P)) == expected


@pytest.mark.parametrize("p", [P, P2])
def test_numba_and_numpy_agree_on_full_width_entries(p):
    rng = np.random.default_rng(7)
    for m, n in [(5, 9), (12, 30), (20, 20), (31, 90)]:
        mat = rng.integers(0, p, size=(m, n), dtype=np.uint64, endpoint=False)
        mat[:, 3] = mat[:, 0]  # force a rank drop
        assert np.array_equal(_prefix_ranks_modp_numba(mat, p), _prefix_ranks_modp_numpy(mat, p))


def test_rank_drop_known_over_fp():
    # second row is 2 * first row mod p only
    inv2 = pow(2, -1, P)
    rows = [[1, 2], [inv2, 1]]
    mat = np.array(rows, dtype=np.uint64)
    assert list(prefix_ranks_modp(mat, P)) == [1, 1]
    assert prefix_ranks_bareiss(rows) == [1, 2]


def test_mulmod_against_python_ints():
    rng = np.random.default_rng(3)
    a = rng.integers(0, P2, size=200, dtype=np.uint64)
    b = rng.integers(0, P2, size=200, dtype=np.uint64)
    got = _mulmod_np(a, b, np.uint64(P2))
    assert [int(v) for v in got] == [int(x) * int(y) % P2 for x, y in zip(a, b)]
    for x, y in zip(a[:50], b[:50]):
        assert int(kernels._mulmod(x, y, np.uint64(P2))) == int(x) * int(y) % P2


def test_empty_and_bad_inputs():
    assert prefix_ranks_bareiss([]) == []
    assert list(prefix_ranks_modp(np.zeros((0, 3), np.uint64), P)) == [0, 0, 0]
    with pytest.raises(ValueError):
        prefix_ranks_modp(np.zeros((2, 2), np.uint64), 2**64 + 13)


@pytest.mark.parametrize("flag, expected", [("1", "False"), ("0", "True")])
def test_env_flag_selects_path(flag, expected):
    env = dict(os.environ, BIHILBERT_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from bihilbert import _accel; print(_accel.USE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == expected


def test_fallback_path_end_to_end():
    code = (
        "from bihilbert.oracle import config_from_grid, hilbert_matrix;"
        "print(hilbert_matrix(config_from_grid(['..X', '.X.', 'X..'])).tolist())"
    )
    env = dict(os.environ, BIHILBERT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "[[1, 1, 1], [1, 0, -1], [1, -1, 0]]"
