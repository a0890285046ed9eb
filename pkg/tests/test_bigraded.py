import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bihilbert.bigraded import (
    DeltaMatrix,
    Direction,
    HilbertMatrix,
    MatrixParseError,
    NegativeCount,
    StabilizationNotReached,
    delta_from_hilbert,
    directional_difference,
    from_ascii,
    from_json,
    gmr_check,
    hilbert_from_delta,
    line_profiles,
    stabilization_index,
    to_ascii,
    to_json,
    transpose,
)
from bihilbert.oracle import config_from_grid, evaluation_rank, hilbert_grid, hilbert_matrix, random_config

from conftest import fuzz_config
from golden import ANTI_DX, ANTI_GRID, HOOK_DX, BUILD_STAGES, SCHEME31_GRID

ANTI = DeltaMatrix(ANTI_DX)
HOOK = DeltaMatrix(HOOK_DX)

int_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-3, 1), min_size=n, max_size=n), min_size=m, max_size=m)
    )
).filter(lambda rows: any(any(r) for r in rows))


def test_trimmed_storage():
    d = DeltaMatrix([[1, 1, 0], [1, 0, 0], [0, 0, 0]])
    assert d.tolist() == [[1, 1], [1, 0]]
    assert (d.a, d.b, d.degree) == (1, 1, 3)
    assert d[5, 5] == 0 and d[-1, 0] == 0
    with pytest.raises(ValueError):
        DeltaMatrix([[0, 0]])


def test_entries_are_read_only():
    with pytest.raises(ValueError):
        ANTI.entries[0, 0] = 7


# -- delta_from_hilbert / hilbert_from_delta -----------------------------------

def test_delta_from_constant_grid():
    assert delta_from_hilbert(np.ones((2, 2), int)) == DeltaMatrix([[1]])


def test_delta_from_three_general_points():
    # m(1,0) = m(0,1) = 2, m(1,1) = 3; one guard row and column appended
    m = [[1, 2, 3, 3],
         [2, 3, 3, 3],
         [3, 3, 3, 3],
         [3, 3, 3, 3]]
    assert delta_from_hilbert(m) == ANTI


def test_unguarded_grid_is_rejected():
    m = [[1, 2, 3], [2, 3, 3], [3, 3, 3]]
    with pytest.raises(StabilizationNotReached):
        delta_from_hilbert(m)
    with pytest.raises(StabilizationNotReached):
        delta_from_hilbert([[1, 2, 2]])


@pytest.mark.parametrize("seed", range(10))
def test_delta_of_oracle_grid_sums_to_point_count(seed):
    cfg = random_config(4, 4, 0.6, seed)
    grid = hilbert_grid(cfg, 5, 5)
    assert delta_from_hilbert(grid).degree == cfg.degree


def test_hilbert_from_delta_values():
    assert hilbert_from_delta(DeltaMatrix([[1]]), 5, 7) == 1
    assert hilbert_from_delta(ANTI, 1, 1) == 3
    assert hilbert_from_delta(ANTI, -1, 2) == 0
    final = DeltaMatrix(BUILD_STAGES[-1])
    assert hilbert_from_delta(final, 100, 100) == 31
    cfg = config_from_grid(SCHEME31_GRID, seed=3)
    assert cfg.degree == 31
    assert evaluation_rank(cfg, final.a, final.b) == 31


@given(int_matrices)
def test_round_trip_through_hilbert_view(rows):
    d = DeltaMatrix(rows)
    m = HilbertMatrix(d)
    assert delta_from_hilbert(m.window(d.a + 2, d.b + 2)) == d
    for i in range(d.a + 3):
        for j in range(d.b + 3):
            assert m(i, j) == hilbert_from_delta(d, i, j)


def test_hilbert_view_monotone_and_stable():
    m = HilbertMatrix(DeltaMatrix(BUILD_STAGES[-1]))
    w = m.window(10, 12)
    assert (np.diff(w, axis=0) >= 0).all() and (np.diff(w, axis=1) >= 0).all()
    assert w[7:, 8:].min() == w.max() == 31


# -- directional differences --------------------------------------------------

def test_directional_difference_single_point():
    a = directional_difference(DeltaMatrix([[1]]), Direction.ROW).values
    assert a[0, 0] == 1 and a[0, 1] == 0


def test_directional_difference_hook_row0():
    a = directional_difference(HOOK, Direction.ROW).values
    assert a[0].tolist() == [1, 1, 1, 0]


@given(int_matrices)
def test_directional_difference_identities(rows):
    d = DeltaMatrix(rows)
    a = directional_difference(d, Direction.ROW).values
    b = directional_difference(d, Direction.COL).values
    c = d.padded(d.a + 2, d.b + 2)
    a_prev = np.vstack([np.zeros((1, a.shape[1]), int), a[:-1]])
    b_prev = np.hstack([np.zeros((b.shape[0], 1), int), b[:, :-1]])
    assert np.array_equal(c, a - a_prev)
    assert np.array_equal(c, b - b_prev)
    assert np.array_equal(directional_difference(d.T, Direction.ROW).values,
                          directional_difference(d, Direction.COL).values.T)


def test_directional_difference_matches_hilbert_definition():
    d = DeltaMatrix(BUILD_STAGES[-1])
    m = HilbertMatrix(d)
    a = directional_difference(d, Direction.ROW).values
    for i in range(d.a + 2):
        for j in range(d.b + 2):
            assert a[i, j] == m(i, j) - m(i, j - 1)


# -- stabilisation indices ----------------------------------------------------

def test_stabilization_index_examples():
    assert stabilization_index(DeltaMatrix([[1]]), fix_j=0) == 0
    assert stabilization_index(ANTI, fix_j=0) == 2
    assert stabilization_index(HOOK, fix_i=0) == 2
    with pytest.raises(ValueError):
        stabilization_index(ANTI)


@pytest.mark.parametrize("seed", range(20))
def test_stabilization_at_zero_is_support_bound(seed):
    d = hilbert_matrix(fuzz_config(seed))
    assert stabilization_index(d, fix_j=0) == d.a
    assert stabilization_index(d, fix_i=0) == d.b


# -- structural checks --------------------------------------------------------

def test_gmr_check_accepts_antidiagonal():
    assert gmr_check(ANTI).ok


def test_gmr_check_condition_two():
    rep = gmr_check(DeltaMatrix([[1, 1], [-1, 1]]))
    assert not rep.ok and rep.condition == 2
    assert rep.witness == ((1, 0), (1, 1))


def test_gmr_check_condition_one():
    rep = gmr_check(DeltaMatrix([[1, 2]]))
    assert (rep.ok, rep.condition, rep.witness) == (False, 1, ((0, 1),))


def test_gmr_check_condition_three():
    rep = gmr_check(DeltaMatrix([[1, 1], [1, -2]]))
    assert not rep.ok and rep.condition == 3


@pytest.mark.parametrize("seed", range(200))
def test_gmr_check_passes_on_oracle_output(seed):
    cfg = random_config(5, 5, 0.2 + 0.8 * (seed % 10) / 10, seed)
    assert gmr_check(hilbert_matrix(cfg)).ok


def test_line_profiles_examples():
    single = line_profiles(DeltaMatrix([[1]]))
    assert single.row_profile == {1: 1} and single.col_profile == {1: 1}
    prof = line_profiles(HOOK)
    assert prof.row_profile == {1: 2, 2: 1}
    assert prof.col_profile == {1: 2, 2: 1}


def test_line_profiles_negative_count():
    with pytest.raises(NegativeCount):
        line_profiles(DeltaMatrix([[1, 0, 1]]))


@pytest.mark.parametrize("seed", range(100))
def test_line_profiles_match_incidence(seed):
    cfg = fuzz_config(seed)
    d = hilbert_matrix(cfg)
    prof = line_profiles(d)
    rows, cols = cfg.incidence_profiles()
    assert prof.row_profile == rows and prof.col_profile == cols
    assert sum(prof.row_profile.values()) == d.a + 1
    assert sum(k * v for k, v in prof.row_profile.items()) == cfg.degree
    assert line_profiles(d.T) == prof.swapped()


# -- transpose ----------------------------------------------------------------

def test_transpose_examples():
    assert transpose(DeltaMatrix([[1]])) == DeltaMatrix([[1]])
    assert transpose(ANTI) == ANTI
    assert transpose(transpose(HOOK)) == HOOK


@pytest.mark.parametrize("seed", range(15))
def test_transpose_matches_swapped_oracle(seed):
    cfg = fuzz_config(seed)
    assert transpose(hilbert_matrix(cfg)) == hilbert_matrix(cfg.swap())


# -- serialisation ------------------------------------------------------------

def test_ascii_layout():
    assert to_ascii(ANTI) == " 1  1  1\n 1  0 -1\n 1 -1  0"


@given(int_matrices)
@settings(max_examples=60)
def test_ascii_and_json_round_trip(rows):
    d = DeltaMatrix(rows)
    assert from_ascii(to_ascii(d)) == d
    assert from_json(to_json(d)) == d


def test_json_schema():
    assert to_json(HOOK) == '{"rows": 3, "cols": 3, "delta": [[1, 1, 1], [1, 0, 0], [1, 0, -1]]}'


@pytest.mark.parametrize("text", [
    '{"rows": 2, "cols": 1, "delta": [[1]]}',
    '{"rows": 1, "cols": 2, "delta": [[1, 0]]}',
    '{"delta": [[1]]}',
    "not json",
])
def test_json_rejects_bad_documents(text):
    with pytest.raises(MatrixParseError):
        from_json(text)


def test_ascii_rejects_ragged():
    with pytest.raises(MatrixParseError):
        from_ascii("1 1\n1")
