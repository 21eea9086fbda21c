import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcslab import fsm
from lcslab.core import SeedSpec, lcs_length, lcs_table, random_pair
from lcslab.fsm import (
    FROZEN_CONFIG,
    PAPER_FSM,
    FsmConfig,
    FsmSpec,
    UncalibratedConfigError,
    calibrate_fsm,
    candidate_configs,
    diff_table,
    equivalence_classes,
    fsm_lcs,
    fsm_row,
    fsm_rows,
    fsm_step,
    reachable_states,
    reconstruct_lcs,
)

from conftest import all_words

binary = st.text(alphabet="01", max_size=16)


# -- differential tables ------------------------------------------------------------
def test_diff_table_small():
    # l(1, .) = (0, 1, 1, 1), l(0, .) = 0
    assert diff_table("1", "101") == [(1, 1, 1)]
    assert diff_table("", "101") == []


def test_diff_table_second_row_from_oracle():
    table = lcs_table("10", "101")
    want = tuple(table[2][j] - table[1][j] for j in range(1, 4))
    assert diff_table("10", "101")[1] == want


@pytest.mark.parametrize("reading", fsm.READINGS)
def test_reconstruct_worked_example(reading):
    rows = diff_table("01101110", "101001011", reading)
    assert reconstruct_lcs(rows, reading=reading)[8][9] == 6


def test_reconstruct_zero_rows():
    assert reconstruct_lcs([], n=3) == [[0, 0, 0, 0]]
    assert reconstruct_lcs([], n=3, reading="horizontal") == [[0, 0, 0, 0]]


@pytest.mark.parametrize("reading", fsm.READINGS)
def test_reconstruct_inverts_diff_exhaustive(reading):
    for x in all_words(6):
        for y in all_words(6):
            rows = diff_table(x, y, reading)
            assert all(v in (0, 1) for r in rows for v in r)
            assert reconstruct_lcs(rows, len(y), reading) == lcs_table(x, y)


def test_bad_reading():
    with pytest.raises(ValueError):
        diff_table("0", "1", "diagonal")


# -- machine tables ----------------------------------------------------------------
def test_paper_tables_loaded():
    assert PAPER_FSM.transition == ((0, 0, 1, 1), (1, 0, 1, 1), (0, 2, 1, 3), (1, 2, 1, 3))
    assert PAPER_FSM.output == ((0, 0, 0, 0), (0, 1, 1, 1), (0, 0, 0, 0), (0, 1, 1, 1))


@pytest.mark.parametrize("state,pair,expected", [
    (0, "10", (1, 0)),
    (3, "11", (3, 1)),
    (1, "00", (1, 0)),
    (2, "01", (2, 0)),
    (1, "01", (0, 1)),
])
def test_fsm_step_lookups(state, pair, expected):
    assert fsm_step(PAPER_FSM, state, pair) == expected


def test_fsm_step_input_forms_agree():
    for s, code in itertools.product(range(4), range(4)):
        assert fsm_step(PAPER_FSM, s, code) == fsm_step(PAPER_FSM, s, fsm.COLUMNS[code])
        assert fsm_step(PAPER_FSM, s, (code >> 1, code & 1)) == fsm_step(PAPER_FSM, s, code)


@pytest.mark.parametrize("state,pair", [(4, "00"), (-1, "00"), (0, "02"), (0, 4), (0, (1, 2))])
def test_fsm_step_rejects_bad_labels(state, pair):
    with pytest.raises(ValueError):
        fsm_step(PAPER_FSM, state, pair)


def test_spec_text_roundtrip():
    assert FsmSpec.loads(PAPER_FSM.dumps()) == PAPER_FSM
    assert FsmConfig.loads(FROZEN_CONFIG.dumps()) == FROZEN_CONFIG


def test_spec_validation():
    with pytest.raises(ValueError):
        FsmSpec(((0, 0, 0, 5),), ((0, 0, 0, 0),))
    with pytest.raises(ValueError):
        FsmSpec(((0, 0, 0, 0),), ((0, 0, 0, 2),))
    with pytest.raises(ValueError):
        FsmSpec.loads("transition\n1: 0 0 0 0\noutput\n0: 0 0 0 0\n")


def test_reachability():
    # started where the calibrated rows start, only the {0, 1} half is used
    assert reachable_states(PAPER_FSM, 1) == {0, 1}
    assert reachable_states(PAPER_FSM, 3) == {0, 1, 2, 3}


def test_states_visited_on_long_runs():
    seen = set()
    for k in range(20):
        X, Y = random_pair(50, 200, SeedSpec(5, k))
        prev = (0,) * len(Y)
        alt = FsmConfig(3, "diff-high", "complement-y", "horizontal")
        for xi in X:
            state = alt.initial_state
            for d, yj in zip(prev, Y):
                seen.add(state)
                state, _ = fsm_step(PAPER_FSM, state, (d, yj ^ (xi == 0)))
            prev = fsm_row(prev, Y, xi, alt)
    assert seen == {0, 1, 2, 3}


def test_equivalent_states_found():
    assert equivalence_classes(PAPER_FSM) == [frozenset({0, 2}), frozenset({1, 3})]


@pytest.mark.xfail(strict=True, reason="states 0/2 and 1/3 of the published tables behave identically")
def test_no_two_states_equivalent():
    assert len(equivalence_classes(PAPER_FSM)) == 4


# -- rows and calibration --------------------------------------------------------------
def test_candidate_space_size():
    assert len(candidate_configs()) == 16
    assert len(set(candidate_configs("horizontal"))) == 16


def test_fsm_row_empty_y():
    assert fsm_row((), "", 1) == ()


def test_fsm_row_rejects_uncalibrated():
    with pytest.raises(UncalibratedConfigError):
        fsm_row((0, 0), "01", 1, FsmConfig(0, "y-high", "swap-tables", "horizontal"))
    with pytest.raises(UncalibratedConfigError):
        fsm_row((0, 0), "01", 1, FsmConfig(1, "diff-high", "complement-y", "vertical"))


def test_fsm_row_length_check():
    with pytest.raises(ValueError):
        fsm_row((0,), "01", 1)


def test_fsm_second_row_example():
    # X = 10, Y = 101: second row from the first, x_2 = 0
    reading = FROZEN_CONFIG.reading
    first, second = diff_table("10", "101", reading)
    assert fsm_row(first, "101", 0) == second


def test_frozen_rows_match_oracle_exhaustive():
    reading = FROZEN_CONFIG.reading
    for x in all_words(6):
        for y in all_words(6):
            assert list(fsm_rows(x, y)) == diff_table(x, y, reading), (x, y)


@given(binary, binary)
def test_fsm_lcs_matches_dp(x, y):
    assert fsm_lcs(x, y) == lcs_length(x, y)


def test_fsm_lcs_random_pairs():
    import numpy as np

    rng = np.random.default_rng(3)
    for k in range(1000):
        m, n = rng.integers(0, 257, size=2)
        X, Y = random_pair(int(m), int(n), SeedSpec(123, k))
        assert fsm_lcs(X, Y) == lcs_length(X, Y)


def test_calibration_reports_first_mismatch():
    pairs = [(x, y) for x in all_words(3) for y in all_words(3)]
    report = calibrate_fsm(reading="vertical", pairs=pairs)
    assert len(report.results) == 16
    assert report.survivors == []
    for r in report.results:
        mm = r.mismatch
        want = diff_table(mm.X, mm.Y, "vertical")[mm.i - 1][mm.j - 1]
        assert want == mm.expected != mm.got
    assert report.render().count("FAIL") == 16


def test_vertical_rows_are_not_a_function_of_previous_rows():
    # why no wiring can work for the vertical reading: two pairs share
    # (previous vertical row, Y, x_i) but disagree on the next row
    seen = {}
    for x in all_words(4):
        for y in all_words(3):
            rows = [(0,) * len(y)] + diff_table(x, y, "vertical")
            for i in range(1, len(x) + 1):
                key = (rows[i - 1], y, x[i - 1])
                if key in seen and seen[key] != rows[i]:
                    return
                seen[key] = rows[i]
    pytest.fail("vertical differential rows unexpectedly look row-recursive")


def test_calibration_horizontal_small_suite():
    pairs = [(x, y) for x in all_words(4) for y in all_words(4)]
    report = calibrate_fsm(reading="horizontal", pairs=pairs)
    assert report.survivors == list(fsm.CALIBRATED_CONFIGS)
    assert report.survivors[0] == FROZEN_CONFIG
