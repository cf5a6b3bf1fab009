import datetime as dt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzycast import (
    FuzzySymbol,
    ReturnPoint,
    ReturnSeries,
    UniversePartition,
    fuzzify,
    interval_of,
    make_partition,
)


def returns_from(changes):
    start = dt.date(2014, 12, 26)
    return ReturnSeries(
        tuple(ReturnPoint(start + dt.timedelta(days=i), c) for i, c in enumerate(changes))
    )


def test_seven_intervals_over_default_range():
    part = make_partition(-7.0, 7.0, 7)
    assert part.interval_bounds(1) == (-7.0, -5.0)
    assert part.interval_bounds(2) == (-5.0, -3.0)
    assert part.interval_bounds(6) == (3.0, 5.0)
    assert part.interval_bounds(7) == (5.0, 7.0)
    assert part.width == 2.0


def test_two_intervals_bisect_the_range():
    part = make_partition(-7.0, 7.0, 2)
    assert part.bounds == (-7.0, 0.0, 7.0)


def test_fourteen_intervals_are_unit_width_and_contiguous():
    part = make_partition(-7.0, 7.0, 14)
    assert part.bounds[0] == -7.0 and part.bounds[-1] == 7.0
    for lo, hi in zip(part.bounds, part.bounds[1:]):
        assert hi - lo == pytest.approx(1.0, abs=1e-12)


def test_invalid_partition_arguments():
    with pytest.raises(ValueError):
        make_partition(-7.0, 7.0, 1)
    with pytest.raises(ValueError):
        make_partition(-7.0, 7.0, 36)
    with pytest.raises(ValueError):
        make_partition(7.0, -7.0, 7)


@pytest.mark.parametrize(
    "change,expected",
    [(5.58, 7), (-1.31, 3), (7.0, 7), (-9.0, 1), (-7.0, 1), (0.0, 4), (1.0, 5), (-1.0, 4)],
)
def test_interval_assignment(change, expected):
    part = make_partition(-7.0, 7.0, 7)
    assert interval_of(part, change) == FuzzySymbol(expected)


def test_midpoints_for_seven_intervals():
    part = make_partition(-7.0, 7.0, 7)
    assert part.midpoint(4) == 0.0
    assert part.midpoint(7) == 6.0
    assert part.midpoint(1) == -6.0
    with pytest.raises(ValueError):
        part.midpoint(0)
    with pytest.raises(ValueError):
        part.midpoint(8)


def test_fuzzify_known_changes():
    part = make_partition(-7.0, 7.0, 7)
    fs = fuzzify(part, returns_from([5.58, 0.65, -1.31, 1.20, -0.55, 1.02]))
    assert fs.symbols == (7, 4, 3, 5, 4, 5)
    assert fs.clamp_count == 0
    assert len(fs.dates) == 6


def test_fuzzify_empty_returns():
    part = make_partition(-7.0, 7.0, 7)
    fs = fuzzify(part, ReturnSeries(()))
    assert fs.symbols == () and fs.clamp_count == 0


def test_fuzzify_zero_changes_hit_center():
    part = make_partition(-7.0, 7.0, 7)
    fs = fuzzify(part, returns_from([0.0, 0.0, 0.0]))
    assert fs.symbols == (4, 4, 4)


def test_fuzzify_counts_clamped_inputs():
    part = make_partition(-7.0, 7.0, 7)
    fs = fuzzify(part, returns_from([-9.0, 0.0, 12.5]))
    assert fs.symbols == (1, 4, 7)
    assert fs.clamp_count == 2


partitions = st.builds(
    UniversePartition,
    d_min=st.just(-7.0),
    d_max=st.just(7.0),
    n=st.integers(min_value=2, max_value=35),
)
general_partitions = st.tuples(
    st.floats(min_value=-100.0, max_value=99.0, allow_nan=False),
    st.floats(min_value=0.5, max_value=50.0),
    st.integers(min_value=2, max_value=35),
).map(lambda t: UniversePartition(t[0], t[0] + t[1], t[2]))


@given(general_partitions, st.floats(min_value=0.0, max_value=1.0))
def test_exactly_one_interval_contains_each_point(part, frac):
    x = part.d_min + frac * (part.d_max - part.d_min)
    x = min(max(x, part.d_min), part.d_max)
    containing = [
        i
        for i in range(1, part.n + 1)
        if (part.bounds[i - 1] <= x < part.bounds[i]) or (i == part.n and x == part.d_max)
    ]
    assert len(containing) == 1
    assert containing[0] == part.interval_index(x)


@given(general_partitions)
def test_midpoints_sit_inside_their_intervals_and_increase(part):
    for i in range(1, part.n + 1):
        lo, hi = part.interval_bounds(i)
        assert lo < part.midpoint(i) < hi
    mids = part.midpoints
    assert all(a < b for a, b in zip(mids, mids[1:]))


@given(st.integers(min_value=1, max_value=17), st.floats(min_value=0.5, max_value=40.0))
def test_symmetric_odd_partition_centers_on_zero(half_n, v):
    n = 2 * half_n + 1
    part = UniversePartition(-v, v, n)
    assert part.midpoint((n + 1) // 2) == 0.0


@given(st.integers(min_value=1, max_value=17), st.floats(min_value=0.5, max_value=40.0))
def test_symmetric_even_partition_splits_at_zero(half_n, v):
    n = 2 * half_n
    part = UniversePartition(-v, v, n)
    assert part.bounds[n // 2] == 0.0


@given(general_partitions, st.floats(min_value=-200.0, max_value=200.0, allow_nan=False))
def test_midpoint_of_assigned_interval_is_within_half_width(part, x):
    sym = part.interval_index(x)
    clamped = min(max(x, part.d_min), part.d_max)
    assert abs(part.midpoint(sym) - clamped) <= part.width / 2 + 1e-9
