import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzycast import (
    QuerySuffix,
    SymbolSequence,
    build_index,
    match_degrees,
    match_degrees_naive,
)

WORKED_TRAINING = SymbolSequence((1, 3, 2, 2, 1, 3, 1), alphabet_size=3)
WORKED_QUERY = QuerySuffix((2, 1, 3), max_degree=3)
WORKED_EXPECTED = ({2: 1, 1: 1}, {2: 1, 1: 1}, {1: 1})


@pytest.mark.parametrize("matcher", [match_degrees, match_degrees_naive])
def test_worked_example(matcher):
    result = matcher(WORKED_TRAINING, WORKED_QUERY)
    assert result.depth == 3
    assert tuple(dict(s.successor_counts) for s in result.stats) == WORKED_EXPECTED
    assert [s.total for s in result.stats] == [2, 2, 1]
    assert [s.degree for s in result.stats] == [1, 2, 3]


@pytest.mark.parametrize("matcher", [match_degrees, match_degrees_naive])
def test_unseen_last_symbol_matches_nothing(matcher):
    training = SymbolSequence((1, 2, 1, 2), alphabet_size=3)
    result = matcher(training, QuerySuffix((3,), max_degree=1))
    assert result.depth == 0 and result.stats == ()


@pytest.mark.parametrize("matcher", [match_degrees, match_degrees_naive])
def test_single_symbol_text_closed_form(matcher):
    length = 12
    training = SymbolSequence((1,) * length, alphabet_size=1)
    result = matcher(training, QuerySuffix((1,) * 5, max_degree=5))
    assert result.depth == 5
    for stats in result.stats:
        # a run of d ones with a successor starts at length - d positions
        assert dict(stats.successor_counts) == {1: length - stats.degree}


@pytest.mark.parametrize("matcher", [match_degrees, match_degrees_naive])
def test_match_ending_at_text_end_is_not_counted(matcher):
    # the only occurrence of the last symbol is the final position
    training = SymbolSequence((1, 1, 2), alphabet_size=2)
    result = matcher(training, QuerySuffix((1, 2), max_degree=2))
    assert result.depth == 0


def test_empty_training_rejected():
    empty = SymbolSequence((), alphabet_size=3)
    query = QuerySuffix((1,), max_degree=1)
    with pytest.raises(ValueError):
        match_degrees(empty, query)
    with pytest.raises(ValueError):
        match_degrees_naive(empty, query)
    with pytest.raises(ValueError):
        build_index(empty)


def test_invalid_query_and_sequence_arguments():
    with pytest.raises(ValueError):
        QuerySuffix((), max_degree=1)
    with pytest.raises(ValueError):
        QuerySuffix((1, 2), max_degree=3)
    with pytest.raises(ValueError):
        QuerySuffix((1, 2), max_degree=0)
    with pytest.raises(ValueError):
        SymbolSequence((1, 5), alphabet_size=3)
    with pytest.raises(ValueError):
        SymbolSequence((0,), alphabet_size=3)


def test_index_is_reusable_across_queries():
    index = build_index(WORKED_TRAINING)
    for query in (WORKED_QUERY, QuerySuffix((3, 1), 2), QuerySuffix((2, 2), 2)):
        assert index.match_degrees(query) == match_degrees_naive(WORKED_TRAINING, query)


cases = st.integers(min_value=2, max_value=35).flatmap(
    lambda alphabet: st.tuples(
        st.lists(
            st.integers(min_value=1, max_value=alphabet), min_size=1, max_size=120
        ),
        st.lists(st.integers(min_value=1, max_value=alphabet), min_size=1, max_size=20),
        st.integers(min_value=1, max_value=20),
        st.just(alphabet),
    )
)


@settings(max_examples=300, deadline=None)
@given(cases)
def test_indexed_matcher_agrees_with_naive_oracle(case):
    text, qsyms, degree_cap, alphabet = case
    training = SymbolSequence(tuple(text), alphabet)
    query = QuerySuffix(tuple(qsyms), min(degree_cap, len(qsyms)))
    assert match_degrees(training, query) == match_degrees_naive(training, query)


@settings(max_examples=200, deadline=None)
@given(cases)
def test_match_result_invariants(case):
    text, qsyms, degree_cap, alphabet = case
    training = SymbolSequence(tuple(text), alphabet)
    query = QuerySuffix(tuple(qsyms), min(degree_cap, len(qsyms)))
    result = match_degrees(training, query)

    # degrees are consecutive from 1 and totals never increase with depth
    assert [s.degree for s in result.stats] == list(range(1, result.depth + 1))
    totals = [s.total for s in result.stats]
    assert all(a >= b for a, b in zip(totals, totals[1:]))
    assert all(t >= 1 for t in totals)

    # successor conservation: the tally equals the occurrence count of the
    # suffix once the occurrence ending at the text end is excluded
    text_t = tuple(text)
    for stats in result.stats:
        d = stats.degree
        suffix = tuple(qsyms[-d:])
        occurrences = sum(
            1 for s in range(len(text_t) - d + 1) if text_t[s : s + d] == suffix
        )
        ends_at_last = text_t[len(text_t) - d :] == suffix
        assert stats.total == occurrences - int(ends_at_last)
        assert stats.total == sum(stats.successor_counts.values())


@settings(max_examples=100, deadline=None)
@given(cases)
def test_matching_is_deterministic(case):
    text, qsyms, degree_cap, alphabet = case
    training = SymbolSequence(tuple(text), alphabet)
    query = QuerySuffix(tuple(qsyms), min(degree_cap, len(qsyms)))
    first = match_degrees(training, query)
    again = match_degrees(training, query)
    rebuilt = build_index(training).match_degrees(query)
    assert first == again == rebuilt
