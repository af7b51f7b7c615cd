import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tabsig import (
    ContingencyTable,
    Hypothesis,
    HypothesisSpec,
    count_tables,
    enumerate_tables,
    iter_compositions,
)
from tabsig.tables import iter_cell_chunks


def test_counts_match_reported_spaces():
    assert count_tables(HypothesisSpec.homogeneity((10, 10))) == 121
    assert count_tables(HypothesisSpec.independence(2, 3, 15)) == 15504
    assert count_tables(HypothesisSpec.homogeneity((30, 30))) == 961
    assert count_tables(HypothesisSpec.independence(2, 2, 2)) == 10
    assert count_tables(HypothesisSpec.hardy_weinberg(30)) == 496


def test_empty_hardy_weinberg_space():
    tables = list(enumerate_tables(HypothesisSpec.hardy_weinberg(0)))
    assert [t.cells for t in tables] == [((0, 0, 0),)]


def test_independence_2x2_n2_brute_force():
    # ten tables: all ways to place two observations into four cells
    tables = [t.flat() for t in enumerate_tables(HypothesisSpec.independence(2, 2, 2))]
    assert len(tables) == 10
    assert len(set(tables)) == 10
    assert all(sum(t) == 2 for t in tables)


@pytest.mark.parametrize(
    "spec",
    [
        HypothesisSpec.homogeneity((4, 6)),
        HypothesisSpec.homogeneity((3, 2, 4), cols=3),
        HypothesisSpec.independence(2, 3, 7),
        HypothesisSpec.hardy_weinberg(9),
    ],
)
def test_stream_matches_count_and_constraints(spec):
    seen = set()
    n = 0
    for table in enumerate_tables(spec):
        n += 1
        seen.add(table.flat())
        if spec.kind is Hypothesis.HOMOGENEITY:
            assert table.row_margins == spec.row_margins
        else:
            assert table.total == spec.total
    assert n == count_tables(spec)
    assert len(seen) == n  # no duplicates


def test_enumeration_is_lexicographic_row_major():
    flats = [t.flat() for t in enumerate_tables(HypothesisSpec.homogeneity((2, 1)))]
    assert flats == sorted(flats)
    flats = [t.flat() for t in enumerate_tables(HypothesisSpec.independence(2, 2, 3))]
    assert flats == sorted(flats)


def test_cell_chunks_agree_with_stream():
    spec = HypothesisSpec.independence(2, 3, 5)
    chunked = [tuple(row) for chunk in iter_cell_chunks(spec, chunk_size=17) for row in chunk]
    assert chunked == [t.flat() for t in enumerate_tables(spec)]


@given(
    margins=st.lists(st.integers(0, 7), min_size=1, max_size=3),
    cols=st.integers(2, 3),
)
@settings(max_examples=30, deadline=None)
def test_homogeneity_count_property(margins, cols):
    spec = HypothesisSpec.homogeneity(margins, cols)
    assert sum(1 for _ in enumerate_tables(spec)) == count_tables(spec)


@given(total=st.integers(0, 25))
@settings(max_examples=20, deadline=None)
def test_hw_count_property(total):
    spec = HypothesisSpec.hardy_weinberg(total)
    assert sum(1 for _ in enumerate_tables(spec)) == count_tables(spec)


def test_compositions_order_and_edge_cases():
    assert list(iter_compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(iter_compositions(0, 3)) == [(0, 0, 0)]
    assert list(iter_compositions(4, 1)) == [(4,)]


def test_table_margins_and_total():
    t = ContingencyTable.from_rows([[1, 2, 3], [4, 5, 6]])
    assert t.row_margins == (6, 15)
    assert t.col_margins == (5, 7, 9)
    assert t.total == 21
    assert t.flat() == (1, 2, 3, 4, 5, 6)


def test_invalid_tables_and_specs_rejected():
    with pytest.raises(ValueError):
        ContingencyTable.from_rows([[1, -1]])
    with pytest.raises(ValueError):
        ContingencyTable(((1, 2), (3,)))
    with pytest.raises(ValueError):
        HypothesisSpec.homogeneity((5, 5), cols=1)
    with pytest.raises(ValueError):
        HypothesisSpec.homogeneity((-1, 5))
    with pytest.raises(ValueError):
        HypothesisSpec.independence(1, 2, 5)
    with pytest.raises(ValueError):
        HypothesisSpec.hardy_weinberg(-3)


def test_validate_table_mismatches():
    spec = HypothesisSpec.homogeneity((2, 2))
    with pytest.raises(ValueError):
        spec.validate_table(ContingencyTable.from_rows([[1, 0], [1, 1]]))
    ind = HypothesisSpec.independence(2, 2, 4)
    with pytest.raises(ValueError):
        ind.validate_table(ContingencyTable.from_rows([[1, 0], [1, 1]]))
