import itertools

import pytest

from conftest import brute_transversal_count, ferrers_difference_shapes
from skewfill.enumeration import (
    EnumSpec,
    LambdaSpec,
    catalog_line,
    count_avoiders,
    enum_FNE,
    enum_fillings,
    enum_moon_polyominoes,
    enum_skew_shapes,
    parse_catalog_line,
)
from skewfill.fillings import NE, SE, SumVector, longest_chain, sum_vector
from skewfill.shapes import (
    dent_shape,
    is_connected,
    is_moon,
    is_skew,
    normalize,
)
from skewfill.structure import is_ds_free

DENT = dent_shape()
SQUARE = normalize([(x, y) for x in (1, 2) for y in (1, 2)])

# counts computed by filtering all subsets of bounding boxes for the
# skew property (see test_counts_match_subset_oracle below for n <= 5)
SKEW_COUNTS = [1, 3, 9, 28, 87, 272, 850, 2659]
CONNECTED_COUNTS = [1, 2, 4, 9, 20, 46, 105, 242]


def test_skew_shape_counts():
    for n, want in enumerate(SKEW_COUNTS[:6], start=1):
        assert sum(1 for _ in enum_skew_shapes(n)) == want


def test_connected_skew_shape_counts():
    for n, want in enumerate(CONNECTED_COUNTS[:6], start=1):
        assert sum(1 for _ in enum_skew_shapes(n, connected=True)) == want


def test_enum_skew_shapes_partitions():
    for n in (3, 4, 5):
        every = set(enum_skew_shapes(n))
        conn = set(enum_skew_shapes(n, connected=True))
        disc = set(enum_skew_shapes(n, connected=False))
        assert conn | disc == every and not conn & disc
        free = set(enum_skew_shapes(n, ds_free=True))
        dented = set(enum_skew_shapes(n, ds_free=False))
        assert free | dented == every and not free & dented
        assert all(is_connected(s) for s in conn)
        assert all(is_ds_free(s) for s in free)


def test_enum_skew_shapes_are_normalized_and_distinct():
    for n in (4, 5):
        shapes = list(enum_skew_shapes(n))
        assert len(set(shapes)) == len(shapes)
        for s in shapes:
            assert is_skew(s)
            assert len(s.cells) == n
            assert normalize(s.cells) == s


def occupies_every_line(s):
    cols = {x for x, _ in s.cells}
    rows = {y for _, y in s.cells}
    return cols == set(range(1, s.width + 1)) and rows == set(range(1, s.height + 1))


def test_counts_match_subset_oracle():
    # every canonical skew shape with n cells fits in an n x n box, so
    # filtering normalized subsets of that box is an independent count;
    # canonical means every row and column of the bounding box is used
    for n in range(1, 6):
        box = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
        seen = set()
        for combo in itertools.combinations(box, n):
            s = normalize(combo)
            if s not in seen and is_skew(s) and occupies_every_line(s):
                seen.add(s)
        assert set(enum_skew_shapes(n)) == seen


def test_skew_shapes_agree_with_ferrers_difference():
    # connected skew shapes are exactly the nonempty differences of two
    # nested Ferrers shapes hung from a common corner
    diffs = {
        s
        for s in ferrers_difference_shapes(4, 4)
        if len(s.cells) == 4 and is_connected(s)
    }
    assert diffs == set(enum_skew_shapes(4, connected=True))


def test_enum_skew_shapes_rejects_bad_n():
    with pytest.raises(ValueError):
        list(enum_skew_shapes(0))


def test_catalog_line_round_trip():
    assert catalog_line(DENT) == "[(1,2),(1,3),(2,3)]"
    for n in (3, 4):
        for s in enum_skew_shapes(n, connected=True):
            assert parse_catalog_line(catalog_line(s)) == s


def test_parse_catalog_line_errors():
    with pytest.raises(ValueError):
        parse_catalog_line("nonsense")
    with pytest.raises(ValueError):
        parse_catalog_line("[(2,1)]")


def test_catalog_line_requires_no_empty_rows():
    with pytest.raises(ValueError):
        catalog_line(normalize([(1, 1), (3, 3)]))


def test_enum_moon_polyominoes():
    # independent filter: connected cell sets in a small box that are moon
    for n in (1, 2, 3, 4):
        box = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
        seen = set()
        for combo in itertools.combinations(box, n):
            s = normalize(combo)
            if s in seen:
                continue
            seen.add(s)
        want = {s for s in seen if is_connected(s) and is_moon(s)}
        assert set(enum_moon_polyominoes(n)) == want


def test_enum_fillings_binary_counts():
    assert sum(1 for _ in enum_fillings(DENT, EnumSpec())) == 2**7
    assert sum(1 for _ in enum_fillings(SQUARE, EnumSpec(mode="binary"))) == 16


def test_enum_fillings_integer_counts():
    assert (
        sum(1 for _ in enum_fillings(SQUARE, EnumSpec(mode="integer", max_entry=2)))
        == 81
    )
    assert (
        sum(1 for _ in enum_fillings(DENT, EnumSpec(mode="integer", max_entry=1)))
        == 128
    )


def test_enum_fillings_sparse():
    fillings = list(enum_fillings(SQUARE, EnumSpec(mode="sparse")))
    # at most one 1 in every row and column: empty, four singles, two pairs
    assert len(fillings) == 7
    for f in fillings:
        sv = sum_vector(f)
        assert max(sv.row_sums) <= 1 and max(sv.col_sums) <= 1


def test_enum_fillings_transversal():
    fs = list(enum_fillings(DENT, EnumSpec(mode="transversal")))
    assert sorted(sorted(f.support()) for f in fs) == [
        [(1, 1), (2, 2), (3, 3)],
        [(1, 1), (2, 3), (3, 2)],
        [(1, 2), (2, 1), (3, 3)],
    ]
    for f in fs:
        sv = sum_vector(f)
        assert set(sv.row_sums) == {1} and set(sv.col_sums) == {1}


def test_transversal_requires_square_bounding_box():
    with pytest.raises(ValueError):
        list(enum_fillings(normalize([(1, 1), (2, 1)]), EnumSpec(mode="transversal")))


def test_transversal_counts_match_permutation_oracle():
    for s in enum_skew_shapes(4, connected=True):
        if s.width != s.height:
            continue
        got = sum(1 for _ in enum_fillings(s, EnumSpec(mode="transversal")))
        assert got == brute_transversal_count(s, lambda f: True)


def test_enum_fillings_sum_filter():
    spec = EnumSpec(
        mode="integer",
        max_entry=2,
        sums=SumVector(row_sums=(1, 2, 1), col_sums=(1, 2, 1)),
    )
    for f in enum_fillings(DENT, spec):
        assert sum_vector(f) == spec.sums


def test_enum_fillings_max_total():
    spec = EnumSpec(mode="binary", max_total=1)
    assert sum(1 for _ in enum_fillings(SQUARE, spec)) == 5


def test_enum_spec_validation():
    with pytest.raises(ValueError):
        EnumSpec(mode="weighted")
    with pytest.raises(ValueError):
        EnumSpec(mode="integer")
    with pytest.raises(ValueError):
        EnumSpec(mode="binary", max_entry=3)


def test_count_avoiders_transversal_pins():
    assert count_avoiders(DENT, EnumSpec(mode="transversal", avoid=("delta2",))) == 1
    assert count_avoiders(DENT, EnumSpec(mode="transversal", avoid=("iota2",))) == 2


def test_count_avoiders_matches_filter_oracle():
    spec = EnumSpec(mode="binary", avoid=("iota2",))
    got = count_avoiders(DENT, spec)
    want = sum(
        1
        for f in enum_fillings(DENT, EnumSpec(mode="binary"))
        if longest_chain(f, NE) < 2
    )
    assert got == want
    oracle = brute_transversal_count(DENT, lambda f: longest_chain(f, SE) < 2)
    assert count_avoiders(DENT, EnumSpec(mode="transversal", avoid=("delta2",))) == oracle


def test_lambda_spec_round_trip():
    lam = LambdaSpec.from_dict({2: 1, 3: 2})
    assert lam.as_dict() == {2: 1, 3: 2}
    assert lam.entries == ((2, 1), (3, 2))


def test_enum_FNE_square():
    lam = LambdaSpec.from_dict({2: 1})
    sums = SumVector(row_sums=(1, 1), col_sums=(1, 1))
    fs = list(enum_FNE(SQUARE, lam, sums))
    assert [sorted(f.support()) for f in fs] == [[(1, 2), (2, 1)]]
    lam2 = LambdaSpec.from_dict({2: 2})
    fs2 = list(enum_FNE(SQUARE, lam2, sums))
    assert [sorted(f.support()) for f in fs2] == [[(1, 1), (2, 2)]]


def test_enum_FNE_requires_moon_host():
    lam = LambdaSpec.from_dict({3: 1})
    sums = SumVector(row_sums=(1, 1, 1), col_sums=(1, 1, 1))
    with pytest.raises(ValueError):
        list(enum_FNE(DENT, lam, sums))
