"""
Unit tests for partitions, their statistics and the boundary-word encoding
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankpath.errors import BoxViolationError, InvalidPartitionError, PreconditionError
from rankpath.oracle import PartitionsInBox, enumerate_family
from rankpath.partitions import (
    AtLeast,
    AtMost,
    BoxedPartition,
    Finite,
    Interval,
    Partition,
    RankConstraint,
    conjugate,
    durfee,
    from_word,
    hook_decomposition,
    parse_constraint,
    ranks,
    satisfies,
    to_word,
)
from rankpath.paths import inversions

partitions = st.lists(st.integers(min_value=1, max_value=8), max_size=8).map(
    lambda xs: Partition(tuple(sorted(xs, reverse=True)))
)


@pytest.mark.unit
class TestPartitionValidation:
    """Test construction and rejection of partitions"""

    def test_valid_partitions(self):
        """Test weakly decreasing positive parts are accepted"""
        for parts in [(), (1,), (4, 3, 3), (5, 5, 5, 1)]:
            assert Partition(parts).parts == parts, f"{parts} should be accepted"

    def test_invalid_partitions(self):
        """Test malformed part lists are rejected"""
        invalid = [
            (3, 4),  # increasing
            (2, 0),  # zero part
            (-1,),  # negative part
            ("a",),  # not an integer
        ]
        for parts in invalid:
            with pytest.raises(InvalidPartitionError):
                Partition(parts)

    def test_non_integer_parts_rejected(self):
        """Test floats, numeric strings and booleans are not coerced"""
        for parts in [(2.5, 1), (2.0,), ("3",), (True,), (2, False)]:
            with pytest.raises(InvalidPartitionError):
                Partition(parts)
        with pytest.raises(InvalidPartitionError):
            Partition(5)

    def test_non_integer_box_rejected(self):
        """Test box sides and JSON parts must be integers"""
        bad = [
            {"parts": [2.7], "m": 1, "n": 3},
            {"parts": [2], "m": 1.9, "n": 3},
            {"parts": [2], "m": 1, "n": "3"},
            {"parts": [1], "m": True, "n": 3},
        ]
        for data in bad:
            with pytest.raises(InvalidPartitionError):
                BoxedPartition.from_json(data)
        with pytest.raises(InvalidPartitionError):
            BoxedPartition(Partition.of(1), 2.0, 2)

    def test_from_json_requires_array(self):
        """Test JSON input must be an array"""
        assert Partition.from_json([2, 1]) == Partition.of(2, 1)
        with pytest.raises(InvalidPartitionError):
            Partition.from_json({"parts": [2, 1]})

    def test_box_violation(self):
        """Test partitions that overflow the box are rejected"""
        with pytest.raises(BoxViolationError):
            BoxedPartition(Partition.of(5), 2, 4)
        with pytest.raises(BoxViolationError):
            BoxedPartition(Partition.of(1, 1, 1), 2, 4)

    def test_boxed_json(self):
        """Test boxed partitions read and write the {parts, m, n} object"""
        bp = BoxedPartition.from_json({"parts": [4, 3, 3], "m": 4, "n": 6})
        assert bp.partition == Partition.of(4, 3, 3)
        assert bp.to_json() == {"parts": [4, 3, 3], "m": 4, "n": 6}
        with pytest.raises(InvalidPartitionError):
            BoxedPartition.from_json({"parts": [1]})

    def test_string_form(self):
        """Test the compact text form"""
        assert str(Partition.of(4, 3, 3)) == "(4,3,3)"
        assert str(Partition()) == "()"


@pytest.mark.unit
class TestStatistics:
    """Test conjugate, Durfee square/rectangle and successive ranks"""

    def test_conjugate(self):
        """Test transposing the diagram"""
        assert conjugate(Partition.of(4, 3, 3)) == Partition.of(3, 3, 3, 1)
        assert conjugate(Partition()) == Partition()
        assert conjugate(Partition.of(4, 4, 3, 3, 1, 1)) == Partition.of(6, 4, 4, 2)

    def test_durfee(self):
        """Test Durfee square and rectangle of the boxed example"""
        assert durfee(Partition.of(4, 3, 3)) == (3, 2)
        assert durfee(Partition()) == (0, 0)
        assert durfee(Partition.of(1)) == (1, 0)
        assert durfee(Partition.of(2)) == (1, 1)

    def test_ranks(self):
        """Test successive ranks"""
        assert ranks(Partition.of(4, 4, 3, 3, 1, 1)) == (-2, 0, -1)
        assert ranks(Partition.of(6, 6, 1)) == (3, 4)
        assert ranks(Partition()) == ()

    def test_hook_decomposition(self, hook_example):
        """Test arm and leg data of the four-hook example"""
        hooks = hook_decomposition(hook_example["boxed"].partition)
        assert hooks.a == hook_example["a"]
        assert hooks.b == hook_example["b"]
        assert hooks.d == 4
        assert hooks.hooks == (3, 6, 9, 12)
        assert sum(hooks.hooks) == hook_example["boxed"].partition.area

    @given(partitions)
    @pytest.mark.property
    def test_conjugate_is_involution(self, lam):
        """Test conjugating twice is the identity and preserves area and Durfee side"""
        assert conjugate(conjugate(lam)) == lam
        assert conjugate(lam).area == lam.area
        assert durfee(conjugate(lam))[0] == durfee(lam)[0]

    @given(partitions)
    @pytest.mark.property
    def test_ranks_of_conjugate_are_negated(self, lam):
        """Test r_i(lambda') = -r_i(lambda)"""
        assert ranks(conjugate(lam)) == tuple(-r for r in ranks(lam))


@pytest.mark.unit
class TestBoundaryWord:
    """Test the boundary-word encoding in a box"""

    def test_worked_example(self):
        """Test (4,3,3) in the 4x6 box"""
        w = to_word(BoxedPartition(Partition.of(4, 3, 3), 4, 6))
        assert w.digits() == "1222112122"

    def test_round_trip_in_small_boxes(self):
        """Test from_word inverts to_word and inv equals area"""
        for m in range(5):
            for n in range(5):
                for lam in enumerate_family(PartitionsInBox(m, n)):
                    bp = BoxedPartition(lam, m, n)
                    w = to_word(bp)
                    assert (w.m, w.n) == (m, n)
                    assert from_word(w) == bp, f"round trip failed for {lam} in {m}x{n}"
                    assert inversions(w) == lam.area

    def test_transposed_box(self):
        """Test transposing swaps the box sides"""
        bp = BoxedPartition(Partition.of(4, 3, 3), 4, 6).transposed()
        assert (bp.m, bp.n) == (6, 4)
        assert bp.partition == Partition.of(3, 3, 3, 1)


@pytest.mark.unit
class TestRankConstraints:
    """Test rank constraint predicates and their parser"""

    def test_parse(self):
        """Test each constraint syntax"""
        assert parse_constraint(">=1") == AtLeast(1)
        assert parse_constraint("<= -2") == AtMost(-2)
        assert parse_constraint("[0,3]") == Interval(0, 3)
        assert parse_constraint("{0,-1}") == Finite(frozenset({0, -1}))

    def test_parse_rejects_garbage(self):
        """Test unparseable constraints are rejected"""
        for text in ["", ">", "[1]", "{}", "abc"]:
            with pytest.raises(PreconditionError):
                parse_constraint(text)

    def test_empty_interval_rejected(self):
        """Test an interval with lo > hi is rejected"""
        with pytest.raises(PreconditionError):
            Interval(3, 1)

    def test_incomplete_constraint_cannot_be_built(self):
        """Test a constraint subclass without contains fails at construction"""

        class NoPredicate(RankConstraint):
            pass

        with pytest.raises(TypeError):
            NoPredicate()

    def test_membership(self):
        """Test membership and the shifted negated valley predicate"""
        c = AtLeast(1)
        assert 1 in c and 0 not in c
        valley_ok = c.shifted_negated()
        assert valley_ok(-2) and not valley_ok(-1)

    def test_satisfies(self):
        """Test all ranks must lie in the set; the empty partition qualifies vacuously"""
        assert satisfies(Partition.of(2), AtLeast(1))
        assert not satisfies(Partition.of(1, 1), AtLeast(0))
        assert satisfies(Partition(), Finite(frozenset({5})))
