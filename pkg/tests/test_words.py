import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupword.errors import BudgetExceeded
from groupword.words import (
    EMPTY_WORD,
    Letter,
    Variable,
    Word,
    bell_number,
    cyclic_reduce,
    delta_segment,
    enumerate_variations,
    erase_splits,
    free_reduce,
    initial_segment,
    is_repetition_free,
    is_segment_of,
    multiplicity,
    parse_word,
    proper_variations,
    restricted_growth_strings,
    split_variations,
    word,
    word_to_str,
)

X = Variable(1)
Y = Variable(2)
COMMUTATOR = word([(1, 1), (2, 1), (1, -1), (2, -1)])


def partitions_insertion(m):
    """Independent oracle: all set partitions of {1..m} as frozensets of frozensets."""
    out = [[]]
    for k in range(1, m + 1):
        nxt = []
        for p in out:
            for i in range(len(p)):
                q = [set(b) for b in p]
                q[i].add(k)
                nxt.append(q)
            nxt.append([set(b) for b in p] + [{k}])
        out = nxt
    return {frozenset(frozenset(b) for b in p) for p in out}


class TestParse:
    def test_free_reduction(self):
        assert parse_word("x1 x1^-1 x2") == word([(2, 1)])

    def test_power_shorthand(self):
        w = parse_word("x^8")
        assert len(w) == 8
        assert all(l == Letter(X, 1) for l in w)

    def test_commutator(self):
        assert parse_word("x y x^-1 y^-1") == COMMUTATOR

    def test_star_separator_and_splits(self):
        w = parse_word("x_1*x_2")
        assert w.letters == (Letter(Variable(1, 1), 1), Letter(Variable(1, 2), 1))

    def test_fresh_names_avoid_canonical_indices(self):
        w = parse_word("y x2")
        assert [l.var.base for l in w.letters] == [1, 2]

    def test_zero_exponent_rejected(self):
        with pytest.raises(ValueError):
            parse_word("x^0")

    def test_syntax_error_position(self):
        with pytest.raises(ValueError, match="position"):
            parse_word("x ?y")

    def test_empty_word_token(self):
        assert parse_word("1") == EMPTY_WORD

    @given(
        st.lists(
            st.tuples(st.integers(1, 3), st.sampled_from([1, -1])),
            max_size=10,
        )
    )
    def test_roundtrip(self, spec):
        w = word(spec)
        assert parse_word(word_to_str(w)) == w


class TestBasics:
    def test_multiplicity(self):
        assert multiplicity(COMMUTATOR, X) == 2
        assert multiplicity(parse_word("x^8"), X) == 8
        assert multiplicity(parse_word("x^2 y"), Variable(3)) == 0

    def test_repetition_free(self):
        assert is_repetition_free(parse_word("x y z"))
        assert not is_repetition_free(parse_word("x y x^-1"))
        assert is_repetition_free(EMPTY_WORD)

    def test_cyclic_reduce(self):
        assert cyclic_reduce(parse_word("x y x^-1")) == word([(2, 1)])
        assert cyclic_reduce(COMMUTATOR) == COMMUTATOR
        assert cyclic_reduce(parse_word("x y z y^-1 x^-1")) == word([(3, 1)])

    @given(
        st.lists(
            st.tuples(st.integers(1, 3), st.sampled_from([1, -1])),
            max_size=12,
        )
    )
    def test_reduction_idempotent(self, spec):
        w = word(spec)
        assert free_reduce(w.letters) == w.letters


class TestSegments:
    def test_initial_segment_cases(self):
        xx = parse_word("x^2")
        assert initial_segment(xx, 1) == EMPTY_WORD
        assert initial_segment(xx, 2) == parse_word("x")
        w = parse_word("x^-1 y x")
        assert initial_segment(w, 1) == parse_word("x^-1")

    def test_delta_examples(self):
        assert delta_segment(parse_word("x^2"), 1, 2) == parse_word("x")
        assert delta_segment(parse_word("x^-1 y x"), 1, 2) == EMPTY_WORD
        w = parse_word("x y x^-1")
        assert delta_segment(w, 1, 3) == w

    def test_delta_errors(self):
        with pytest.raises(ValueError):
            delta_segment(parse_word("x y"), 2, 2)
        with pytest.raises(IndexError):
            delta_segment(parse_word("x y"), 1, 3)

    @given(
        st.lists(
            st.tuples(st.integers(1, 3), st.sampled_from([1, -1])),
            min_size=2,
            max_size=8,
        ),
        st.data(),
    )
    @settings(max_examples=300)
    def test_remark_52_properties(self, spec, data):
        w = word(spec)
        if len(w) < 2:
            return
        i = data.draw(st.integers(1, len(w) - 1))
        j = data.draw(st.integers(i + 1, len(w)))
        d = delta_segment(w, i, j)
        # (1) deltas are segments of w
        assert is_segment_of(d, w)
        # (2) empty iff j=i+1, eps_i=-1, eps_j=+1
        empty_case = (
            j == i + 1 and w.letters[i - 1].sign == -1 and w.letters[j - 1].sign == 1
        )
        assert (len(d) == 0) == empty_case
        if w.letters[i - 1].var == w.letters[j - 1].var:
            assert len(d) > 0
        # (3) delta = w iff i=1, j=l, eps_1=+1, eps_l=-1
        whole_case = (
            i == 1
            and j == len(w)
            and w.letters[0].sign == 1
            and w.letters[-1].sign == -1
        )
        assert (d == w) == whole_case


class TestVariations:
    def test_x2_variations(self):
        vs = enumerate_variations(parse_word("x^2"))
        assert len(vs) == 2
        assert parse_word("x_1 x_1") in vs
        assert parse_word("x_1 x_2") in vs

    def test_x3_bell(self):
        assert len(enumerate_variations(parse_word("x^3"))) == 5

    def test_single_occurrences(self):
        assert len(enumerate_variations(parse_word("x y"))) == 1

    def test_proper_variations(self):
        assert proper_variations(parse_word("x^2")) == [parse_word("x_1 x_2")]
        assert len(proper_variations(parse_word("x^3"))) == 4
        assert proper_variations(parse_word("x y")) == []

    def test_split_variations(self):
        assert split_variations(parse_word("x^2"), 1, 2) == [parse_word("x_1 x_2")]
        assert len(split_variations(parse_word("x^3"), 1, 2)) == 3
        assert len(split_variations(COMMUTATOR, 1, 3)) == 2

    def test_split_variation_errors(self):
        with pytest.raises(ValueError):
            split_variations(COMMUTATOR, 1, 2)

    def test_cap(self):
        with pytest.raises(BudgetExceeded):
            enumerate_variations(parse_word("x^13"))

    def test_variations_map_back(self):
        w = parse_word("x y x y^-1 x")
        for v in enumerate_variations(w):
            assert erase_splits(v) == w

    @given(
        st.lists(
            st.tuples(st.integers(1, 2), st.sampled_from([1, -1])),
            max_size=6,
        )
    )
    @settings(max_examples=120, deadline=None)
    def test_variation_count_is_bell_product(self, spec):
        w = word(spec)
        expected = 1
        for b in w.bases():
            m = sum(1 for l in w.letters if l.var.base == b)
            expected *= len(partitions_insertion(m))
        assert len(enumerate_variations(w)) == expected


def test_rgs_matches_independent_partition_enumerator():
    for m in range(7):
        rgs = list(restricted_growth_strings(m))
        assert len(rgs) == len(set(rgs))
        as_partitions = set()
        for a in rgs:
            blocks: dict[int, set] = {}
            for k, b in enumerate(a, start=1):
                blocks.setdefault(b, set()).add(k)
            as_partitions.add(frozenset(frozenset(s) for s in blocks.values()))
        assert as_partitions == partitions_insertion(m)
        assert bell_number(m) == len(partitions_insertion(m))
