from math import factorial

import pytest
from hypothesis import given, strategies as st

from arrangia import core, patterns
from arrangia.algebra import catalan_number
from arrangia.patterns import (
    ClassSpec,
    ResourceLimitError,
    avoider_distribution,
    check_observation_der1,
    class_size,
    contains_pattern,
    count_avoiders,
    der1_pattern_counts,
    enumerate_class,
)


signed_words = st.lists(
    st.integers(-2, 5).filter(lambda v: v != 0), max_size=9
).map(tuple)


class TestContainment:
    def test_signed_word_with_descending_triple(self):
        assert contains_pattern((4, 3, -1, -3, 1, -3, 2), (3, 2, 1))

    def test_identity_avoids(self):
        assert not contains_pattern((1, 2, 3, 4, 5), (3, 2, 1))

    def test_two_letter_class(self):
        words = list(enumerate_class(ClassSpec("derForms", 2, k=1)))
        assert words == [(-1, -1), (2, 1)]
        assert all(not contains_pattern(w, (3, 2, 1)) for w in words)

    @given(signed_words)
    def test_scanners_match_backtracker(self, word):
        for pat in patterns.PATTERNS3:
            assert contains_pattern(word, pat) == patterns._contains_generic(word, pat)

    def test_longer_patterns(self):
        assert contains_pattern((5, 1, 4, 2, 3), (3, 1, 2))
        assert contains_pattern((2, 4, 1, 3), (2, 4, 1, 3))
        assert not contains_pattern((1, 2, 3, 4), (2, 1, 4, 3))

    def test_pattern_needs_distinct_letters(self):
        # equal letters never realize a pattern occurrence
        assert not contains_pattern((-1, -1, -1), (1, 2, 3))


class TestEnumeration:
    def test_single_color_arrangements_count_factorials(self):
        for n in range(0, 7):
            assert class_size(ClassSpec("arrangements", n, k=1)) == factorial(n)

    def test_three_color_singletons(self):
        words = list(enumerate_class(ClassSpec("permForms", 1, k=3)))
        assert words == [(-2,), (-1,), (1,)]

    def test_empty_arrangement(self):
        assert class_size(ClassSpec("arrangements", 0, k=2)) == 1

    def test_lexicographic_and_duplicate_free(self):
        for spec in (
            ClassSpec("permForms", 4, k=2),
            ClassSpec("derForms", 4, k=2),
            ClassSpec("dyck", 5),
            ClassSpec("perms", 4),
        ):
            objs = list(enumerate_class(spec))
            assert objs == sorted(set(objs))

    def test_form_classes_have_arrangement_cardinality(self):
        for n in range(0, 6):
            for k in (1, 2, 3):
                total = class_size(ClassSpec("arrangements", n, k=k))
                assert class_size(ClassSpec("derForms", n, k=k)) == total
                assert class_size(ClassSpec("permForms", n, k=k)) == total

    def test_form_words_are_valid(self):
        for w in enumerate_class(ClassSpec("derForms", 4, k=2)):
            assert core.is_derangement_form(w, 2)
        for w in enumerate_class(ClassSpec("permForms", 4, k=3)):
            assert core.is_permutation_form(w, 3)

    def test_dyck_counts_are_catalan(self):
        for n in range(0, 8):
            assert class_size(ClassSpec("dyck", n)) == catalan_number(n)

    def test_multiplicity_blocks_partition_the_class(self):
        n, k = 5, 2
        total = class_size(ClassSpec("arrangements", n, k=k))
        by_blocks = 0
        for m1 in range(n + 1):
            for m2 in range(n + 1 - m1):
                by_blocks += class_size(
                    ClassSpec("arrangements", n, k=k, multiplicity=(m1, m2))
                )
        assert by_blocks == total

    def test_resource_cap(self):
        with pytest.raises(ResourceLimitError):
            list(enumerate_class(ClassSpec("perms", 6), max_objects=100))


class TestCounting:
    def test_sym_group_catalan(self):
        for n in range(0, 7):
            for pat in patterns.PATTERNS3:
                assert count_avoiders(ClassSpec("perms", n, pattern=pat)) == catalan_number(n)

    def test_three_color_closed_form(self):
        values = [
            count_avoiders(ClassSpec("permForms", n, k=3, pattern=(3, 1, 2)))
            for n in range(1, 7)
        ]
        assert values == [catalan_number(n + 2) - 2**n for n in range(1, 7)]
        assert values == [3, 10, 34, 116, 397, 1366]

    def test_derangement_form_row(self):
        assert der1_pattern_counts((2, 1, 3), 7) == [1, 2, 6, 19, 63, 210, 716]

    def test_fast_counts_match_enumeration(self):
        for pat in patterns.PATTERNS3:
            fast = der1_pattern_counts(pat, 6)
            brute = [
                count_avoiders(ClassSpec("derForms", n, k=1, pattern=pat))
                for n in range(1, 7)
            ]
            assert fast == brute

    def test_savage_wilf_pattern_independence(self):
        for k in (2, 3):
            for n in range(0, 8):
                counts = {
                    pat: count_avoiders(ClassSpec("permForms", n, k=k, pattern=pat))
                    for pat in patterns.PATTERNS3
                }
                assert len(set(counts.values())) == 1, counts

    def test_count_requires_pattern(self):
        with pytest.raises(ValueError):
            count_avoiders(ClassSpec("perms", 3))


class TestDistributions:
    def test_two_color_213(self):
        dist = avoider_distribution(
            ClassSpec("permForms", 2, k=2, pattern=(2, 1, 3)), ("des",)
        )
        assert dist.table == {(0,): 3, (1,): 2}

    def test_two_color_123_polynomials(self):
        dist2 = avoider_distribution(
            ClassSpec("permForms", 2, k=2, pattern=(1, 2, 3)), ("des",)
        )
        assert dist2.table == {(0,): 3, (1,): 2}
        dist3 = avoider_distribution(
            ClassSpec("permForms", 3, k=2, pattern=(1, 2, 3)), ("des",)
        )
        assert dist3.table == {(0,): 2, (1,): 10, (2,): 2}

    def test_empty_class(self):
        dist = avoider_distribution(
            ClassSpec("derForms", 1, k=0, pattern=(2, 1)), ("des",)
        )
        assert dist.table == {}

    def test_dyck_statistics(self):
        dist = patterns.class_distribution(ClassSpec("dyck", 3), ("hill", "seg", "lseg"))
        assert dist.total() == catalan_number(3)
        assert dist.table[(3, 0, 4)] == 1  # the staircase path


class TestPlacementCharacterization:
    @pytest.mark.parametrize("pattern", [(3, 2, 1), (1, 3, 2)])
    def test_exhaustive(self, pattern):
        for n in range(1, 7):
            for w in enumerate_class(ClassSpec("derForms", n, k=1)):
                assert check_observation_der1(w, pattern)

    def test_empty_positive_part(self):
        assert check_observation_der1((-1, -1, -1), (3, 2, 1))

    def test_other_patterns_rejected(self):
        with pytest.raises(ValueError):
            check_observation_der1((-1,), (2, 1, 3))
