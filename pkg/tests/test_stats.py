from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from arrangia import core, stats
from arrangia.core import ColoredArrangement
from arrangia.patterns import ClassSpec


perms = st.integers(0, 7).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(tuple)
)


def swap_fixture_arrangement():
    return core.from_permutation_form(
        (1, 2, 5, 3, 9, 6, 4, 8, 16, 11, 7, 12, 13, 10, 15, 14, 17), 1
    )


class TestDescents:
    def test_word(self):
        assert stats.des((4, 1, -1, 5, 2)) == 3

    def test_identity(self):
        assert stats.descent_set((1, 2, 3, 4)) == ()

    def test_long_signed_word(self):
        word = (8, 1, 3, -1, 4, -2, 2, -2, 5, 7, 10, -1, 9, 11, 6)
        assert stats.descent_set(word) == (1, 3, 5, 7, 11, 14)

    def test_arrangement_routes_through_permutation_form(self):
        arr = ColoredArrangement.from_map((7, 5, 3, 4, 1, 6, 2), 3, {3: 1, 4: 3, 6: 3})
        assert stats.des(arr) == stats.des((6, 4, -1, 3, 1, 5, 2))


class TestDez:
    def test_permutation(self):
        assert stats.dez((4, 1, 3, 5, 2)) == 3

    def test_identity(self):
        assert stats.dez((1, 2, 3, 4)) == 0

    def test_fixture_pair(self):
        arr = swap_fixture_arrangement()
        assert (stats.des(arr), stats.dez(arr)) == (7, 8)

    def test_against_word_construction(self):
        # independent route: negate fixed points, positively reduce, count
        for p in permutations(range(1, 6)):
            word = core.reduce_positive(
                tuple(-1 if v == i else v for i, v in enumerate(p, start=1))
            )
            assert stats.dez(p) == stats.des(word)


class TestXdes:
    def test_twenty_letter_permutation(self):
        sigma = (3, 13, 5, 10, 16, 6, 2, 15, 20, 14, 4, 11, 7, 19, 8, 12, 17, 18, 1, 9)
        crossings = [
            i
            for i in range(1, 20)
            if sigma[i - 1] > sigma[i] and sigma[i - 1] >= i + 1 and sigma[i] <= i + 1
        ]
        assert crossings == [5, 10, 14]
        assert stats.xdes(sigma) == 3

    def test_identity(self):
        assert stats.xdes((1, 2, 3)) == 0

    def test_small(self):
        assert stats.xdes((2, 1, 4, 3)) == 2

    @given(perms)
    def test_at_most_des(self, p):
        assert stats.xdes(p) <= stats.des(p)

    def test_equals_type_one_slots_on_derangements(self):
        for n in range(2, 7):
            for p in permutations(range(1, n + 1)):
                if core.fixed_points(p):
                    continue
                types = core.slot_types(p)
                assert stats.xdes(p) == sum(1 for t in types if t == "I")


class TestFixStats:
    def test_known(self):
        arr = ColoredArrangement.from_map((7, 5, 3, 4, 1, 6, 2), 3, {3: 1, 4: 3, 6: 3})
        assert stats.fix_stats(arr) == (3, (1, 0, 2))

    def test_derangement(self):
        arr = ColoredArrangement.from_map((2, 1), 2, {})
        assert stats.fix_stats(arr) == (0, (0, 0))

    def test_identity_single_color(self):
        arr = ColoredArrangement.from_map((1, 2, 3), 1, {1: 1, 2: 1, 3: 1})
        assert stats.fix_stats(arr) == (3, (3,))


class TestNamedStatistics:
    def test_ldes(self):
        assert stats.statistic("ldes", (1, 2, 4, 8, 3, 5, 6, 9, 7)) == 4

    def test_identity_values(self):
        ident = (1, 2, 3, 4, 5)
        assert stats.statistic("rdes", ident) == 5
        assert stats.statistic("exc", ident) == 0
        assert stats.statistic("plat", ident) == 0
        assert stats.statistic("ldes", ident) == 5

    def test_plat_word(self):
        word = (1, -1, -1, 2)
        adjacent_equal = sum(
            1 for a, b in zip(word, word[1:]) if a == b
        )  # direct scan oracle
        assert adjacent_equal == 1
        assert stats.statistic("plat", word) == 1

    def test_empty_identity_ldes(self):
        assert stats.ldes(()) == 0

    def test_unknown_statistic(self):
        with pytest.raises(ValueError):
            stats.statistic("zigzag", (1, 2))

    def test_lmax_rmin_inverse_pairing(self):
        for p in permutations(range(1, 6)):
            inv = [0] * len(p)
            for i, v in enumerate(p, start=1):
                inv[v - 1] = i
            assert (stats.exc(p), stats.lmax(p)) == (
                stats.aexc(tuple(inv)),
                stats.rmin(tuple(inv)),
            )

    def test_peaks(self):
        assert stats.peaks((1, 3, 2)) == 1
        assert stats.peaks((2, 1, 3)) == 0


class TestDistribution:
    def test_derangements_des_xdes(self):
        dist = stats.distribution(ClassSpec("derangements", 4), ("des", "xdes"))
        assert dist.table == {(3, 1): 1, (2, 2): 2, (2, 1): 2, (1, 1): 4}

    def test_sym_group_des_dez(self):
        dist = stats.distribution(ClassSpec("perms", 3), ("des", "dez"))
        assert dist.poly_string() == "x^2*y + x*y^2 + 3*x*y + 1"

    def test_singleton(self):
        dist = stats.distribution(ClassSpec("perms", 1), ("des",))
        assert dist.table == {(0,): 1} and dist.total() == 1


class TestWordIdentities:
    def test_reverse_descent_identity(self):
        # des(reverse) + 1 = n - des - plat over two-color permutation forms
        from arrangia.patterns import enumerate_class

        for n in range(1, 7):
            for w in enumerate_class(ClassSpec("permForms", n, k=2)):
                assert stats.des(w[::-1]) + 1 == n - stats.des(w) - stats.plat(w)

    def test_des_dez_symmetric(self):
        for n in range(1, 9):
            from collections import Counter

            table = Counter()
            for p in permutations(range(1, n + 1)):
                table[(stats.des(p), stats.dez(p))] += 1
            flipped = Counter({(b, a): c for (a, b), c in table.items()})
            assert table == flipped
