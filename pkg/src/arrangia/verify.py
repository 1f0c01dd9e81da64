"""Named verification checks wiring enumeration, statistics, bijections,
and exact series against each other.

Each check compares two independent routes to the same data: an explicit
construction or closed form on one side, exhaustive enumeration on the
other.  ``run_check`` executes one check; ``run_all`` executes a profile
(quick or full).  Reference tuples that appear verbatim in the checks
were cross-validated against brute-force enumeration at small sizes;
checks never consult the network.
"""

from __future__ import annotations

import json
import time
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb
from typing import Callable

from . import algebra, bijections, core, patterns, stats
from .algebra import MultiPoly, TruncatedSeries
from .bijections import GRPair
from .core import ColoredArrangement
from .patterns import ClassSpec

# ---------------------------------------------------------------------------
# Reference data.
# ---------------------------------------------------------------------------

TABLE1 = {
    (3, 2, 1): (1, 2, 5, 15, 48, 159, 538, 1850, 6446, 22712),
    (1, 3, 2): (1, 2, 5, 15, 48, 159, 538, 1850, 6446, 22712),
    (2, 3, 1): (1, 2, 5, 14, 42, 131, 420, 1376, 4595, 15573),
    (1, 2, 3): (1, 2, 6, 19, 61, 202, 688, 2367, 8316, 29356),
    (3, 1, 2): (1, 2, 4, 10, 27, 78, 235, 736, 2366, 7772),
    (2, 1, 3): (1, 2, 6, 19, 63, 210, 716, 2462, 8604, 30296),
}

# des-polynomials over two-color permutation forms avoiding 123, sizes 0..5
P2_123_DES_POLYS = (
    {0: 1},
    {0: 2},
    {0: 3, 1: 2},
    {0: 2, 1: 10, 2: 2},
    {0: 2, 1: 12, 2: 26, 3: 2},
    {0: 2, 1: 12, 2: 56, 3: 60, 4: 2},
)

GENOCCHI_FIRST = (1, 3, 17, 155, 2073)  # permutations of [2m], des = xdes = m
GENOCCHI_SECOND = (1, 2, 8, 56, 608)  # derangements of [2m], des = xdes = m

F_U4 = {(3, 1): 1, (2, 2): 2, (2, 1): 2, (1, 1): 4}  # (des, xdes) over size-4 derangements
G_U4 = {(3, 3): 1, (2, 2): 7, (2, 1): 4, (1, 2): 4, (1, 1): 7, (0, 0): 1}

# Slot-swap fixture 1 (one color): a 17-letter permutation and its image data.
SWAP1_PERM = (1, 2, 5, 3, 9, 6, 4, 8, 16, 11, 7, 12, 13, 10, 15, 14, 17)
SWAP1_SLOTS = (2, 0, 0, 1, 1, 0, 0, 2, 1, 1)
SWAP1_DER = (3, 1, 5, 2, 9, 7, 4, 6, 8)
SWAP1_SLOTS_IMAGE = (2, 0, 0, 1, 1, 0, 1, 2, 1, 0)
SWAP1_DF_IMAGE = (-1, -1, 3, 1, 5, -1, 2, -1, 9, 7, -1, 4, -1, -1, 6, -1, 8)

# Slot-swap fixture 2 (two colors).
SWAP2_BASE = (1, 2, 9, 3, 5, 6, 4, 8, 7)
SWAP2_COLORS = {1: 1, 8: 1, 2: 2, 5: 2, 6: 2}
SWAP2_SLOTS = (0, 1, 0, 2, 0, 0, 0)
SWAP2_WEAK = (-1, 4, 1, 2, -1, 3)
SWAP2_SLOTS_IMAGE = (1, 0, 0, 2, 0, 0, 0)
SWAP2_DF_IMAGE = (-2, -1, 4, 1, -2, -2, 2, -1, 3)

# Standardization fixture: a 20-letter pair and every intermediate row.
GR_SIGMA = (3, 13, 5, 10, 16, 6, 2, 15, 20, 14, 4, 11, 7, 19, 8, 12, 17, 18, 1, 9)
GR_C = (5, 5, 4, 4, 4, 4, 3, 3, 3, 2, 2, 2, 2, 1, 1, 1, 1, 0, 0, 0)
GR_Z = (8, 8, 7, 7, 7, 6, 5, 5, 5, 4, 3, 3, 2, 2, 1, 1, 1, 1, 0, 0)
GR_CBAR = (13, 13, 11, 11, 11, 10, 8, 8, 8, 6, 5, 5, 4, 3, 2, 2, 2, 1, 0, 0)
GR_LINEARIZED = (18, 17, 9, 20, 8, 15, 6, 2, 13, 7, 1, 3, 5, 16, 12, 11, 4, 10, 14, 19)
GR_WORD = (1, 2, 8, 0, 8, 2, 10, 13, 4, 8, 13, 11, 11, 2, 5, 5, 11, 6, 3, 0)
GR_EFFECTIVE = (2, 5, 10)
GR_CROSSING_DESCENTS = (5, 10, 14)


# ---------------------------------------------------------------------------
# Brute-force tables (cached per size).
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def perm_stats_table(n: int) -> dict[tuple[int, int, int], int]:
    """(des, xdes, fix) -> count over all permutations of [n]."""
    table: dict[tuple[int, int, int], int] = defaultdict(int)
    if n == 0:
        table[(0, 0, 0)] = 1
        return dict(table)
    rng = range(1, n + 1)
    for p in permutations(rng):
        des = xdes = fx = 0
        prev = p[0]
        if prev == 1:
            fx = 1
        for j in range(1, n):
            cur = p[j]
            if cur == j + 1:
                fx += 1
            if prev > cur:
                des += 1
                if prev >= j + 1 and cur <= j + 1:
                    xdes += 1
            prev = cur
        table[(des, xdes, fx)] += 1
    return dict(table)


@lru_cache(maxsize=None)
def des_dez_table(n: int) -> dict[tuple[int, int], int]:
    """(des, dez) -> count over all permutations of [n].

    dez counts descents after negating fixed points: position j is a
    dez-descent when p_j is not fixed and either p_{j+1} is fixed or
    p_j > p_{j+1}.
    """
    table: dict[tuple[int, int], int] = defaultdict(int)
    if n == 0:
        table[(0, 0)] = 1
        return dict(table)
    for p in permutations(range(1, n + 1)):
        des = dez = 0
        for j in range(1, n):
            a, b = p[j - 1], p[j]
            if a > b:
                des += 1
            if a != j and (b == j + 1 or a > b):
                dez += 1
        table[(des, dez)] += 1
    return dict(table)


def _pairs_poly(pairs: dict[tuple[int, int], int], var1: str, var2: str) -> MultiPoly:
    out = MultiPoly()
    for (e1, e2), count in pairs.items():
        mono = MultiPoly.from_scalar(count)
        if e1:
            mono = mono * MultiPoly.var(var1, exp=e1)
        if e2:
            mono = mono * MultiPoly.var(var2, exp=e2)
        out = out + mono
    return out


def brute_F_series(order: int) -> TruncatedSeries:
    """Series in u of t^des s^xdes over derangements (coefficient 1 at 0)."""
    coeffs: list = [1]
    for n in range(1, order + 1):
        pairs: dict[tuple[int, int], int] = defaultdict(int)
        for (des, xdes, fx), count in perm_stats_table(n).items():
            if fx == 0:
                pairs[(des, xdes)] += count
        coeffs.append(_pairs_poly(pairs, "t", "s"))
    return TruncatedSeries("u", order, coeffs)


def brute_G_series(order: int) -> TruncatedSeries:
    """Series in u of x^des y^dez over permutations (coefficient 1 at 0)."""
    coeffs: list = [1]
    for n in range(1, order + 1):
        coeffs.append(_pairs_poly(des_dez_table(n), "x", "y"))
    return TruncatedSeries("u", order, coeffs)


def brute_F_trivariate_coeff(n: int) -> MultiPoly:
    """Coefficient of u^n in the t^des s^xdes r^fix permutation series."""
    out = MultiPoly()
    t, s, r = MultiPoly.var("t"), MultiPoly.var("s"), MultiPoly.var("r")
    for (des, xdes, fx), count in perm_stats_table(n).items():
        out = out + count * (t**des) * (s**xdes) * (r**fx)
    return out


@lru_cache(maxsize=None)
def arrangement_rows(n: int, k: int) -> tuple:
    """Per-arrangement data rows for the extensional and swap checks."""
    rows = []
    for arr in patterns.enumerate_class(ClassSpec("arrangements", n, k=k)):
        fx, fixvec = stats.fix_stats(arr)
        rows.append(
            (
                fixvec,
                stats.des(arr),
                stats.dez(arr),
                stats.descent_set(arr),
                stats.dez_set(arr),
                core.derangement_part(arr),
                core.weak_derangement_part(arr),
                arr,
            )
        )
    return tuple(rows)


def _binom(a: int, b: int) -> int:
    if b == 0:
        return 1
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def _marginal(dist: stats.StatDistribution) -> dict[int, int]:
    return {values[0]: count for values, count in dist.table.items()}


# ---------------------------------------------------------------------------
# Check result plumbing.
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    check_id: str
    status: str  # "pass" or "fail"
    params: dict
    witness: str | None
    seconds: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> str:
        return json.dumps(
            {
                "check": self.check_id,
                "status": self.status,
                "params": self.params,
                "witness": self.witness,
                "seconds": round(self.seconds, 3),
            }
        )


Verdict = "tuple[bool, str | None]"


def _ok() -> tuple[bool, str | None]:
    return True, None


def _fail(witness: str) -> tuple[bool, str | None]:
    return False, witness


# ---------------------------------------------------------------------------
# Individual checks.
# ---------------------------------------------------------------------------


def _check_tab1(n_max: int = 10):
    for pat, expected in TABLE1.items():
        got = patterns.der1_pattern_counts(pat, n_max)
        if got != list(expected[:n_max]):
            return _fail(f"pattern {pat}: got {got}, expected {expected[:n_max]}")
    return _ok()


def _check_thm_1_3(n_max: int = 10):
    a = patterns.der1_pattern_counts((3, 2, 1), n_max)
    b = patterns.der1_pattern_counts((1, 3, 2), n_max)
    if a != b:
        return _fail(f"321 counts {a} differ from 132 counts {b}")
    series = algebra.expand_closed_form("CF-321DER", n_max)
    if series.coeff(0) != 1:
        return _fail("constant coefficient is not 1")
    for n in range(1, n_max + 1):
        if series.coeff(n) != a[n - 1]:
            return _fail(f"series coefficient {n}: {series.coeff(n)} != {a[n - 1]}")
    return _ok()


def _check_thm_5_1(n_max: int = 7):
    for n in range(1, n_max + 1):
        expected = algebra.catalan_number(n + 2) - 2**n
        for pat in patterns.PATTERNS3:
            got = patterns.count_avoiders(ClassSpec("permForms", n, k=3, pattern=pat))
            if got != expected:
                return _fail(f"n={n} pattern {pat}: {got} != {expected}")
    return _ok()


def _check_thm_5_2(n_max: int = 9):
    for n in range(1, n_max + 1):
        expected = {}
        for kk in range(0, max(n - 1, 1)):
            val = Fraction(2, n + 1) * _binom(n + 1, kk + 2) * _binom(n - 2, kk)
            if val:
                if val.denominator != 1:
                    return _fail(f"formula value not integral at n={n}, k={kk}")
                expected[kk] = int(val)
        for pat in ((2, 1, 3), (3, 1, 2), (2, 3, 1), (1, 3, 2)):
            dist = patterns.avoider_distribution(
                ClassSpec("permForms", n - 1, k=2, pattern=pat), ("des",)
            )
            if _marginal(dist) != expected:
                return _fail(
                    f"n={n} pattern {pat}: {_marginal(dist)} != {expected}"
                )
    return _ok()


def _check_thm_5_4(n_max: int = 9):
    for n in range(1, n_max + 1):
        des_dist = _marginal(
            patterns.avoider_distribution(
                ClassSpec("permForms", n - 1, k=2, pattern=(3, 2, 1)), ("des",)
            )
        )
        peaks_dist = _marginal(
            patterns.avoider_distribution(
                ClassSpec("perms", n, pattern=(3, 2, 1)), ("peaks",)
            )
        )
        if des_dist != peaks_dist:
            return _fail(f"n={n}: des {des_dist} != peaks {peaks_dist}")
    return _ok()


def _check_eq_123_2des(series_order: int = 8):
    for n, expected in enumerate(P2_123_DES_POLYS):
        dist = _marginal(
            patterns.avoider_distribution(
                ClassSpec("permForms", n, k=2, pattern=(1, 2, 3)), ("des",)
            )
        )
        if dist != expected:
            return _fail(f"size {n}: distribution {dist} != {expected}")
    series = algebra.expand_closed_form("CF-123-2DES", series_order)
    t = MultiPoly.var("t")
    if series.coeff(0) != 1:
        return _fail("constant coefficient is not 1")
    for n in range(1, series_order + 1):
        dist = _marginal(
            patterns.avoider_distribution(
                ClassSpec("permForms", n, k=2, pattern=(1, 2, 3)), ("des",)
            )
        )
        shifted = MultiPoly()
        for d, count in dist.items():
            shifted = shifted + count * t ** (d + 1)
        if series.coeff(n) != shifted:
            return _fail(f"coefficient {n}: {series.coeff(n)} != {shifted}")
    return _ok()


def _check_gf_init():
    f4 = brute_F_series(4).coeff(4)
    if f4 != _pairs_poly(F_U4, "t", "s"):
        return _fail(f"fourth derangement coefficient {f4}")
    g4 = brute_G_series(4).coeff(4)
    if g4 != _pairs_poly(G_U4, "x", "y"):
        return _fail(f"fourth permutation coefficient {g4}")
    return _ok()


def _check_thm_4_2(u_order: int = 8):
    f = brute_F_series(u_order)
    g = brute_G_series(u_order)
    composed = algebra.compose_G_from_F(f, u_order)
    if composed != g:
        for n in range(u_order + 1):
            if not algebra.coeff_eq(composed.coeff(n), g.coeff(n)):
                return _fail(f"coefficient {n}: {composed.coeff(n)} != {g.coeff(n)}")
    swap = composed.map_coeffs(
        lambda c: MultiPoly.coerce(c).rename_scalars({"x": "y", "y": "x"}) if c else 0
    )
    if swap != composed:
        return _fail("composed series is not symmetric in x and y")
    return _ok()


def _check_thm_4_4(u_order: int = 7, m_max: int = 6):
    one_minus_t = 1 - MultiPoly.var("t")
    total = TruncatedSeries("u", u_order)
    t = MultiPoly.var("t")
    for m in range(m_max + 1):
        scaled = algebra.rho_Sm(m, u_order).rescale(one_minus_t)
        total = total + scaled * (t**m)
    lhs = total * one_minus_t
    for n in range(u_order + 1):
        want = brute_F_trivariate_coeff(n)
        got = MultiPoly.coerce(lhs.coeff(n)).truncate_degree("t", m_max)
        if got != want:
            return _fail(f"coefficient of u^{n} differs: {got} != {want}")
    return _ok()


def _check_p_forms(n_max: int = 9):
    s, r = MultiPoly.var("s"), MultiPoly.var("r")
    # closed forms for permutations with exactly m descents
    for m, cf in ((0, "CF-P0"), (1, "CF-P1"), (2, "CF-P2")):
        series = algebra.expand_closed_form(cf, n_max)
        for n in range(n_max + 1):
            brute = MultiPoly()
            for (des, xdes, fx), count in perm_stats_table(n).items():
                if des == m:
                    brute = brute + count * (s**xdes) * (r**fx)
            if not algebra.coeff_eq(series.coeff(n), brute):
                return _fail(f"{cf} at u^{n}: {series.coeff(n)} != {brute}")
    # collapsed slot series for m = 1, 2
    for m, cf in ((1, "CF-RHO-S1"), (2, "CF-RHO-S2")):
        series = algebra.expand_closed_form(cf, n_max)
        for n in range(n_max + 1):
            brute = MultiPoly()
            for (des, xdes, fx), count in perm_stats_table(n).items():
                if des <= m:
                    brute = brute + (
                        count * comb(m - des + n, n) * (s**xdes) * (r**fx)
                    )
            if not algebra.coeff_eq(series.coeff(n), brute):
                return _fail(f"{cf} at u^{n}: {series.coeff(n)} != {brute}")
    return _ok()


def _check_thm_4_10(m_max: int = 2, n_max: int = 6):
    for m in range(m_max + 1):
        rhs = algebra.expand_decrease_value_rhs(m, n_max)
        for n in range(n_max + 1):
            lhs = MultiPoly()
            for word in product(range(m + 1), repeat=n):
                lhs = lhs + bijections.weight_psi(word)
            if not algebra.coeff_eq(rhs.coeff(n), lhs):
                return _fail(f"alphabet 0..{m}, length {n}: expansion differs")
    return _ok()


def _check_genocchi(kind: str, m_max: int):
    expected = GENOCCHI_FIRST if kind == "first" else GENOCCHI_SECOND
    for m in range(1, m_max + 1):
        total = 0
        for (des, xdes, fx), count in perm_stats_table(2 * m).items():
            if des == m and xdes == m and (kind == "first" or fx == 0):
                total += count
        if total != expected[m - 1]:
            return _fail(f"m={m}: {total} != {expected[m - 1]}")
    return _ok()


def _tau_images(vec: tuple[int, ...], tau: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(vec[t - 1] for t in tau)


def _check_thm_1_1(n_max: int = 6, k_max: int = 3):
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            groups: dict[tuple[int, ...], list] = defaultdict(list)
            for row in arrangement_rows(n, k):
                groups[row[0]].append(row)
            vectors = set(groups)
            for tau in permutations(range(1, k + 1)):
                for vec in vectors:
                    image = _tau_images(vec, tau)
                    left = Counter((row[4], row[5]) for row in groups.get(vec, ()))
                    right = Counter((row[3], row[5]) for row in groups.get(image, ()))
                    if left != right:
                        return _fail(
                            f"n={n} k={k} tau={tau} m={vec}: multisets differ"
                        )
    return _ok()


def _check_thm_1_2(n_max: int = 6, k_max: int = 3):
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            groups: dict[tuple[int, ...], list] = defaultdict(list)
            for row in arrangement_rows(n, k):
                groups[row[0]].append(row)
            vectors = set(groups)
            for tau in permutations(range(1, k)):
                full_tau = tau + (k,)
                for vec in vectors:
                    image = _tau_images(vec, full_tau)
                    left = Counter((row[1], row[2], row[5]) for row in groups.get(vec, ()))
                    right = Counter(
                        (row[2], row[1], row[5]) for row in groups.get(image, ())
                    )
                    if left != right:
                        return _fail(
                            f"n={n} k={k} tau={tau} m={vec}: multisets differ"
                        )
    return _ok()


def _check_slot_swap(n_max: int = 6, k_max: int = 3):
    # worked fixture 1
    a = core.from_permutation_form(SWAP1_PERM, 1)
    sd = core.slot_decompose(core.derangement_form(a), 1)
    if sd.slot_lengths != SWAP1_SLOTS or sd.weak_part != SWAP1_DER:
        return _fail("fixture 1: slot decomposition mismatch")
    image = bijections.slot_swap(a)
    sd_image = core.slot_decompose(core.derangement_form(image), 1)
    if sd_image.slot_lengths != SWAP1_SLOTS_IMAGE:
        return _fail("fixture 1: image slots mismatch")
    if core.derangement_form(image) != SWAP1_DF_IMAGE:
        return _fail("fixture 1: image derangement form mismatch")
    if (stats.des(a), stats.dez(a)) != (7, 8):
        return _fail("fixture 1: (des, dez) mismatch")
    if (stats.des(image), stats.dez(image)) != (8, 7):
        return _fail("fixture 1: image (des, dez) mismatch")
    # worked fixture 2
    b = ColoredArrangement.from_map(SWAP2_BASE, 2, SWAP2_COLORS)
    sdb = core.slot_decompose(core.derangement_form(b), 2)
    if sdb.slot_lengths != SWAP2_SLOTS or sdb.weak_part != SWAP2_WEAK:
        return _fail("fixture 2: slot decomposition mismatch")
    image_b = bijections.slot_swap(b)
    sdb_image = core.slot_decompose(core.derangement_form(image_b), 2)
    if sdb_image.slot_lengths != SWAP2_SLOTS_IMAGE:
        return _fail("fixture 2: image slots mismatch")
    if core.derangement_form(image_b) != SWAP2_DF_IMAGE:
        return _fail("fixture 2: image derangement form mismatch")
    if (stats.des(b), stats.dez(b)) != (3, 4):
        return _fail("fixture 2: (des, dez) mismatch")
    # exhaustive involution / preservation / swap
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            for row in arrangement_rows(n, k):
                arr = row[7]
                image = bijections.slot_swap(arr)
                if bijections.slot_swap(image) != arr:
                    return _fail(f"not an involution at {arr}")
                if core.weak_derangement_part(image) != row[6]:
                    return _fail(f"weak part not preserved at {arr}")
                if stats.fix_stats(image) != stats.fix_stats(arr):
                    return _fail(f"fixed-point colors not preserved at {arr}")
                if (stats.des(image), stats.dez(image)) != (row[2], row[1]):
                    return _fail(f"(des, dez) not swapped at {arr}")
    return _ok()


def _check_gr(n_max: int = 6, m_max: int = 3):
    # 20-letter fixture, every intermediate row
    if bijections.descent_suffix_counts(GR_SIGMA) != GR_Z:
        return _fail("fixture: descent suffix counts differ")
    if tuple(z + c for z, c in zip(GR_Z, GR_C)) != GR_CBAR:
        return _fail("fixture: shifted word differs")
    if bijections.cycle_linearization(GR_SIGMA) != GR_LINEARIZED:
        return _fail("fixture: cycle linearization differs")
    pair = GRPair(GR_SIGMA, GR_C)
    if bijections.gr_inverse(pair) != GR_WORD:
        return _fail("fixture: word reconstruction differs")
    back = bijections.gr_forward(GR_WORD)
    if back != pair:
        return _fail("fixture: standardization differs")
    mono = bijections.gamma_substitute(bijections.weight_psi(GR_WORD))
    if algebra.effective_indices(next(iter(mono.terms))) != GR_EFFECTIVE:
        return _fail("fixture: effective indices differ")
    if _crossing_descents(GR_SIGMA) != GR_CROSSING_DESCENTS:
        return _fail("fixture: crossing descents differ")

    for m in range(m_max + 1):
        for n in range(n_max + 1):
            for word in product(range(m + 1), repeat=n):
                pair = bijections.gr_forward(word)
                if bijections.gr_inverse(pair) != word:
                    return _fail(f"roundtrip fails for {word}")
                if stats.des(pair.sigma) > m:
                    return _fail(f"descent bound fails for {word}")
                if pair.c and pair.c[0] > m - stats.des(pair.sigma):
                    return _fail(f"attached word too large for {word}")
                witness = _obs_and_crossing(word, pair)
                if witness:
                    return _fail(witness)
    # pairs direction
    for n in range(n_max + 1):
        for sigma in permutations(range(1, n + 1)):
            d = stats.des(sigma)
            for m in range(m_max + 1):
                if d > m:
                    continue
                for c in _noninc_words(n, m - d):
                    pair = GRPair(sigma, c)
                    if bijections.gr_forward(bijections.gr_inverse(pair)) != pair:
                        return _fail(f"pair roundtrip fails for {pair}")
    return _ok()


def _crossing_descents(perm) -> tuple[int, ...]:
    p = tuple(perm)
    return tuple(
        i
        for i in range(1, len(p))
        if p[i - 1] > p[i] and p[i - 1] >= i + 1 and p[i] <= i + 1
    )


def _noninc_words(n: int, top: int):
    if top < 0:
        return
    word = [0] * n

    def walk(i: int, bound: int):
        if i == n:
            yield tuple(word)
            return
        for v in range(bound, -1, -1):
            word[i] = v
            yield from walk(i + 1, v)

    yield from walk(0, top)


def _obs_and_crossing(word, pair: GRPair) -> str | None:
    """Decrease/excedance, record-increase/fixed-point, and crossing
    descent/effective index correspondences for one standardized word."""
    sigma = pair.sigma
    lin = bijections.cycle_linearization(sigma)
    cls = bijections.classify_positions(word)
    dec = set(cls["dec"])
    rec_inc = set(cls["inc"]) & set(cls["rec"])
    for i in range(1, len(word) + 1):
        label = lin[i - 1]
        if (i in dec) != (sigma[label - 1] > label):
            return f"decrease/excedance fails at position {i} of {word}"
        if (i in rec_inc) != (sigma[label - 1] == label):
            return f"record-increase/fixed-point fails at position {i} of {word}"
    if word:
        mono_poly = bijections.gamma_substitute(bijections.weight_psi(word))
        (mono,) = mono_poly.terms
        effective = set(algebra.effective_indices(mono))
        z = bijections.descent_suffix_counts(sigma)
        cbar = [zi + ci for zi, ci in zip(z, pair.c)]
        crossings = _crossing_descents(sigma)
        from_crossings = {cbar[i] for i in crossings}
        if from_crossings != effective or len(crossings) != len(effective):
            return f"crossing/effective correspondence fails for {word}"
    return None


def _check_dyck_layer(n_max: int = 8, hill_order: int = 9):
    for n in range(n_max + 1):
        images = set()
        for path in patterns.enumerate_class(ClassSpec("dyck", n)):
            perm = bijections.krattenthaler(path)
            if patterns.contains_pattern(perm, (3, 2, 1)):
                return _fail(f"image of {path} contains the forbidden pattern")
            images.add(perm)
            hill, seg, lseg = bijections.dyck_stats(path)
            expected = (stats.fix(perm), stats.des(perm), stats.ldes(perm) + 1)
            if (hill, seg, lseg) != expected:
                return _fail(f"statistics differ at {path}: {(hill, seg, lseg)} vs {expected}")
        avoiders = set(
            patterns.enumerate_class(ClassSpec("perms", n, pattern=(3, 2, 1)))
        )
        if images != avoiders:
            return _fail(f"size {n}: image is not all avoiders")
    series = algebra.expand_closed_form("CF-0HILL", hill_order)
    p = MultiPoly.var("p")
    if series.coeff(0) != p:
        return _fail("hill-free series constant term is not p")
    for n in range(1, hill_order + 1):
        from_paths = MultiPoly()
        for path in patterns.enumerate_class(ClassSpec("dyck", n)):
            hill, _, lseg = bijections.dyck_stats(path)
            if hill == 0:
                from_paths = from_paths + p**lseg
        from_perms = MultiPoly()
        for perm in patterns.enumerate_class(
            ClassSpec("derangements", n, pattern=(3, 2, 1))
        ):
            from_perms = from_perms + p ** (stats.ldes(perm) + 1)
        if from_paths != from_perms:
            return _fail(f"size {n}: path and permutation routes disagree")
        if not algebra.coeff_eq(series.coeff(n), from_paths):
            return _fail(f"size {n}: series coefficient differs")
    return _ok()


def _check_narayana(nara_n: int = 8, eq312_n: int = 7):
    t = MultiPoly.var("t")
    nara = algebra.expand_closed_form("CF-NARA", nara_n)
    for pat in ((2, 1, 3), (3, 1, 2), (2, 3, 1), (1, 3, 2)):
        for n in range(nara_n + 1):
            dist = _marginal(
                patterns.avoider_distribution(
                    ClassSpec("perms", n, pattern=pat), ("des",)
                )
            )
            poly = MultiPoly()
            for d, count in dist.items():
                poly = poly + count * t**d
            if not algebra.coeff_eq(nara.coeff(n), poly):
                return _fail(f"pattern {pat} size {n}: {nara.coeff(n)} != {poly}")
    for cf, pat in (("CF-EQ312", (3, 1, 2)), ("CF-231H", (2, 3, 1))):
        series = algebra.expand_closed_form(cf, eq312_n)
        for n in range(eq312_n + 1):
            dist = _marginal(
                patterns.avoider_distribution(
                    ClassSpec("permForms", n, k=2, pattern=pat), ("des",)
                )
            )
            poly = MultiPoly()
            for d, count in dist.items():
                poly = poly + count * t**d
            if not algebra.coeff_eq(series.coeff(n), poly):
                return _fail(f"{cf} size {n}: {series.coeff(n)} != {poly}")
    return _ok()


def _check_lem_3_4(n_max: int = 6, k_max: int = 3):
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            for row in arrangement_rows(n, k):
                _, des_a, dez_a, _, _, _, weak, arr = row
                if not weak:
                    continue
                word = core.derangement_form(arr)
                sd = core.slot_decompose(word, k)
                types = core.slot_types(weak)
                ones = [i for i, tp in enumerate(types) if tp == "I"]
                twos = [i for i, tp in enumerate(types) if tp == "II"]
                if len(ones) != len(twos):
                    return _fail(f"type counts differ at {word}")
                merged = sorted((i, tp) for i, tp in enumerate(types) if tp in ("I", "II"))
                expected_kinds = ["I", "II"] * len(ones)
                if [tp for _, tp in merged] != expected_kinds:
                    return _fail(f"types do not alternate at {word}")
                if types[-1] != "II":
                    return _fail(f"last slot not of type II at {word}")
                m = len(weak)
                des_weak = stats.des(weak)
                t4 = sum(1 for tp in types if tp == "IV")
                if len(ones) + t4 != des_weak + 1:
                    return _fail(f"descent identity fails at {word}")
                if len(types) != m + 1:
                    return _fail(f"slot count fails at {word}")
                plus = [0] * 4
                for i, tp in enumerate(types):
                    if sd.slot_lengths[i] > 0:
                        plus["I II III IV".split().index(tp)] += 1
                if des_a != des_weak + plus[0] + plus[2]:
                    return _fail(f"descent change fails at {word}")
                if dez_a != des_weak + plus[1] + plus[2]:
                    return _fail(f"derangement-descent change fails at {word}")
                # excedance marks survive the removal of -k letters
                base_marks = core.excedance_word(arr.base)
                weak_marks = core.excedance_word(weak) if weak else ""
                positions = [i for i, v in enumerate(word, start=1) if v != -k]
                for j, pos in enumerate(positions):
                    if weak_marks[j] != base_marks[pos - 1]:
                        return _fail(f"excedance mark changed at {word}")
    return _ok()


def _check_lem_5_6(n_max: int = 8):
    for n in range(n_max + 1):
        ok, witness = bijections.check_equidistribution(
            patterns.enumerate_class(ClassSpec("perms", n, pattern=(3, 2, 1))),
            patterns.enumerate_class(ClassSpec("perms", n, pattern=(1, 3, 2))),
            lambda p: (stats.fix(p), stats.exc(p), stats.ldes(p)),
            lambda p: (stats.fix(p), stats.aexc(p), stats.rdes(p)),
        )
        if not ok:
            return _fail(f"size {n}: {witness}")
    return _ok()


# ---------------------------------------------------------------------------
# Registry and runners.
# ---------------------------------------------------------------------------

CHECKS: dict[str, Callable] = {
    "TAB-1": _check_tab1,
    "THM-1.1": _check_thm_1_1,
    "THM-1.2": _check_thm_1_2,
    "THM-1.3": _check_thm_1_3,
    "LEM-3.4": _check_lem_3_4,
    "LEM-5.6": _check_lem_5_6,
    "PSI-K": _check_slot_swap,
    "GR-ROUNDTRIP": _check_gr,
    "THM-4.2": _check_thm_4_2,
    "THM-4.4": _check_thm_4_4,
    "THM-4.10": _check_thm_4_10,
    "P-FORMS": _check_p_forms,
    "GF-INIT": _check_gf_init,
    "GEN-1": lambda m_max=4: _check_genocchi("first", m_max),
    "GEN-2": lambda m_max=4: _check_genocchi("second", m_max),
    "THM-5.1": _check_thm_5_1,
    "THM-5.2": _check_thm_5_2,
    "THM-5.4": _check_thm_5_4,
    "EQ-123-2DES": _check_eq_123_2des,
    "DYCK-LAYER": _check_dyck_layer,
    "NARAYANA": _check_narayana,
}

QUICK_PARAMS: dict[str, dict] = {
    "TAB-1": {"n_max": 8},
    "THM-1.1": {"n_max": 5, "k_max": 3},
    "THM-1.2": {"n_max": 5, "k_max": 3},
    "THM-1.3": {"n_max": 8},
    "LEM-3.4": {"n_max": 5, "k_max": 3},
    "LEM-5.6": {"n_max": 6},
    "PSI-K": {"n_max": 5, "k_max": 3},
    "GR-ROUNDTRIP": {"n_max": 5, "m_max": 3},
    "THM-4.2": {"u_order": 6},
    "THM-4.4": {"u_order": 5, "m_max": 6},
    "THM-4.10": {"m_max": 2, "n_max": 4},
    "P-FORMS": {"n_max": 7},
    "GF-INIT": {},
    "GEN-1": {"m_max": 3},
    "GEN-2": {"m_max": 3},
    "THM-5.1": {"n_max": 5},
    "THM-5.2": {"n_max": 7},
    "THM-5.4": {"n_max": 7},
    "EQ-123-2DES": {"series_order": 6},
    "DYCK-LAYER": {"n_max": 6, "hill_order": 7},
    "NARAYANA": {"nara_n": 6, "eq312_n": 6},
}

FULL_PARAMS: dict[str, dict] = {
    "TAB-1": {"n_max": 10},
    "THM-1.1": {"n_max": 6, "k_max": 3},
    "THM-1.2": {"n_max": 6, "k_max": 3},
    "THM-1.3": {"n_max": 10},
    "LEM-3.4": {"n_max": 6, "k_max": 3},
    "LEM-5.6": {"n_max": 8},
    "PSI-K": {"n_max": 6, "k_max": 3},
    "GR-ROUNDTRIP": {"n_max": 6, "m_max": 3},
    "THM-4.2": {"u_order": 8},
    "THM-4.4": {"u_order": 7, "m_max": 6},
    "THM-4.10": {"m_max": 2, "n_max": 6},
    "P-FORMS": {"n_max": 9},
    "GF-INIT": {},
    "GEN-1": {"m_max": 5},
    "GEN-2": {"m_max": 5},
    "THM-5.1": {"n_max": 7},
    "THM-5.2": {"n_max": 9},
    "THM-5.4": {"n_max": 9},
    "EQ-123-2DES": {"series_order": 8},
    "DYCK-LAYER": {"n_max": 8, "hill_order": 9},
    "NARAYANA": {"nara_n": 8, "eq312_n": 7},
}


def run_check(check_id: str, **params) -> CheckResult:
    """Run one named check; unknown ids raise ValueError."""
    try:
        fn = CHECKS[check_id]
    except KeyError:
        raise ValueError(f"unknown check id {check_id!r}") from None
    start = time.perf_counter()
    ok, witness = fn(**params)
    elapsed = time.perf_counter() - start
    return CheckResult(check_id, "pass" if ok else "fail", params, witness, elapsed)


def run_all(profile: str = "quick") -> list[CheckResult]:
    """Run every check under a profile; failures are reported, not raised."""
    if profile == "quick":
        table = QUICK_PARAMS
    elif profile == "full":
        table = FULL_PARAMS
    else:
        raise ValueError(f"unknown profile {profile!r}")
    results = []
    for check_id in sorted(CHECKS):
        results.append(run_check(check_id, **table[check_id]))
    return results
