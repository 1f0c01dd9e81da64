"""Explicit bijections and word-weight machinery.

Contents:

- ``slot_swap``: the involution on colored arrangements that exchanges the
  lengths of the alternating type-I / type-II slots of the derangement
  form, swapping the descent counts of the two word encodings while
  preserving the weak derangement part and every per-color fixed count.
- Lyndon factorization in the max-at-front convention: every factor is
  strictly greater than all of its proper rotations, and factors are
  nondecreasing when compared as infinite powers.
- The Gessel-Reutenauer standardization between words over {0..m} and
  pairs (permutation, nonincreasing word), in both directions.
- The six-family weight of a word (by descent / decrease / ascent /
  increase and record status) and the substitution collapsing it to
  three families.
- Krattenthaler's bijection from Dyck paths to 321-avoiding permutations
  together with the hill / segment / leftmost-segment statistics.
- A generic multiset-equidistribution checker used for the results whose
  explicit maps are not constructed here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import core
from .algebra import MultiPoly
from .core import ColoredArrangement, SlotDecomposition

_INF = float("inf")


# ---------------------------------------------------------------------------
# The slot-swapping involution.
# ---------------------------------------------------------------------------


def slot_swap(arr: ColoredArrangement) -> ColoredArrangement:
    """Exchange the slot lengths of type-I and type-II slots pairwise.

    Type-I and type-II slots alternate (starting with type I), and the
    map pairs each type-I slot with the following type-II slot.  The
    weak derangement part is untouched; an arrangement with empty weak
    part is returned unchanged.  The map is an involution and swaps the
    descent counts of the permutation form and the derangement form.
    """
    if arr.k < 1:
        raise ValueError("slot swapping needs at least one color")
    word = core.derangement_form(arr)
    sd = core.slot_decompose(word, arr.k)
    if not sd.weak_part:
        return arr
    types = core.slot_types(sd.weak_part)
    ones = [i for i, t in enumerate(types) if t == "I"]
    twos = [i for i, t in enumerate(types) if t == "II"]
    if len(ones) != len(twos):
        raise AssertionError(f"type I/II slots do not pair up in {word!r}")
    lengths = list(sd.slot_lengths)
    for a, b in zip(ones, twos):
        if not a < b:
            raise AssertionError(f"type I/II slots do not alternate in {word!r}")
        lengths[a], lengths[b] = lengths[b], lengths[a]
    swapped = core.slot_compose(SlotDecomposition(tuple(lengths), sd.weak_part, arr.k))
    return core.from_derangement_form(swapped, arr.k)


# ---------------------------------------------------------------------------
# Lyndon factorization (max-at-front convention).
# ---------------------------------------------------------------------------


def is_lyndon(word: Sequence[int]) -> bool:
    """True if the word is strictly greater than all its proper rotations."""
    w = tuple(word)
    if not w:
        return False
    return all(w > w[i:] + w[:i] for i in range(1, len(w)))


def power_compare(u: Sequence[int], v: Sequence[int]) -> int:
    """Compare u and v as infinite powers u^oo vs v^oo: -1, 0, or +1."""
    u, v = tuple(u), tuple(v)
    length = len(u) + len(v)
    uu = (u * (length // len(u) + 1))[:length]
    vv = (v * (length // len(v) + 1))[:length]
    return (uu > vv) - (uu < vv)


def lyndon_factorize(word: Sequence[int]) -> list[tuple[int, ...]]:
    """Unique factorization into max-at-front Lyndon words, nondecreasing
    as infinite powers.

    >>> lyndon_factorize((1, 2, 1, 0, 0, 2, 2, 4, 5, 3, 1, 0, 2, 1, 2, 5))
    [(1,), (2, 1, 0, 0), (2,), (2,), (4,), (5, 3, 1, 0, 2, 1, 2), (5,)]
    """
    w = tuple(word)
    if not w:
        raise ValueError("cannot factorize the empty word")
    factors: list[tuple[int, ...]] = []
    i, n = 0, len(w)
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] >= w[j]:
            if w[k] > w[j]:
                k = i
            else:
                k += 1
            j += 1
        step = j - k
        while i <= k:
            factors.append(w[i : i + step])
            i += step
    return factors


# ---------------------------------------------------------------------------
# Gessel-Reutenauer standardization.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GRPair:
    """A permutation together with a nonincreasing nonnegative word."""

    sigma: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        core.check_permutation(self.sigma)
        if len(self.c) != len(self.sigma):
            raise ValueError("attached word must have the permutation's length")
        if any(v < 0 for v in self.c):
            raise ValueError("attached word must be nonnegative")
        if any(self.c[i] < self.c[i + 1] for i in range(len(self.c) - 1)):
            raise ValueError("attached word must be nonincreasing")


def cycle_linearization(perm: Sequence[int]) -> tuple[int, ...]:
    """Cycles with minima leading, listed with first letters decreasing,
    parentheses removed.

    >>> cycle_linearization((2, 1, 4, 3))
    (3, 4, 1, 2)
    """
    p = core.check_permutation(perm)
    seen = [False] * (len(p) + 1)
    cycles = []
    for start in range(1, len(p) + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        nxt = p[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p[nxt - 1]
        cycles.append(cyc)
    cycles.sort(key=lambda cyc: -cyc[0])
    return tuple(v for cyc in cycles for v in cyc)


def descent_suffix_counts(perm: Sequence[int]) -> tuple[int, ...]:
    """z_i = number of descents of the permutation at positions >= i."""
    p = tuple(perm)
    n = len(p)
    z = [0] * (n + 1)
    for i in range(n - 1, 0, -1):
        z[i] = z[i + 1] + (1 if p[i - 1] > p[i] else 0)
    return tuple(z[1:])


def gr_inverse(pair: GRPair) -> tuple[int, ...]:
    """Word attached to a pair: positionwise values of z + c read along the
    cycle linearization.

    >>> gr_inverse(GRPair((2, 1), (0, 0)))
    (1, 0)
    """
    sigma, c = pair.sigma, pair.c
    z = descent_suffix_counts(sigma)
    cbar = [zi + ci for zi, ci in zip(z, c)]
    lin = cycle_linearization(sigma)
    return tuple(cbar[v - 1] for v in lin)


def gr_forward(word: Sequence[int]) -> GRPair:
    """Standardize a word over nonnegative integers into a pair.

    Positions are ranked by comparing the infinite periodic continuation
    of each position within its Lyndon factor, largest first; exact ties
    (equal adjacent factors) are broken in favor of the later factor.
    Round trips with :func:`gr_inverse` exactly.
    """
    w = tuple(word)
    if any(v < 0 for v in w):
        raise ValueError("letters must be nonnegative")
    n = len(w)
    if n == 0:
        return GRPair((), ())
    factors = lyndon_factorize(w)
    keys: list[tuple[tuple[int, ...], int]] = []
    for fi, f in enumerate(factors):
        length = len(f)
        for off in range(length):
            rot = f[off:] + f[:off]
            ext = (rot * (2 * n // length + 1))[: 2 * n]
            keys.append((tuple(-x for x in ext), -fi))
    order = sorted(range(n), key=lambda i: keys[i])
    rank = [0] * n
    for r, i in enumerate(order):
        rank[i] = r + 1
    sigma = [0] * (n + 1)
    pos = 0
    for f in factors:
        length = len(f)
        for t in range(length):
            sigma[rank[pos + t]] = rank[pos + (t + 1) % length]
        pos += length
    cbar = [0] * n
    for i in range(n):
        cbar[rank[i] - 1] = w[i]
    perm = tuple(sigma[1:])
    z = descent_suffix_counts(perm)
    c = tuple(cb - zi for cb, zi in zip(cbar, z))
    return GRPair(perm, c)


# ---------------------------------------------------------------------------
# Word weights.
# ---------------------------------------------------------------------------


def classify_positions(word: Sequence[int]) -> dict[str, tuple[int, ...]]:
    """Split 1..n into decreases/increases with descent/ascent/record marks.

    A sentinel +infinity letter is appended, so the last position is
    always an ascent.  Position i is a decrease when its maximal run of
    equal letters ends with a strict drop, an increase otherwise; it is
    a record when no earlier letter exceeds it.
    """
    w = tuple(word)
    n = len(w)
    dec, des_, inc, asc = set(), set(), set(), set()
    i = 0
    while i < n:
        j = i
        while j + 1 < n and w[j + 1] == w[i]:
            j += 1
        nxt = _INF if j == n - 1 else w[j + 1]
        if w[i] > nxt:
            dec.update(range(i + 1, j + 2))
            des_.add(j + 1)
        else:
            inc.update(range(i + 1, j + 2))
            asc.add(j + 1)
        i = j + 1
    rec = set()
    best: float | int = -_INF
    for i, v in enumerate(w, start=1):
        if v >= best:
            rec.add(i)
            best = v
    return {
        "dec": tuple(sorted(dec)),
        "des": tuple(sorted(des_)),
        "inc": tuple(sorted(inc)),
        "asc": tuple(sorted(asc)),
        "rec": tuple(sorted(rec)),
    }


def weight_psi(word: Sequence[int]) -> MultiPoly:
    """Weight of a word: one variable per position, chosen among six
    families by (descent / other decrease / ascent / other increase)
    crossed with record status, indexed by the letter value.

    Records only matter on increases: descents map to X, non-descent
    decreases to Z, ascents to Y' (record) or Y, non-ascent increases to
    T' (record) or T.  Returns a single-monomial polynomial.

    >>> str(weight_psi((3,)))
    "Y'_3"
    """
    cls = classify_positions(word)
    dec, des_, asc = set(cls["dec"]), set(cls["des"]), set(cls["asc"])
    rec = set(cls["rec"])
    out = MultiPoly.from_scalar(1)
    for i, x in enumerate(word, start=1):
        if i in des_:
            fam = "X"
        elif i in dec:
            fam = "Z"
        elif i in asc:
            fam = "Yp" if i in rec else "Y"
        else:
            fam = "Tp" if i in rec else "T"
        out = out * MultiPoly.var(fam, x)
    return out


_GAMMA = {
    # family -> (new family, extra u power, extra r power)
    "X": ("X", 1, 0),
    "Z": ("X", 1, 0),
    "Y": ("Y", 1, 0),
    "T": ("Y", 1, 0),
    "Yp": ("Z", 1, 1),
    "Tp": ("Z", 1, 1),
}


def gamma_substitute(poly: MultiPoly) -> MultiPoly:
    """Collapse the six weight families to three: X_j and Z_j become u*X_j,
    Y_j and T_j become u*Y_j, and the primed record families Y'_j, T'_j
    become r*u*Z_j.  Applied monomial by monomial.

    >>> str(gamma_substitute(MultiPoly.var("Yp", 1)))
    'u*r*Z_1'
    """
    out = MultiPoly()
    for mono, coeff in poly.terms.items():
        exps: dict = {}
        u_power = 0
        r_power = 0
        for (name, idx), e in mono:
            if idx < 0:
                exps[(name, idx)] = exps.get((name, idx), 0) + e
                continue
            if name not in _GAMMA:
                raise ValueError(f"variable family {name!r} has no substitution")
            new_fam, du, dr = _GAMMA[name]
            exps[(new_fam, idx)] = exps.get((new_fam, idx), 0) + e
            u_power += du * e
            r_power += dr * e
        if u_power:
            exps[("u", -1)] = exps.get(("u", -1), 0) + u_power
        if r_power:
            exps[("r", -1)] = exps.get(("r", -1), 0) + r_power
        out = out + MultiPoly({tuple(sorted(exps.items())): coeff})
    return out


# ---------------------------------------------------------------------------
# Dyck paths.
# ---------------------------------------------------------------------------


def check_dyck(heights: Sequence[int]) -> tuple[int, ...]:
    """Validate east-step heights: nondecreasing with d_i <= i-1."""
    d = tuple(heights)
    for i, h in enumerate(d, start=1):
        if h < 0 or h > i - 1:
            raise ValueError(f"east step {i} at height {h} leaves the staircase region")
        if i > 1 and h < d[i - 2]:
            raise ValueError("heights must be nondecreasing")
    return d


def krattenthaler(heights: Sequence[int]) -> tuple[int, ...]:
    """Bijection from Dyck paths onto 321-avoiding permutations.

    Steps followed by a north step (or the last step) map to height + 1;
    the remaining positions are filled left to right with the unused
    values in increasing order.

    >>> krattenthaler((0, 1, 2, 2, 2, 4, 5, 6, 6))
    (1, 2, 4, 8, 3, 5, 6, 9, 7)
    """
    d = check_dyck(heights)
    n = len(d)
    perm = [0] * n
    used = set()
    for i in range(1, n + 1):
        if i == n or d[i - 1] != d[i]:
            perm[i - 1] = d[i - 1] + 1
            used.add(d[i - 1] + 1)
    fillers = iter(sorted(set(range(1, n + 1)) - used))
    for i in range(n):
        if perm[i] == 0:
            perm[i] = next(fillers)
    return tuple(perm)


def dyck_stats(heights: Sequence[int]) -> tuple[int, int, int]:
    """(hill, seg, lseg) of a Dyck path.

    A hill is an east step starting on the diagonal followed immediately
    by a north step; a segment is a maximal run of >= 2 equal heights;
    lseg is the index of the last step of the leftmost segment, or n + 1
    for the staircase path without segments (1 when n = 0).

    >>> dyck_stats((0, 1, 2, 2, 2, 4, 5, 6, 6))
    (2, 2, 5)
    """
    d = check_dyck(heights)
    n = len(d)
    hill = sum(
        1
        for i in range(1, n + 1)
        if d[i - 1] == i - 1 and (i == n or d[i] > d[i - 1])
    )
    seg = 0
    lseg = n + 1
    i = 0
    while i < n:
        j = i
        while j + 1 < n and d[j + 1] == d[i]:
            j += 1
        if j > i:
            seg += 1
            if lseg == n + 1:
                lseg = j + 1
        i = j + 1
    return hill, seg, lseg


# ---------------------------------------------------------------------------
# Extensional equidistribution checking.
# ---------------------------------------------------------------------------


def check_equidistribution(
    class_a: Iterable,
    class_b: Iterable,
    stats_a: Callable,
    stats_b: Callable,
) -> tuple[bool, str | None]:
    """Compare the multisets {stats_a(x)} over class_a and {stats_b(y)}
    over class_b.  Returns (True, None) on equality, otherwise (False,
    witness) naming one differing tuple and its two multiplicities.
    """
    count_a = Counter(stats_a(obj) for obj in class_a)
    count_b = Counter(stats_b(obj) for obj in class_b)
    if count_a == count_b:
        return True, None
    for key in sorted(set(count_a) | set(count_b)):
        if count_a.get(key, 0) != count_b.get(key, 0):
            return False, (
                f"tuple {key}: {count_a.get(key, 0)} on the left, "
                f"{count_b.get(key, 0)} on the right"
            )
    raise AssertionError("unreachable")
