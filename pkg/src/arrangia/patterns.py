"""Pattern containment and exhaustive enumeration of word classes.

Classes are described by :class:`ClassSpec` and enumerated in
lexicographic order as streams.  Containment of a classical pattern in a
signed word means some subsequence reduces (by letter rank, negatives
included) to the pattern; length-3 patterns use linear-time scanners,
longer patterns a backtracking matcher.

For derangement-form words with one color there is also a fast counting
path: a word avoids a length-3 pattern exactly when its positive part
avoids the pattern and every -1 letter sits in a "safe" slot, a condition
depending only on the positive part.  Aggregating derangements by their
number of safe slots turns the count into a binomial convolution.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations, product
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from . import core, stats
from .bijections import dyck_stats
from .core import ColoredArrangement
from .stats import StatDistribution

DEFAULT_MAX_OBJECTS = 10**8

PATTERNS3 = ((1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1))

FAMILIES = ("perms", "derangements", "arrangements", "permForms", "derForms", "dyck")


class ResourceLimitError(RuntimeError):
    """An enumeration exceeded the configured object cap."""


def resource_cap() -> int:
    value = os.environ.get("ARRANGIA_MAX_OBJECTS")
    return int(value) if value else DEFAULT_MAX_OBJECTS


@dataclass(frozen=True)
class ClassSpec:
    """A finite class of combinatorial objects.

    family: one of perms | derangements | arrangements | permForms |
    derForms | dyck.  ``k`` is the color count where it applies,
    ``pattern`` restricts to avoiders, ``multiplicity`` fixes the
    per-color fixed point counts of arrangements.
    """

    family: str
    n: int
    k: int | None = None
    pattern: tuple[int, ...] | None = None
    multiplicity: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 0:
            raise ValueError("class size must be nonnegative")
        if self.family in ("arrangements", "permForms", "derForms"):
            if self.k is None or self.k < 0:
                raise ValueError(f"family {self.family!r} needs a color count")
        if self.pattern is not None:
            core.check_permutation(self.pattern)
        if self.multiplicity is not None:
            if self.k is None or len(self.multiplicity) != self.k:
                raise ValueError("multiplicity vector must have one entry per color")
            if any(m < 0 for m in self.multiplicity) or sum(self.multiplicity) > self.n:
                raise ValueError("inconsistent multiplicity vector")


# ---------------------------------------------------------------------------
# Pattern containment.
# ---------------------------------------------------------------------------


def _contains_132(seq: Sequence[int]) -> bool:
    # Scan right to left; `third` is the largest letter known to have a
    # larger letter on its right.  Any current letter below it closes 132.
    third: int | None = None
    stack: list[int] = []
    for x in reversed(seq):
        if third is not None and x < third:
            return True
        while stack and stack[-1] < x:
            third = stack.pop()
        stack.append(x)
    return False


def _contains_321(seq: Sequence[int]) -> bool:
    mx: int | None = None
    mid: int | None = None  # largest letter with a larger letter before it
    for x in seq:
        if mid is not None and x < mid:
            return True
        if mx is not None and x < mx and (mid is None or x > mid):
            mid = x
        if mx is None or x > mx:
            mx = x
    return False


def _contains_123(seq: Sequence[int]) -> bool:
    mn: int | None = None
    mid: int | None = None  # smallest letter with a smaller letter before it
    for x in seq:
        if mid is not None and x > mid:
            return True
        if mn is not None and x > mn and (mid is None or x < mid):
            mid = x
        if mn is None or x < mn:
            mn = x
    return False


def _contains_generic(word: Sequence[int], pattern: Sequence[int]) -> bool:
    w, p = tuple(word), tuple(pattern)
    k, n = len(p), len(w)

    def extend(start: int, chosen: tuple[int, ...]) -> bool:
        j = len(chosen)
        if j == k:
            return True
        for i in range(start, n - (k - j) + 1):
            x = w[i]
            if all(
                (p[t] < p[j]) == (chosen[t] < x) and (p[t] > p[j]) == (chosen[t] > x)
                for t in range(j)
            ):
                if extend(i + 1, chosen + (x,)):
                    return True
        return False

    return extend(0, ())


def contains_pattern(word: Sequence[int], pattern: Sequence[int]) -> bool:
    """True when some subsequence of the word reduces to the pattern.

    >>> contains_pattern((4, 3, -1, -3, 1, -3, 2), (3, 2, 1))
    True
    >>> contains_pattern((1, 2, 3, 4), (3, 2, 1))
    False
    """
    w = tuple(word)
    p = core.check_permutation(pattern)
    if len(p) == 0:
        return True
    if len(p) > len(w):
        return False
    if len(p) == 1:
        return bool(w)
    if len(p) == 2:
        asc = p == (1, 2)
        return any(
            (w[i] < w[j]) if asc else (w[i] > w[j])
            for i in range(len(w))
            for j in range(i + 1, len(w))
        )
    if len(p) == 3:
        if p == (3, 2, 1):
            return _contains_321(w)
        if p == (1, 2, 3):
            return _contains_123(w)
        if p == (1, 3, 2):
            return _contains_132(w)
        if p == (2, 3, 1):
            return _contains_132(w[::-1])
        if p == (3, 1, 2):
            return _contains_132(tuple(-x for x in w))
        if p == (2, 1, 3):
            return _contains_132(tuple(-x for x in reversed(w)))
    return _contains_generic(w, p)


def avoids_pattern(word: Sequence[int], pattern: Sequence[int]) -> bool:
    return not contains_pattern(word, pattern)


# ---------------------------------------------------------------------------
# Enumeration.
# ---------------------------------------------------------------------------


def _permutation_words(n: int) -> Iterator[tuple[int, ...]]:
    return iter(permutations(range(1, n + 1)))


def _derangement_words(n: int) -> Iterator[tuple[int, ...]]:
    for p in permutations(range(1, n + 1)):
        if all(v != i for i, v in enumerate(p, start=1)):
            yield p


def _arrangements(
    n: int, k: int, multiplicity: tuple[int, ...] | None
) -> Iterator[ColoredArrangement]:
    for p in permutations(range(1, n + 1)):
        fixed = core.fixed_points(p)
        if k == 0 and fixed:
            continue
        for colors in product(range(1, k + 1), repeat=len(fixed)):
            arr = ColoredArrangement.from_map(p, k, dict(zip(fixed, colors)))
            if multiplicity is not None:
                counts = [0] * k
                for c in colors:
                    counts[c - 1] += 1
                if tuple(counts) != multiplicity:
                    continue
            yield arr


def _form_words(n: int, negatives: Sequence[int], derangement: bool) -> Iterator[tuple[int, ...]]:
    """Words in lexicographic order whose positive letters form a
    permutation word (a derangement word when requested) and whose
    negative letters come from ``negatives``."""
    neg = sorted(negatives)
    word: list[int] = []
    used: list[bool] = [False] * (n + 1)

    def feasible(n_used: int, max_used: int, remaining: int) -> bool:
        return max_used - n_used <= remaining

    def walk(pos: int, n_used: int, max_used: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            if max_used == n_used:
                yield tuple(word)
            return
        remaining = n - pos - 1
        for v in neg:
            word.append(v)
            yield from walk(pos + 1, n_used, max_used)
            word.pop()
        limit = min(n, n_used + remaining + 1)
        for v in range(1, limit + 1):
            if used[v]:
                continue
            if derangement and v == n_used + 1:
                continue
            new_max = max(max_used, v)
            if not feasible(n_used + 1, new_max, remaining):
                continue
            used[v] = True
            word.append(v)
            yield from walk(pos + 1, n_used + 1, new_max)
            word.pop()
            used[v] = False

    return walk(0, 0, 0)


def _perm_form_words(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return _form_words(n, range(-(k - 1), 0), derangement=False)


def _der_form_words(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return _form_words(n, range(-k, 0), derangement=True)


def _dyck_paths(n: int) -> Iterator[tuple[int, ...]]:
    heights: list[int] = []

    def walk(i: int) -> Iterator[tuple[int, ...]]:
        if i > n:
            yield tuple(heights)
            return
        lo = heights[-1] if heights else 0
        for h in range(lo, i):
            heights.append(h)
            yield from walk(i + 1)
            heights.pop()

    return walk(1)


def _raw_stream(spec: ClassSpec) -> Iterator:
    if spec.family == "perms":
        return _permutation_words(spec.n)
    if spec.family == "derangements":
        return _derangement_words(spec.n)
    if spec.family == "arrangements":
        return _arrangements(spec.n, spec.k or 0, spec.multiplicity)
    if spec.family == "permForms":
        return _perm_form_words(spec.n, spec.k or 0)
    if spec.family == "derForms":
        return _der_form_words(spec.n, spec.k or 0)
    if spec.family == "dyck":
        return _dyck_paths(spec.n)
    raise AssertionError(spec.family)


def enumerate_class(spec: ClassSpec, max_objects: int | None = None) -> Iterator:
    """Deterministic lexicographic stream of the class, pattern applied.

    Raises :class:`ResourceLimitError` after yielding ``max_objects``
    objects (the configured cap by default); never truncates silently.
    """
    cap = resource_cap() if max_objects is None else max_objects
    count = 0
    pattern = spec.pattern
    for obj in _raw_stream(spec):
        if pattern is not None:
            word = core.permutation_form(obj) if isinstance(obj, ColoredArrangement) else obj
            if spec.family == "dyck":
                raise ValueError("pattern restriction does not apply to dyck paths")
            if contains_pattern(word, pattern):
                continue
        count += 1
        if count > cap:
            raise ResourceLimitError(f"class stream exceeded cap of {cap} objects")
        yield obj


def class_size(spec: ClassSpec, max_objects: int | None = None) -> int:
    return sum(1 for _ in enumerate_class(spec, max_objects))


def count_avoiders(spec: ClassSpec, max_objects: int | None = None) -> int:
    """Exact number of pattern avoiders in the class.

    >>> count_avoiders(ClassSpec("derForms", 5, k=1, pattern=(3, 2, 1)))
    48
    """
    if spec.pattern is None:
        raise ValueError("count_avoiders needs a pattern")
    return class_size(spec, max_objects)


# ---------------------------------------------------------------------------
# Statistic evaluation over classes.
# ---------------------------------------------------------------------------

_DYCK_STATS  = {"hill": 0, "seg": 1, "lseg": 2}


def _evaluator(family: str, names: tuple[str, ...]) -> Callable:
    if family == "dyck":
        idx = [_DYCK_STATS[name] for name in names]

        def eval_dyck(obj):
            values = dyck_stats(obj)
            return tuple(values[i] for i in idx)

        return eval_dyck

    def eval_obj(obj):
        return tuple(stats.statistic(name, obj) for name in names)

    return eval_obj


def class_distribution(
    spec: ClassSpec, stat_names: tuple[str, ...], max_objects: int | None = None
) -> StatDistribution:
    """Exact joint distribution of statistics over the (restricted) class."""
    evaluate = _evaluator(spec.family, stat_names)
    table: dict[tuple[int, ...], int] = defaultdict(int)
    for obj in enumerate_class(spec, max_objects):
        table[evaluate(obj)] += 1
    descriptor = f"{spec.family}(n={spec.n}"
    if spec.k is not None:
        descriptor += f", k={spec.k}"
    if spec.pattern is not None:
        descriptor += f", avoiding {''.join(map(str, spec.pattern))}"
    descriptor += ")"
    return StatDistribution(descriptor, tuple(stat_names), dict(table))


def avoider_distribution(
    spec: ClassSpec, stat_names: Iterable[str], max_objects: int | None = None
) -> StatDistribution:
    if spec.pattern is None:
        raise ValueError("avoider_distribution needs a pattern")
    return class_distribution(spec, tuple(stat_names), max_objects)


# ---------------------------------------------------------------------------
# Fast counting of pattern-avoiding derangement-form words with one color.
# ---------------------------------------------------------------------------


def _safe_slot_count(perm: Sequence[int], pattern: tuple[int, ...]) -> int:
    """Number of slots of a derangement where -1 letters may sit without
    creating the pattern, assuming the derangement itself avoids it.

    The -1 letters are global minima, so they can only play the role of
    the smallest pattern letter; what remains of the pattern is an
    ascending or descending pair that must sit before, around, or after
    the -1.  Safety of a slot therefore depends only on the positive
    part.
    """
    p = tuple(perm)
    m = len(p)
    if m == 0:
        return 1
    if pattern == (3, 2, 1):
        # no inversion strictly before the -1
        return stats.ldes(p) + 1
    if pattern == (1, 3, 2):
        # no inversion strictly after the -1
        last = 0
        for i in range(1, m):
            if p[i - 1] > p[i]:
                last = i
        return m - last + 1
    if pattern == (2, 3, 1):
        # no ascending pair strictly before: prefix strictly decreasing
        length = 1
        while length < m and p[length - 1] > p[length]:
            length += 1
        return length + 1
    if pattern == (1, 2, 3):
        # no ascending pair strictly after: suffix strictly decreasing
        start = m
        while start >= 2 and p[start - 2] > p[start - 1]:
            start -= 1
        return m - start + 2
    if pattern == (2, 1, 3):
        # no ascending pair straddling the slot
        safe = 2
        prefix_min = p[0]
        suffix_max = [0] * (m + 1)
        for i in range(m - 1, -1, -1):
            suffix_max[i] = max(p[i], suffix_max[i + 1])
        for i in range(1, m):
            prefix_min = min(prefix_min, p[i - 1])
            if prefix_min > suffix_max[i]:
                safe += 1
        return safe
    if pattern == (3, 1, 2):
        # no descending pair straddling the slot
        safe = 2
        prefix_max = p[0]
        suffix_min = [m + 1] * (m + 1)
        for i in range(m - 1, -1, -1):
            suffix_min[i] = min(p[i], suffix_min[i + 1])
        for i in range(1, m):
            prefix_max = max(prefix_max, p[i - 1])
            if prefix_max < suffix_min[i]:
                safe += 1
        return safe
    raise ValueError(f"no safe-slot rule for pattern {pattern}")


_SCANNERS: dict[tuple[int, ...], Callable[[Sequence[int]], bool]] = {
    (3, 2, 1): _contains_321,
    (1, 2, 3): _contains_123,
    (1, 3, 2): _contains_132,
    (2, 3, 1): lambda w: _contains_132(w[::-1]),
    (3, 1, 2): lambda w: _contains_132(tuple(-x for x in w)),
    (2, 1, 3): lambda w: _contains_132(tuple(-x for x in reversed(w))),
}

_sweep_cache: dict[int, dict] = {}


def _der1_sweep(n_max: int) -> dict:
    """tables[pattern][m][s] = number of pattern-avoiding derangements of
    [m] with s safe slots, for all m <= n_max, in one sweep."""
    if n_max in _sweep_cache:
        return _sweep_cache[n_max]
    tables = {
        pat: [defaultdict(int) for _ in range(n_max + 1)] for pat in PATTERNS3
    }
    for pat in PATTERNS3:
        tables[pat][0][1] = 1
    scanners = [(pat, _SCANNERS[pat]) for pat in PATTERNS3]
    for m in range(2, n_max + 1):
        rng = range(1, m + 1)
        for p in permutations(rng):
            if any(v == i for i, v in zip(rng, p)):
                continue
            for pat, scan in scanners:
                if not scan(p):
                    tables[pat][m][_safe_slot_count(p, pat)] += 1
    _sweep_cache[n_max] = tables
    return tables


def der1_pattern_counts(pattern: Sequence[int], n_max: int) -> list[int]:
    """Counts of pattern-avoiding derangement-form words with one color,
    lengths 1..n_max, via the safe-slot decomposition.

    Placing j extra -1 letters into s safe slots contributes
    comb(j + s - 1, s - 1) words, so each avoiding derangement of size m
    with s safe slots accounts for comb(n - m + s - 1, s - 1) words of
    length n.
    """
    pat = tuple(pattern)
    if pat not in PATTERNS3:
        raise ValueError(f"unsupported pattern {pat}")
    tables = _der1_sweep(n_max)[pat]
    out = []
    for n in range(1, n_max + 1):
        total = 0
        for m in range(0, n + 1):
            for s, count in tables[m].items():
                total += count * comb(n - m + s - 1, s - 1)
        out.append(total)
    return out


# ---------------------------------------------------------------------------
# The -1 placement characterization for one-color derangement forms.
# ---------------------------------------------------------------------------


def check_observation_der1(word: Sequence[int], pattern: Sequence[int]) -> bool:
    """For a one-color derangement-form word and pattern 321 or 132:
    does direct avoidance agree with (positive part avoids) + (-1 letters
    confined to the safe slots)?  Returns whether the two sides agree.
    """
    pat = tuple(pattern)
    if pat not in ((3, 2, 1), (1, 3, 2)):
        raise ValueError("characterization applies to patterns 321 and 132 only")
    w = tuple(word)
    core.from_derangement_form(w, 1)  # validation
    direct = avoids_pattern(w, pat)
    pos = tuple(v for v in w if v > 0)
    if contains_pattern(pos, pat):
        return direct is False
    sd = core.slot_decompose(w, 1)
    safe = _safe_slot_count(sd.weak_part, pat)
    if pat == (3, 2, 1):
        placement_ok = all(
            s == 0 for s in sd.slot_lengths[safe:]
        )
    else:
        m = len(sd.weak_part)
        placement_ok = all(s == 0 for s in sd.slot_lengths[: m + 1 - safe])
    return direct is placement_ok
