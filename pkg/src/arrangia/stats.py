"""Statistics on permutations, signed words, and colored arrangements.

Statistics on an arrangement route through its word encodings: ``des``
reads the permutation form, ``dez`` reads the derangement form.  A plain
permutation is treated as the arrangement whose fixed points all carry
the single color, so ``dez`` of a permutation counts the descents of the
word obtained by negating its fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import core
from .algebra import MultiPoly
from .core import ColoredArrangement


def _as_word(obj) -> tuple[int, ...]:
    if isinstance(obj, ColoredArrangement):
        return core.permutation_form(obj)
    return tuple(obj)


def descent_set(obj) -> tuple[int, ...]:
    """Positions i with w_i > w_{i+1}; permutation form for arrangements.

    >>> descent_set((8, 1, 3, -1, 4, -2, 2, -2, 5, 7, 10, -1, 9, 11, 6))
    (1, 3, 5, 7, 11, 14)
    """
    w = _as_word(obj)
    return tuple(i for i in range(1, len(w)) if w[i - 1] > w[i])


def des(obj) -> int:
    """Number of descents.

    >>> des((4, 1, -1, 5, 2))
    3
    """
    return len(descent_set(obj))


def _dez_word(obj) -> tuple[int, ...]:
    if isinstance(obj, ColoredArrangement):
        return core.derangement_form(obj)
    perm = core.check_permutation(tuple(obj))
    arr = ColoredArrangement.from_map(perm, 1, {i: 1 for i in core.fixed_points(perm)})
    return core.derangement_form(arr)


def dez_set(obj) -> tuple[int, ...]:
    """Descent set of the derangement form."""
    return descent_set(_dez_word(obj))


def dez(obj) -> int:
    """Number of descents of the derangement form.

    >>> dez((4, 1, 3, 5, 2))
    3
    """
    return len(dez_set(obj))


def xdes(perm: Sequence[int]) -> int:
    """Number of crossing descents: descents i with p_i >= i+1 >= p_{i+1}.

    >>> xdes((2, 1, 4, 3))
    2
    """
    p = tuple(perm)
    return sum(
        1
        for i in range(1, len(p))
        if p[i - 1] > p[i] and p[i - 1] >= i + 1 and p[i] <= i + 1
    )


def fix(obj) -> int:
    """Number of fixed points (of the base permutation for arrangements)."""
    if isinstance(obj, ColoredArrangement):
        return len(obj.colors)
    return len(core.fixed_points(tuple(obj)))


def fix_stats(arr: ColoredArrangement) -> tuple[int, tuple[int, ...]]:
    """Total and per-color fixed point counts (fix, (fix_1, ..., fix_k)).

    >>> a = ColoredArrangement.from_map((7, 5, 3, 4, 1, 6, 2), 3, {3: 1, 4: 3, 6: 3})
    >>> fix_stats(a)
    (3, (1, 0, 2))
    """
    counts = [0] * arr.k
    for _, c in arr.colors:
        counts[c - 1] += 1
    return len(arr.colors), tuple(counts)


def ldes(perm: Sequence[int]) -> int:
    """Position of the leftmost descent; n for the identity, 0 if empty.

    >>> ldes((1, 2, 4, 8, 3, 5, 6, 9, 7)), ldes((1, 2, 3)), ldes(())
    (4, 3, 0)
    """
    p = tuple(perm)
    for i in range(1, len(p)):
        if p[i - 1] > p[i]:
            return i
    return len(p)


def rdes(perm: Sequence[int]) -> int:
    """n minus the position of the rightmost descent (0 if none)."""
    p = tuple(perm)
    last = 0
    for i in range(1, len(p)):
        if p[i - 1] > p[i]:
            last = i
    return len(p) - last


def exc(perm: Sequence[int]) -> int:
    return sum(1 for i, v in enumerate(perm, start=1) if v > i)


def aexc(perm: Sequence[int]) -> int:
    return sum(1 for i, v in enumerate(perm, start=1) if v < i)


def lmax(perm: Sequence[int]) -> int:
    """Number of left-to-right maxima."""
    count = 0
    best: int | None = None
    for v in perm:
        if best is None or v > best:
            count += 1
            best = v
    return count


def rmin(perm: Sequence[int]) -> int:
    """Number of right-to-left minima."""
    count = 0
    best: int | None = None
    for v in reversed(tuple(perm)):
        if best is None or v < best:
            count += 1
            best = v
    return count


def plat(word: Sequence[int]) -> int:
    """Number of plateaux: positions i with w_i = w_{i+1}.

    >>> plat((1, -1, -1, 2))
    1
    """
    w = tuple(word)
    return sum(1 for i in range(1, len(w)) if w[i - 1] == w[i])


def peaks(perm: Sequence[int]) -> int:
    """Number of interior peaks: 2 <= i <= n-1 with p_{i-1} < p_i > p_{i+1}."""
    p = tuple(perm)
    return sum(1 for i in range(1, len(p) - 1) if p[i - 1] < p[i] > p[i + 1])


STATISTICS: dict[str, Callable] = {
    "des": des,
    "dez": dez,
    "xdes": xdes,
    "fix": fix,
    "ldes": ldes,
    "rdes": rdes,
    "exc": exc,
    "aexc": aexc,
    "lmax": lmax,
    "rmin": rmin,
    "plat": plat,
    "peaks": peaks,
}


def statistic(name: str, obj) -> int:
    """Evaluate a named statistic.

    >>> statistic("ldes", (1, 2, 4, 8, 3, 5, 6, 9, 7))
    4
    """
    try:
        fn = STATISTICS[name]
    except KeyError:
        raise ValueError(f"unknown statistic {name!r}") from None
    return fn(obj)


_POLY_LETTERS = ("x", "y", "z", "v", "w")


@dataclass
class StatDistribution:
    """Exact joint distribution table: statistic value tuple -> count."""

    descriptor: str
    stat_names: tuple[str, ...]
    table: dict[tuple[int, ...], int]

    def total(self) -> int:
        return sum(self.table.values())

    def as_poly(self) -> MultiPoly:
        out = MultiPoly()
        letters = _POLY_LETTERS[: len(self.stat_names)]
        for values, count in self.table.items():
            mono = MultiPoly.from_scalar(count)
            for letter, v in zip(letters, values):
                if v:
                    mono = mono * MultiPoly.var(letter, exp=v)
            out = out + mono
        return out

    def poly_string(self) -> str:
        return str(self.as_poly())

    def csv_lines(self) -> list[str]:
        lines = [",".join(self.stat_names + ("count",))]
        for values in sorted(self.table):
            lines.append(",".join(str(v) for v in values) + f",{self.table[values]}")
        return lines

    def marginal(self) -> dict[int, int]:
        """Single-statistic view; only valid for one statistic."""
        if len(self.stat_names) != 1:
            raise ValueError("marginal needs exactly one statistic")
        return {values[0]: count for values, count in self.table.items()}


def distribution(spec, stat_names: Iterable[str]) -> StatDistribution:
    """Joint distribution of statistics over an enumerable class.

    Thin wrapper over the class enumeration machinery.
    """
    from . import patterns  # local import: patterns builds on stats

    return patterns.class_distribution(spec, tuple(stat_names))
