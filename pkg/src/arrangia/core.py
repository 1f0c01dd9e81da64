"""Permutations with colored fixed points and their signed-word encodings.

Conventions used throughout:

- A permutation of [n] = {1, ..., n} is a tuple in one-line notation,
  e.g. (7, 5, 3, 4, 1, 6, 2) maps 1 -> 7, 2 -> 5, and so on.
- A signed word is a tuple of nonzero integers.  Negative letters encode
  colored fixed points: the letter -c stands for a fixed point of color c.
- Negative letters compare by the usual integer order (-2 < -1 < 1).

A *colored arrangement* is a permutation together with a color in 1..k
assigned to each of its fixed points.  It has two lossless signed-word
encodings:

- the *derangement form*: every fixed point i is replaced by the letter
  -color(i), then the remaining positive letters are renumbered 1..m by
  rank ("positive reduction");
- the *permutation form*: only fixed points of color c < k become -c;
  fixed points of the top color k stay positive.

The *derangement part* of an arrangement is the positive subword of its
derangement form; the *weak derangement part* keeps all letters of the
derangement form except -k.  A derangement form splits into the weak part
interleaved with (possibly empty) runs of -k letters called *slots*; the
pair (slot length vector, weak part) determines the arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

_INF = float("inf")  # sentinel bounding a word on both sides in slot typing

SLOT_TYPES = ("I", "II", "III", "IV")


def is_permutation(values: Sequence[int]) -> bool:
    """True if ``values`` is a permutation of 1..n in one-line notation.

    >>> is_permutation((2, 3, 1)), is_permutation((1, 1, 2)), is_permutation(())
    (True, False, True)
    """
    n = len(values)
    seen = [False] * (n + 1)
    for v in values:
        if not isinstance(v, int) or not 1 <= v <= n or seen[v]:
            return False
        seen[v] = True
    return True


def check_permutation(values: Iterable[int]) -> tuple[int, ...]:
    perm = tuple(values)
    if not is_permutation(perm):
        raise ValueError(f"not a permutation of 1..{len(perm)}: {perm!r}")
    return perm


def fixed_points(perm: Sequence[int]) -> tuple[int, ...]:
    """Positions i (1-based) with perm(i) = i.

    >>> fixed_points((7, 5, 3, 4, 1, 6, 2))
    (3, 4, 6)
    """
    return tuple(i for i, v in enumerate(perm, start=1) if v == i)


def is_derangement(perm: Sequence[int]) -> bool:
    return is_permutation(perm) and not fixed_points(perm)


def reduce_word(word: Sequence[int]) -> tuple[int, ...]:
    """Replace every occurrence of the i-th smallest letter by i.

    The result is the unique order-isomorphic word over 1..#distinct;
    the map is idempotent and fixes the empty word.

    >>> reduce_word((5, 5, -1, 2, -1, -2))
    (4, 4, 2, 3, 2, 1)
    """
    rank = {v: i for i, v in enumerate(sorted(set(word)), start=1)}
    return tuple(rank[v] for v in word)


def reduce_positive(word: Sequence[int]) -> tuple[int, ...]:
    """Replace the i-th smallest positive letter by i; negatives stay put.

    >>> reduce_positive((5, 5, -1, 2, -1, -2))
    (2, 2, -1, 1, -1, -2)
    """
    rank = {v: i for i, v in enumerate(sorted({v for v in word if v > 0}), start=1)}
    return tuple(rank[v] if v > 0 else v for v in word)


def parse_word(text: str) -> tuple[int, ...]:
    """Parse a space-separated signed word; both "-1" and "¬1" are accepted.

    >>> parse_word("4 3 ¬1 -3 1 -3 2")
    (4, 3, -1, -3, 1, -3, 2)
    """
    letters = []
    for pos, token in enumerate(text.replace("¬", "-").split(), start=1):
        try:
            v = int(token)
        except ValueError:
            raise ValueError(f"letter {pos}: {token!r} is not an integer") from None
        if v == 0:
            raise ValueError(f"letter {pos}: 0 is not a valid letter")
        letters.append(v)
    return tuple(letters)


def format_word(word: Sequence[int]) -> str:
    """Canonical text encoding: space-separated, negatives with '-'."""
    return " ".join(str(v) for v in word)


@dataclass(frozen=True)
class ColoredArrangement:
    """A permutation whose fixed points each carry a color in 1..k.

    ``colors`` holds (position, color) pairs sorted by position; the
    positions must be exactly the fixed points of ``base``.  Colors are
    stored positively; negativity belongs to the word encodings only.
    For k = 0 the base must be a derangement.
    """

    base: tuple[int, ...]
    k: int
    colors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        check_permutation(self.base)
        if self.k < 0:
            raise ValueError("number of colors must be nonnegative")
        fixed = fixed_points(self.base)
        positions = tuple(p for p, _ in self.colors)
        if positions != fixed:
            raise ValueError(
                f"colored positions {positions} differ from fixed points {fixed}"
            )
        for p, c in self.colors:
            if not 1 <= c <= self.k:
                raise ValueError(f"color {c} at position {p} outside 1..{self.k}")

    @classmethod
    def from_map(
        cls,
        base: Iterable[int],
        k: int,
        colors: Mapping[int, int] | None = None,
    ) -> "ColoredArrangement":
        return cls(tuple(base), k, tuple(sorted((colors or {}).items())))

    @property
    def n(self) -> int:
        return len(self.base)

    def color_map(self) -> dict[int, int]:
        return dict(self.colors)


def permutation_form(arr: ColoredArrangement) -> tuple[int, ...]:
    """Signed-word encoding keeping top-color fixed points positive.

    >>> a = ColoredArrangement.from_map((7, 5, 3, 4, 1, 6, 2), 3, {3: 1, 4: 3, 6: 3})
    >>> permutation_form(a)
    (6, 4, -1, 3, 1, 5, 2)
    """
    cmap = arr.color_map()
    word = []
    for i, v in enumerate(arr.base, start=1):
        c = cmap.get(i)
        word.append(v if c is None or c == arr.k else -c)
    return reduce_positive(word)


def derangement_form(arr: ColoredArrangement) -> tuple[int, ...]:
    """Signed-word encoding negating every fixed point.

    >>> a = ColoredArrangement.from_map((7, 5, 3, 4, 1, 6, 2), 3, {3: 1, 4: 3, 6: 3})
    >>> derangement_form(a)
    (4, 3, -1, -3, 1, -3, 2)
    """
    cmap = arr.color_map()
    word = [(-cmap[i]) if i in cmap else v for i, v in enumerate(arr.base, start=1)]
    return reduce_positive(word)


def _positive_structure(word: Sequence[int]) -> tuple[list[int], list[int]]:
    """Positions (1-based) and letters of the positive subword."""
    positions, letters = [], []
    for i, v in enumerate(word, start=1):
        if v == 0:
            raise ValueError(f"letter {i}: 0 is not a valid letter")
        if v > 0:
            positions.append(i)
            letters.append(v)
    return positions, letters


def base_of_derangement_word(word: Sequence[int]) -> tuple[int, ...]:
    """Base permutation encoded by a derangement-form word (any color count).

    Negative positions become fixed points; the j-th positive letter v
    sends the j-th positive position to the v-th positive position.
    Rejects words whose positive subword is not a derangement word.
    """
    word = tuple(word)
    positions, letters = _positive_structure(word)
    m = len(letters)
    if sorted(letters) != list(range(1, m + 1)):
        raise ValueError(f"positive letters of {word!r} are not a permutation of 1..{m}")
    if any(v == j for j, v in enumerate(letters, start=1)):
        raise ValueError(f"positive subword of {word!r} has a fixed letter")
    base = [0] * len(word)
    for i, v in enumerate(word, start=1):
        if v < 0:
            base[i - 1] = i
    for j, v in enumerate(letters):
        base[positions[j] - 1] = positions[v - 1]
    return tuple(base)


def is_derangement_form(word: Sequence[int], k: int) -> bool:
    """True if ``word`` encodes some arrangement with k colors."""
    try:
        from_derangement_form(word, k)
    except ValueError:
        return False
    return True


def is_permutation_form(word: Sequence[int], k: int) -> bool:
    try:
        from_permutation_form(word, k)
    except ValueError:
        return False
    return True


def from_derangement_form(word: Sequence[int], k: int) -> ColoredArrangement:
    """Inverse of :func:`derangement_form`.

    >>> from_derangement_form((-1, -1), 1).base
    (1, 2)
    """
    word = tuple(word)
    for i, v in enumerate(word, start=1):
        if v < 0 and not -k <= v <= -1:
            raise ValueError(f"letter {i}: {v} outside -{k}..-1")
    base = base_of_derangement_word(word)
    colors = {i: -v for i, v in enumerate(word, start=1) if v < 0}
    return ColoredArrangement.from_map(base, k, colors)


def from_permutation_form(word: Sequence[int], k: int) -> ColoredArrangement:
    """Inverse of :func:`permutation_form`.

    Positive letters that sit at their own rank become fixed points of the
    top color k; negative letters must lie in -(k-1)..-1.
    """
    word = tuple(word)
    for i, v in enumerate(word, start=1):
        if v < 0 and not -(k - 1) <= v <= -1:
            raise ValueError(f"letter {i}: {v} outside -{k - 1}..-1")
    positions, letters = _positive_structure(word)
    m = len(letters)
    if sorted(letters) != list(range(1, m + 1)):
        raise ValueError(f"positive letters of {word!r} are not a permutation of 1..{m}")
    base = [0] * len(word)
    colors: dict[int, int] = {}
    for i, v in enumerate(word, start=1):
        if v < 0:
            base[i - 1] = i
            colors[i] = -v
    for j, v in enumerate(letters, start=1):
        pos = positions[j - 1]
        base[pos - 1] = positions[v - 1]
        if v == j:
            colors[pos] = k
    return ColoredArrangement.from_map(base, k, colors)


def derangement_part(arr: ColoredArrangement) -> tuple[int, ...]:
    """Positive subword of the derangement form (already reduced).

    >>> a = ColoredArrangement.from_map((7, 5, 3, 4, 1, 6, 2), 3, {3: 1, 4: 3, 6: 3})
    >>> derangement_part(a)
    (4, 3, 1, 2)
    """
    return tuple(v for v in derangement_form(arr) if v > 0)


def weak_derangement_part(arr: ColoredArrangement) -> tuple[int, ...]:
    """Derangement form with all top-color letters -k removed.

    >>> a = ColoredArrangement.from_map((7, 5, 3, 4, 1, 6, 2), 3, {3: 1, 4: 3, 6: 3})
    >>> weak_derangement_part(a)
    (4, 3, -1, 1, 2)
    """
    return tuple(v for v in derangement_form(arr) if v != -arr.k)


def excedance_word(obj: Sequence[int]) -> str:
    """E/N word marking positions i with sigma(i) > i.

    Accepts a permutation, or a derangement-form word (the marks are those
    of the base permutation it encodes).

    >>> excedance_word((7, 5, 3, 4, 1, 6, 2))
    'EENNNNN'
    >>> excedance_word((4, 3, -1, 1, 2))
    'EENNN'
    """
    w = tuple(obj)
    if all(v > 0 for v in w):
        perm = check_permutation(w)
    else:
        perm = base_of_derangement_word(w)
    return "".join("E" if v > i else "N" for i, v in enumerate(perm, start=1))


@dataclass(frozen=True)
class SlotDecomposition:
    """Slot length vector plus weak derangement part of a derangement form."""

    slot_lengths: tuple[int, ...]
    weak_part: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("number of colors must be nonnegative")
        if len(self.slot_lengths) != len(self.weak_part) + 1:
            raise ValueError("need exactly one slot more than weak letters")
        if any(s < 0 for s in self.slot_lengths):
            raise ValueError("slot lengths must be nonnegative")
        if self.k > 0 and any(v == -self.k for v in self.weak_part):
            raise ValueError(f"weak part may not contain {-self.k}")

    @property
    def n(self) -> int:
        return sum(self.slot_lengths) + len(self.weak_part)


def slot_decompose(word: Sequence[int], k: int) -> SlotDecomposition:
    """Split a derangement form into runs of -k around the weak part.

    >>> sd = slot_decompose((4, 3, -1, -3, 1, -3, 2), 3)
    >>> sd.slot_lengths, sd.weak_part
    ((0, 0, 0, 1, 1, 0), (4, 3, -1, 1, 2))
    """
    word = tuple(word)
    from_derangement_form(word, k)  # validation only
    weak = tuple(v for v in word if v != -k)
    lengths = [0] * (len(weak) + 1)
    idx = 0
    for v in word:
        if v == -k:
            lengths[idx] += 1
        else:
            idx += 1
    return SlotDecomposition(tuple(lengths), weak, k)


def slot_compose(sd: SlotDecomposition) -> tuple[int, ...]:
    """Rebuild the derangement form from a slot decomposition."""
    word: list[int] = []
    for i, s in enumerate(sd.slot_lengths):
        word.extend([-sd.k] * s)
        if i < len(sd.weak_part):
            word.append(sd.weak_part[i])
    return tuple(word)


def slot_types(weak_part: Sequence[int]) -> tuple[str, ...]:
    """Classify the m+1 slots around a nonempty weak derangement part.

    Both ends are bounded by a sentinel +infinity letter carrying an E
    mark.  Slot i sits between letters w_i and w_{i+1} with marks
    (e_i, e_{i+1}):

    - type I:   w_i > w_{i+1} and (e_i, e_{i+1}) = (E, N)
    - type II:  w_i <= w_{i+1} and (e_i, e_{i+1}) = (N, E)
    - type III: w_i <= w_{i+1} otherwise
    - type IV:  w_i > w_{i+1} otherwise

    >>> slot_types((2, 1))
    ('IV', 'I', 'II')
    """
    weak = tuple(weak_part)
    if not weak:
        raise ValueError("weak derangement part must be nonempty")
    marks = "E" + excedance_word(weak) + "E"
    letters: tuple[float | int, ...] = (_INF, *weak, _INF)
    types = []
    for i in range(len(weak) + 1):
        descent = letters[i] > letters[i + 1]
        pair = (marks[i], marks[i + 1])
        if descent:
            types.append("I" if pair == ("E", "N") else "IV")
        else:
            types.append("II" if pair == ("N", "E") else "III")
    return tuple(types)
