"""Reduced words in free groups and their variation calculus.

A word is a reduced sequence of signed variables.  Variables carry a base
index and an optional second ("split") index; splitting the occurrences of a
variable according to a set partition produces the variations used by the
segment and coset-equation machinery.  Set partitions are canonicalised as
restricted growth strings: the block of the first occurrence is numbered 1,
the next new block 2, and so on, which fixes one representative per
variation.

Positions are 1-based throughout, matching the usual x_1^{e_1}...x_l^{e_l}
notation.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BudgetExceeded

DEFAULT_VARIATION_CAP = 12


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Variable:
    base: int
    split: Optional[int] = None

    def __post_init__(self):
        if self.base < 1:
            raise ValueError(f"variable base must be >= 1, got {self.base}")
        if self.split is not None and self.split < 1:
            raise ValueError(f"split index must be >= 1, got {self.split}")

    def key(self) -> tuple[int, int]:
        return (self.base, 0 if self.split is None else self.split)

    def __str__(self) -> str:
        if self.split is None:
            return f"x{self.base}"
        return f"x{self.base}_{self.split}"


@dataclass(frozen=True)
class Letter:
    var: Variable
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "Letter":
        return Letter(self.var, -self.sign)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; construct via :func:`word` or :func:`parse_word`."""

    letters: tuple[Letter, ...]

    def __post_init__(self):
        for a, b in zip(self.letters, self.letters[1:]):
            if a.var == b.var and a.sign == -b.sign:
                raise ValueError(f"word not reduced at {a}/{b}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(free_reduce(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = EMPTY_WORD
        for _ in range(n):
            out = out * self
        return out

    def variables(self) -> tuple[Variable, ...]:
        """Distinct variables in order of first occurrence."""
        seen: dict[Variable, None] = {}
        for l in self.letters:
            seen.setdefault(l.var, None)
        return tuple(seen)

    def bases(self) -> tuple[int, ...]:
        seen: dict[int, None] = {}
        for l in self.letters:
            seen.setdefault(l.var.base, None)
        return tuple(seen)

    def is_split(self) -> bool:
        return any(l.var.split is not None for l in self.letters)

    def __str__(self) -> str:
        return word_to_str(self)


EMPTY_WORD = Word(())


def free_reduce(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for l in letters:
        if stack and stack[-1].var == l.var and stack[-1].sign == -l.sign:
            stack.pop()
        else:
            stack.append(l)
    return tuple(stack)


def word(spec: Iterable[tuple[int, int]]) -> Word:
    """Build a word from (base, sign) pairs, reducing freely."""
    return Word(free_reduce(tuple(Letter(Variable(b), s) for b, s in spec)))


_ATOM_RE = re.compile(
    r"(?P<name>[A-Za-z][A-Za-z0-9]*)(?:_(?P<split>[0-9]+))?(?:\^(?P<exp>-?[0-9]+))?"
)


def parse_word(text: str) -> Word:
    """Parse the word grammar ``atom (sep atom)*``.

    Atoms are ``name``, ``name^k``, ``name_s`` or ``name_s^k``; separators are
    whitespace or ``*``.  A name of the shape ``x<digits>`` denotes that base
    index directly (the canonical serialised form); any other name is a fresh
    base variable, numbered by first appearance with the smallest unused
    index.  The single token ``1`` denotes the empty word.
    """
    if text.strip() == "1":
        return EMPTY_WORD
    letters: list[Letter] = []
    name_to_base: dict[str, int] = {}
    reserved = set()
    # Pre-scan canonical names so "y x2" does not hand base 2 to y.
    for m in _ATOM_RE.finditer(text):
        name = m.group("name")
        cm = re.fullmatch(r"x([1-9][0-9]*)", name)
        if cm:
            reserved.add(int(cm.group(1)))
    next_fresh = 1
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace() or ch == "*":
            pos += 1
            continue
        m = _ATOM_RE.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character {ch!r}", pos)
        name = m.group("name")
        cm = re.fullmatch(r"x([1-9][0-9]*)", name)
        if cm:
            base = int(cm.group(1))
        elif name in name_to_base:
            base = name_to_base[name]
        else:
            while next_fresh in reserved:
                next_fresh += 1
            base = next_fresh
            reserved.add(base)
            name_to_base[name] = base
        split = int(m.group("split")) if m.group("split") else None
        exp = int(m.group("exp")) if m.group("exp") else 1
        if exp == 0:
            raise WordSyntaxError("zero exponent", pos)
        var = Variable(base, split)
        sign = 1 if exp > 0 else -1
        letters.extend(Letter(var, sign) for _ in range(abs(exp)))
        pos = m.end()
    return Word(free_reduce(tuple(letters)))


def word_to_str(w: Word) -> str:
    """Canonical serialised form: power-compressed runs of equal letters."""
    if not w.letters:
        return "1"
    parts: list[str] = []
    i = 0
    ls = w.letters
    while i < len(ls):
        j = i
        while j < len(ls) and ls[j] == ls[i]:
            j += 1
        e = (j - i) * ls[i].sign
        parts.append(str(ls[i].var) if e == 1 else f"{ls[i].var}^{e}")
        i = j
    return " ".join(parts)


def multiplicity(w: Word, v: Variable) -> int:
    """Number of occurrences of v in w, ignoring signs."""
    return sum(1 for l in w.letters if l.var == v)


def is_repetition_free(w: Word) -> bool:
    """True iff every variable of w occurs exactly once."""
    vs = [l.var for l in w.letters]
    return len(vs) == len(set(vs))


def _check_position(w: Word, i: int) -> None:
    if not 1 <= i <= len(w):
        raise IndexError(f"position {i} out of range for word of length {len(w)}")


def initial_segment(w: Word, i: int) -> Word:
    """The prefix x_1^{e_1}..x_{i-1} when e_i = +1, and ..x_i^{e_i} when e_i = -1."""
    _check_position(w, i)
    end = i - 1 if w.letters[i - 1].sign == 1 else i
    return Word(w.letters[:end])


def delta_segment(w: Word, i: int, j: int) -> Word:
    """Free reduction of initial_segment(w,i)^-1 * initial_segment(w,j)."""
    _check_position(w, i)
    _check_position(w, j)
    if i >= j:
        raise ValueError(f"need i < j, got i={i}, j={j}")
    return initial_segment(w, i).inverse() * initial_segment(w, j)


def is_segment_of(seg: Word, w: Word) -> bool:
    """Contiguous-subsequence test on the letter sequences."""
    if not seg.letters:
        return True
    m, n = len(seg), len(w)
    return any(w.letters[k : k + m] == seg.letters for k in range(n - m + 1))


def cyclic_reduce(w: Word) -> Word:
    ls = list(w.letters)
    while len(ls) >= 2 and ls[0].var == ls[-1].var and ls[0].sign == -ls[-1].sign:
        ls = ls[1:-1]
    return Word(tuple(ls))


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of {1..m} as restricted growth strings, lexicographically.

    Entry k is the (1-based) block number of element k; block numbers appear
    in order of first use.
    """
    if m == 0:
        yield ()
        return
    a = [1] * m

    def rec(k: int, mx: int) -> Iterator[tuple[int, ...]]:
        if k == m:
            yield tuple(a)
            return
        for b in range(1, mx + 2):
            a[k] = b
            yield from rec(k + 1, max(mx, b))

    a[0] = 1
    yield from rec(1, 1)


def bell_number(m: int) -> int:
    """Bell number via the Bell triangle (number of set partitions of [m])."""
    if m == 0:
        return 1
    row = [1]
    for _ in range(m - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[-1]


def count_variations(w: Word) -> int:
    """|enumerate_variations(w)| without enumerating."""
    out = 1
    for b in w.bases():
        m = sum(1 for l in w.letters if l.var.base == b)
        out *= bell_number(m)
    return out


def count_split_variations(w: Word, i: int, j: int) -> int:
    """|split_variations(w, i, j)| without enumerating.

    Partitions of the shared variable's occurrences separating i from j
    number Bell(m) - Bell(m-1); the other variables contribute their full
    Bell factors.
    """
    _check_position(w, i)
    _check_position(w, j)
    if w.letters[i - 1].var != w.letters[j - 1].var:
        raise ValueError(f"positions {i} and {j} carry different variables")
    shared = w.letters[i - 1].var.base
    out = 1
    for b in w.bases():
        m = sum(1 for l in w.letters if l.var.base == b)
        if b == shared:
            out *= bell_number(m) - bell_number(m - 1)
        else:
            out *= bell_number(m)
    return out


def _variation_from_assignment(w: Word, splits: dict[int, int]) -> Word:
    letters = tuple(
        Letter(Variable(l.var.base, splits[pos]), l.sign)
        for pos, l in enumerate(w.letters)
    )
    return Word(letters)


def enumerate_variations(w: Word, cap: int = DEFAULT_VARIATION_CAP) -> list[Word]:
    """All canonical variations of w, one per family of per-variable set partitions.

    Every letter of a variation carries a split index (>= 1); the identity
    partition yields the all-1 decoration of w.  Erasing split indices maps
    each variation back to w.
    """
    if len(w) > cap:
        raise BudgetExceeded(f"word length {len(w)} exceeds variation cap {cap}")
    if w.is_split():
        raise ValueError("variations are defined for undecorated words only")
    positions: dict[int, list[int]] = {}
    for pos, l in enumerate(w.letters):
        positions.setdefault(l.var.base, []).append(pos)
    bases = sorted(positions)
    per_base = [list(restricted_growth_strings(len(positions[b]))) for b in bases]
    out: list[Word] = []
    for combo in itertools.product(*per_base):
        splits: dict[int, int] = {}
        for b, rgs in zip(bases, combo):
            for pos, block in zip(positions[b], rgs):
                splits[pos] = block
        out.append(_variation_from_assignment(w, splits))
    return out


def erase_splits(w: Word) -> Word:
    return Word(tuple(Letter(Variable(l.var.base), l.sign) for l in w.letters))


def proper_variations(w: Word, cap: int = DEFAULT_VARIATION_CAP) -> list[Word]:
    """Variations with strictly more distinct variables than w has."""
    d = len(w.bases())
    return [v for v in enumerate_variations(w, cap) if len(v.variables()) > d]


def split_variations(
    w: Word, i: int, j: int, cap: int = DEFAULT_VARIATION_CAP
) -> list[Word]:
    """All canonical variations in which positions i and j get different split indices."""
    _check_position(w, i)
    _check_position(w, j)
    if i >= j:
        raise ValueError(f"need i < j, got i={i}, j={j}")
    if w.letters[i - 1].var != w.letters[j - 1].var:
        raise ValueError(f"positions {i} and {j} carry different variables")
    return [
        v
        for v in enumerate_variations(w, cap)
        if v.letters[i - 1].var != v.letters[j - 1].var
    ]
