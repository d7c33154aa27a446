"""Permutations as image tuples on 0..n-1.

Composition convention: pmul(p, q) is the function p o q (q applied first),
so that products of wreath-element tops and matrix-group elements written
left to right compose the same way.  I/O uses 1-based disjoint cycles.
"""

from __future__ import annotations

import re
from math import lcm
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def pmul(p: Perm, q: Perm) -> Perm:
    return tuple(p[q[i]] for i in range(len(p)))


def pinv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def ppow(p: Perm, n: int) -> Perm:
    if n < 0:
        return ppow(pinv(p), -n)
    out = identity_perm(len(p))
    base = p
    while n:
        if n & 1:
            out = pmul(out, base)
        base = pmul(base, base)
        n >>= 1
    return out


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its smallest point, sorted."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def perm_order(p: Perm) -> int:
    return lcm(1, *(len(c) for c in cycles(p)))


def support(p: Perm) -> int:
    return sum(1 for i, j in enumerate(p) if i != j)


def fixed_points(p: Perm) -> int:
    return sum(1 for i, j in enumerate(p) if i == j)


def support_set(p: Perm) -> frozenset[int]:
    return frozenset(i for i, j in enumerate(p) if i != j)


def is_even(p: Perm) -> bool:
    return sum(len(c) - 1 for c in cycles(p)) % 2 == 0


def perm_from_cycles(n: int, cyclists: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation on 0..n-1 from 0-based cycles."""
    images = list(range(n))
    for cyc in cyclists:
        for a, b in zip(cyc, cyc[1:]):
            images[a] = b
        if cyc:
            images[cyc[-1]] = cyc[0]
    return tuple(images)


_CYCLE_RE = re.compile(r"\(\s*([0-9]+(?:[\s,]+[0-9]+)*)\s*\)")


def parse_cycles(text: str, n: int) -> Perm:
    """Parse 1-based disjoint cycle notation, e.g. ``(1 2)(3 4 5)``."""
    text = text.strip()
    if text in ("", "()", "id"):
        return identity_perm(n)
    pos = 0
    cycs = []
    for m in _CYCLE_RE.finditer(text):
        if text[pos : m.start()].strip():
            raise ValueError(f"bad cycle notation near {text[pos:m.start()]!r}")
        pts = [int(t) - 1 for t in re.split(r"[\s,]+", m.group(1))]
        if any(pt < 0 or pt >= n for pt in pts):
            raise ValueError(f"point out of range 1..{n} in {m.group(0)}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle {m.group(0)}")
        cycs.append(pts)
        pos = m.end()
    if text[pos:].strip():
        raise ValueError(f"trailing garbage in cycle notation: {text[pos:]!r}")
    flat = [pt for c in cycs for pt in c]
    if len(set(flat)) != len(flat):
        raise ValueError("cycles are not disjoint")
    return perm_from_cycles(n, cycs)


def format_cycles(p: Perm) -> str:
    cycs = cycles(p)
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycs)


def orbits(n: int, gens: Sequence[Perm]) -> list[tuple[int, ...]]:
    """Orbits on points, each sorted, listed by smallest element."""
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        queue = [start]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
                    queue.append(y)
        out.append(tuple(sorted(orb)))
    return out


def pair_orbit_count(n: int, gens: Sequence[Perm], max_degree: int = 2048) -> int:
    """Rank: number of orbits on ordered pairs, diagonal included."""
    if n > max_degree:
        raise ValueError(f"degree {n} exceeds pair-orbit cap {max_degree}")
    seen = bytearray(n * n)
    count = 0
    for start in range(n * n):
        if seen[start]:
            continue
        count += 1
        seen[start] = 1
        queue = [start]
        while queue:
            xy = queue.pop()
            x, y = divmod(xy, n)
            for g in gens:
                img = g[x] * n + g[y]
                if not seen[img]:
                    seen[img] = 1
                    queue.append(img)
    return count
