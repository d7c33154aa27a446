"""Deterministic Schreier-Sims stabilizer chains.

Base points are chosen as the smallest moved points; orbits are explored in
increasing point order, so two runs over the same generators produce the
same chain, transversals and element iteration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .perms import Perm, identity_perm, pinv, pmul


@dataclass
class _Level:
    base_point: int
    gens: list[Perm] = field(default_factory=list)
    transversal: dict[int, Perm] = field(default_factory=dict)

    def orbit_points(self) -> list[int]:
        return sorted(self.transversal)

    def rebuild_orbit(self) -> None:
        b = self.base_point
        self.transversal = {b: None}  # None encodes the identity coset rep
        frontier = [b]
        while frontier:
            nxt = []
            for x in sorted(frontier):
                for g in self.gens:
                    y = g[x]
                    if y not in self.transversal:
                        u = self.transversal[x]
                        self.transversal[y] = g if u is None else pmul(g, u)
                        nxt.append(y)
            frontier = nxt

    def rep(self, point: int, n: int) -> Perm:
        u = self.transversal[point]
        return identity_perm(n) if u is None else u


class StabilizerChain:
    """BSGS via the deterministic (non-randomised) Schreier-Sims algorithm."""

    def __init__(self, degree: int, gens: Sequence[Perm]):
        self.degree = degree
        self.gens = [g for g in gens if g != identity_perm(degree)]
        self.levels: list[_Level] = []
        for g in self.gens:
            self._extend(0, g)
        self._order = self._compute_order()

    # -- construction ------------------------------------------------------

    def _moved_point(self, g: Perm) -> Optional[int]:
        for i, j in enumerate(g):
            if i != j:
                return i
        return None

    def _extend(self, level: int, g: Perm) -> None:
        g = self._sift_from(level, g)
        if g is None:
            return
        mp = self._moved_point(g)
        if mp is None:
            return
        if level == len(self.levels):
            self.levels.append(_Level(base_point=mp))
        lvl = self.levels[level]
        lvl.gens.append(g)
        lvl.rebuild_orbit()
        # One pass over all Schreier generators of the (now fixed) orbit; any
        # residue is pushed a level down, which recursively re-completes the
        # deeper chain before we move on.
        for x in lvl.orbit_points():
            ux = lvl.rep(x, self.degree)
            for h in list(lvl.gens):
                y = h[x]
                uy = lvl.rep(y, self.degree)
                schreier = pmul(pinv(uy), pmul(h, ux))
                residue = self._sift_from(level + 1, schreier)
                if residue is not None and self._moved_point(residue) is not None:
                    self._extend(level + 1, residue)

    def _sift_from(self, level: int, g: Perm) -> Optional[Perm]:
        """Sift g through levels >= level; return the residue, or None if trivial."""
        for lvl in self.levels[level:]:
            b = lvl.base_point
            y = g[b]
            if y == b:
                continue
            if y not in lvl.transversal:
                return g
            g = pmul(pinv(lvl.rep(y, self.degree)), g)
        return g if self._moved_point(g) is not None else None

    def _compute_order(self) -> int:
        order = 1
        for lvl in self.levels:
            order *= len(lvl.transversal)
        return order

    # -- queries -----------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def base(self) -> list[int]:
        return [lvl.base_point for lvl in self.levels]

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            return False
        for lvl in self.levels:
            y = g[lvl.base_point]
            if y not in lvl.transversal:
                return False
            g = pmul(pinv(lvl.rep(y, self.degree)), g)
        return g == identity_perm(self.degree)

    def iter_elements(self) -> Iterator[Perm]:
        """All group elements, in deterministic transversal-product order."""
        n = self.degree
        if not self.levels:
            yield identity_perm(n)
            return

        def rec(level: int) -> Iterator[Perm]:
            if level == len(self.levels):
                yield identity_perm(n)
                return
            lvl = self.levels[level]
            for pt in lvl.orbit_points():
                u = lvl.rep(pt, n)
                for rest in rec(level + 1):
                    yield pmul(u, rest)

        yield from rec(0)

    def random_element(self, rng) -> Perm:
        """Exactly uniform: one uniform transversal choice per level."""
        g = identity_perm(self.degree)
        for lvl in self.levels:
            pts = lvl.orbit_points()
            pt = pts[rng.randrange(len(pts))]
            g = pmul(g, lvl.rep(pt, self.degree))
        return g
