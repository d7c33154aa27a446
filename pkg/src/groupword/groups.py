"""Concrete finite groups: element kinds, two engines, and the constructions.

Element kinds are plain hashable tuples; an "ops" strategy object supplies
identity/mul/inv/order/key for each kind, so group-level algorithms stay
agnostic of the representation:

* permutations           image tuples (see perms.py)
* 2x2 matrices           (a, b, c, d) over a FieldSpec, used for SL2
* projective semilinear  (a, b, c, d, j): canonically scaled matrix part
                         (first nonzero entry in row-major order is 1) and a
                         Frobenius power j mod f; PGL2/PSL2 are the j = 0 slice
* pairs                  (x, y) for direct products of unlike kinds
* wreath elements        (components, top) for Aut(S) wr Sym(n)

Engines: EnumGroup holds the full element table; PermGroupBSGS holds a
stabilizer chain.  Both are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .bsgs import StabilizerChain
from .errors import BudgetExceeded, Unsupported
from .ffield import FieldSpec, make_field
from .perms import (
    Perm,
    format_cycles,
    identity_perm,
    is_even,
    perm_from_cycles,
    perm_order,
    pinv,
    pmul,
)

DEFAULT_ENUM_CAP = 2 * 10**6
DEFAULT_BSGS_DEGREE_CAP = 10**4


# ---------------------------------------------------------------------------
# element operation strategies
# ---------------------------------------------------------------------------


class PermOps:
    kind = "perm"

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = identity_perm(degree)

    def mul(self, x: Perm, y: Perm) -> Perm:
        return pmul(x, y)

    def inv(self, x: Perm) -> Perm:
        return pinv(x)

    def order(self, x: Perm) -> int:
        return perm_order(x)

    def key(self, x: Perm):
        return x

    def fmt(self, x: Perm) -> str:
        return format_cycles(x)


class MatOps:
    """2x2 invertible matrices over a small field (no projective scaling)."""

    kind = "mat2"

    def __init__(self, field: FieldSpec):
        self.field = field
        self.identity = (field.one, 0, 0, field.one)

    def mul(self, x, y):
        F = self.field
        a, b, c, d = x
        e, f, g, h = y
        return (
            F.add(F.mul(a, e), F.mul(b, g)),
            F.add(F.mul(a, f), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)),
            F.add(F.mul(c, f), F.mul(d, h)),
        )

    def inv(self, x):
        F = self.field
        a, b, c, d = x
        det = F.sub(F.mul(a, d), F.mul(b, c))
        di = F.inv(det)
        return (F.mul(d, di), F.mul(F.neg(b), di), F.mul(F.neg(c), di), F.mul(a, di))

    def det(self, x):
        F = self.field
        a, b, c, d = x
        return F.sub(F.mul(a, d), F.mul(b, c))

    def order(self, x) -> int:
        return generic_order(self, x)

    def key(self, x):
        return x

    def fmt(self, x) -> str:
        F = self.field
        a, b, c, d = (F.poly_code(v) for v in x)
        return f"[[{a},{b}],[{c},{d}]]"


class ProjOps:
    """Elements of PGammaL_2(q) as (canonical matrix, Frobenius power).

    Composition: (M1, j1) (M2, j2) = (M1 . frob^j1(M2) rescaled, j1 + j2 mod f).
    """

    kind = "proj"

    def __init__(self, field: FieldSpec):
        self.field = field
        self.f = field.f
        self.identity = (field.one, 0, 0, field.one, 0)

    def scale(self, m):
        F = self.field
        for v in m:
            if v != 0:
                if v == F.one:
                    return m
                vi = F.inv(v)
                return tuple(F.mul(u, vi) for u in m)
        raise ValueError("zero matrix")

    def mul(self, x, y):
        F = self.field
        a, b, c, d, j1 = x
        e, f2, g, h, j2 = y
        if j1:
            e, f2, g, h = (F.frobenius(v, j1) for v in (e, f2, g, h))
        m = (
            F.add(F.mul(a, e), F.mul(b, g)),
            F.add(F.mul(a, f2), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)),
            F.add(F.mul(c, f2), F.mul(d, h)),
        )
        return self.scale(m) + (((j1 + j2) % self.f) if self.f > 1 else 0,)

    def inv(self, x):
        F = self.field
        a, b, c, d, j = x
        adj = (d, F.neg(b), F.neg(c), a)
        if j:
            t = self.f - j
            adj = tuple(F.frobenius(v, t) for v in adj)
        return self.scale(adj) + ((-j) % self.f if self.f > 1 else 0,)

    def det_is_square(self, x) -> bool:
        F = self.field
        a, b, c, d, _ = x
        return F.is_square(F.sub(F.mul(a, d), F.mul(b, c)))

    def order(self, x) -> int:
        return generic_order(self, x)

    def key(self, x):
        return x

    def fmt(self, x) -> str:
        F = self.field
        a, b, c, d = (F.poly_code(v) for v in x[:4])
        return f"[[{a},{b}],[{c},{d}]]*phi^{x[4]}"


class PairOps:
    kind = "pair"

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.identity = (left.identity, right.identity)

    def mul(self, x, y):
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def inv(self, x):
        return (self.left.inv(x[0]), self.right.inv(x[1]))

    def order(self, x) -> int:
        return lcm(self.left.order(x[0]), self.right.order(x[1]))

    def key(self, x):
        return (self.left.key(x[0]), self.right.key(x[1]))

    def fmt(self, x) -> str:
        return f"({self.left.fmt(x[0])}, {self.right.fmt(x[1])})"


class WreathOps:
    """Aut(S) wr Sym(n): elements ((a_1..a_n), sigma).

    Multiplication takes coordinate t of the second factor from sigma^-1(t):
    ((a, sigma) (b, tau))_t = a_t b_{sigma^-1(t)}, top sigma tau.
    """

    kind = "wreath"

    def __init__(self, comp_ops, n: int):
        self.comp = comp_ops
        self.n = n
        self.identity = (tuple(comp_ops.identity for _ in range(n)), identity_perm(n))

    def mul(self, x, y):
        a, sigma = x
        b, tau = y
        si = pinv(sigma)
        comps = tuple(self.comp.mul(a[t], b[si[t]]) for t in range(self.n))
        return (comps, pmul(sigma, tau))

    def inv(self, x):
        a, sigma = x
        comps = tuple(self.comp.inv(a[sigma[t]]) for t in range(self.n))
        return (comps, pinv(sigma))

    def order(self, x) -> int:
        # lcm over cycles of (cycle length) * ord(product around the cycle)
        a, sigma = x
        seen = [False] * self.n
        out = 1
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            t = sigma[start]
            while t != start:
                seen[t] = True
                cyc.append(t)
                t = sigma[t]
            prod = self.comp.identity
            for t in reversed(cyc):
                prod = self.comp.mul(prod, a[t])
            out = lcm(out, len(cyc) * self.comp.order(prod))
        return out

    def key(self, x):
        return (tuple(self.comp.key(c) for c in x[0]), x[1])

    def fmt(self, x) -> str:
        comps = ", ".join(self.comp.fmt(c) for c in x[0])
        return f"(({comps}); {format_cycles(x[1])})"


def generic_order(ops, x) -> int:
    n = 1
    y = x
    while y != ops.identity:
        y = ops.mul(y, x)
        n += 1
        if n > 10**7:
            raise RuntimeError("element order runaway; not a finite group element?")
    return n


def generic_pow(ops, x, n: int):
    if n < 0:
        return generic_pow(ops, ops.inv(x), -n)
    out = ops.identity
    base = x
    while n:
        if n & 1:
            out = ops.mul(out, base)
        base = ops.mul(base, base)
        n >>= 1
    return out


# ---------------------------------------------------------------------------
# group handles
# ---------------------------------------------------------------------------


class EnumGroup:
    """Fully enumerated group: element table plus index map."""

    def __init__(self, ops, elements: Sequence, gens: Sequence = (), name: str = "",
                 meta: Optional[dict] = None):
        self.ops = ops
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.gens = tuple(gens)
        self.name = name
        self.meta = dict(meta or {})
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements in table")
        if ops.identity not in self.index:
            raise ValueError("identity missing from table")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def iter_elements(self) -> Iterator:
        return iter(self.elements)

    def random_element(self, rng):
        return self.elements[rng.randrange(len(self.elements))]

    def mul_idx(self, i: int, j: int) -> int:
        return self.index[self.ops.mul(self.elements[i], self.elements[j])]

    def inv_idx(self, i: int) -> int:
        return self.index[self.ops.inv(self.elements[i])]

    def exponent(self) -> int:
        out = 1
        for x in self.elements:
            out = lcm(out, self.ops.order(x))
        return out

    def element_order_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.ops.order(x) for x in self.elements))

    def is_perm_group(self) -> bool:
        return isinstance(self.ops, PermOps)

    @property
    def degree(self) -> int:
        if not self.is_perm_group():
            raise Unsupported(f"group {self.name!r} is not a permutation group")
        return self.ops.degree

    def __repr__(self):
        return f"EnumGroup({self.name or 'anon'}, order={self.order})"


class PermGroupBSGS:
    """Permutation group represented by a deterministic stabilizer chain."""

    def __init__(self, degree: int, gens: Sequence[Perm], name: str = "",
                 meta: Optional[dict] = None):
        if degree > DEFAULT_BSGS_DEGREE_CAP:
            raise BudgetExceeded(
                f"degree {degree} exceeds BSGS cap {DEFAULT_BSGS_DEGREE_CAP}")
        self.ops = PermOps(degree)
        self.gens = tuple(gens)
        self.chain = StabilizerChain(degree, self.gens)
        self.name = name
        self.meta = dict(meta or {})

    @property
    def degree(self) -> int:
        return self.ops.degree

    @property
    def order(self) -> int:
        return self.chain.order

    def __contains__(self, x) -> bool:
        return self.chain.contains(x)

    def iter_elements(self) -> Iterator[Perm]:
        return self.chain.iter_elements()

    def random_element(self, rng) -> Perm:
        return self.chain.random_element(rng)

    def is_perm_group(self) -> bool:
        return True

    def __repr__(self):
        return f"PermGroupBSGS({self.name or 'anon'}, degree={self.degree}, order={self.order})"


GroupHandle = EnumGroup | PermGroupBSGS


def generate_enumerated(ops, gens: Sequence, cap: int = DEFAULT_ENUM_CAP,
                        name: str = "", meta: Optional[dict] = None) -> EnumGroup:
    """Breadth-first closure under multiplication.

    Element numbering is deterministic: identity first, then discovery order
    with the generators applied in sorted-key order.
    """
    sgens = sorted(set(gens), key=ops.key)
    elements = [ops.identity]
    index = {ops.identity: 0}
    frontier = [ops.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in sgens:
                y = ops.mul(x, g)
                if y not in index:
                    if len(elements) >= cap:
                        raise BudgetExceeded(
                            f"enumeration cap {cap} exceeded (reached {len(elements)} elements)")
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    return EnumGroup(ops, elements, gens=sgens, name=name, meta=meta)


def ensure_enumerated(G: GroupHandle, cap: int = DEFAULT_ENUM_CAP) -> EnumGroup:
    if isinstance(G, EnumGroup):
        return G
    if G.order > cap:
        raise BudgetExceeded(
            f"enumeration cap exceeded: |{G.name or 'G'}| = {G.order} > {cap}")
    elements = sorted(G.iter_elements(), key=G.ops.key)
    return EnumGroup(G.ops, elements, gens=G.gens, name=G.name, meta=G.meta)


def exponent_of(elements: Iterable, ops) -> int:
    """exp(M): least common multiple of the element orders of M."""
    out = 1
    for x in elements:
        out = lcm(out, ops.order(x))
    return out


def group_exponent(G: GroupHandle, cap: int = DEFAULT_ENUM_CAP) -> int:
    return ensure_enumerated(G, cap).exponent()


# ---------------------------------------------------------------------------
# constructors: permutation families
# ---------------------------------------------------------------------------


def sym_group(n: int) -> PermGroupBSGS:
    if n < 1:
        raise ValueError("degree must be positive")
    gens = []
    if n >= 2:
        gens.append(perm_from_cycles(n, [[0, 1]]))
    if n >= 3:
        gens.append(perm_from_cycles(n, [list(range(n))]))
    return PermGroupBSGS(n, gens, name=f"sym:{n}")


def alt_group(n: int) -> PermGroupBSGS:
    if n < 3:
        return PermGroupBSGS(max(n, 1), [], name=f"alt:{n}")
    gens = [perm_from_cycles(n, [[0, 1, 2]])]
    if n > 3:
        if n % 2 == 1:
            gens.append(perm_from_cycles(n, [list(range(n))]))
        else:
            gens.append(perm_from_cycles(n, [list(range(1, n))]))
    meta = {"simple": n >= 5}
    return PermGroupBSGS(n, gens, name=f"alt:{n}", meta=meta)


def cyclic_group(n: int) -> PermGroupBSGS:
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return PermGroupBSGS(1, [], name="cyc:1")
    return PermGroupBSGS(n, [perm_from_cycles(n, [list(range(n))])], name=f"cyc:{n}")


def dihedral_group(order: int) -> PermGroupBSGS:
    """Dihedral group OF ORDER ``order`` (so dih:6 is Sym(3))."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and >= 2")
    m = order // 2
    if m == 1:
        return PermGroupBSGS(2, [perm_from_cycles(2, [[0, 1]])], name="dih:2")
    if m == 2:
        gens = [perm_from_cycles(4, [[0, 1]]), perm_from_cycles(4, [[2, 3]])]
        return PermGroupBSGS(4, gens, name="dih:4")
    rot = perm_from_cycles(m, [list(range(m))])
    refl = tuple((m - i) % m for i in range(m))
    return PermGroupBSGS(m, [rot, refl], name=f"dih:{order}")


def perm_group(degree: int, gens: Sequence[Perm], name: str = "") -> PermGroupBSGS:
    return PermGroupBSGS(degree, gens, name=name or f"perm:{degree}")


def regular_rep(G: GroupHandle, cap: int = DEFAULT_ENUM_CAP) -> EnumGroup:
    """Left-regular permutation representation of an enumerable group."""
    E = ensure_enumerated(G, cap)
    n = E.order
    perms = []
    for g in E.elements:
        perms.append(tuple(E.index[E.ops.mul(g, x)] for x in E.elements))
    gens = [tuple(E.index[E.ops.mul(g, x)] for x in E.elements) for g in E.gens]
    return EnumGroup(PermOps(n), sorted(perms), gens=gens,
                     name=f"regular({E.name})" if E.name else "regular")


# ---------------------------------------------------------------------------
# constructors: matrix and projective families
# ---------------------------------------------------------------------------


def _field_of(q: int) -> FieldSpec:
    from .ffield import is_prime, prime_factors

    fac = prime_factors(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = fac[0]
    f = 0
    while q % p == 0 and q > 1:
        q //= p
        f += 1
    if q != 1:
        raise ValueError("not a prime power")
    return make_field(p, f)


@lru_cache(maxsize=None)
def sl2_group(q: int, cap: int = DEFAULT_ENUM_CAP) -> EnumGroup:
    F = _field_of(q)
    ops = MatOps(F)
    if q * (q * q - 1) > cap:
        raise BudgetExceeded(f"|SL2({q})| exceeds cap {cap}")
    elements = []
    for a in F.elements():
        for b in F.elements():
            for c in F.elements():
                # a*d - b*c = 1
                if a != 0:
                    d = F.mul(F.inv(a), F.add(F.one, F.mul(b, c)))
                    elements.append((a, b, c, d))
                elif F.mul(b, c) == F.neg(F.one):
                    elements.extend((a, b, c, d) for d in F.elements())
    gens = [(F.one, F.pow(F.xi, i), 0, F.one) for i in range(F.f)]
    gens.append((0, F.one, F.neg(F.one), 0))
    return EnumGroup(ops, sorted(elements), gens=gens, name=f"sl2:{q}")


def _pgl2_elements(F: FieldSpec, square_det_only: bool) -> list:
    """Canonical projective representatives, optionally det-square filtered.

    The canonical form has first nonzero entry 1, so each class appears once:
    (1, b, c, d) with d != b*c, and (0, 1, c, d) with c != 0.
    """
    one = F.one
    out = []
    for b in F.elements():
        for c in F.elements():
            bc = F.mul(b, c)
            for d in F.elements():
                if d == bc:
                    continue
                if square_det_only and not F.is_square(F.sub(d, bc)):
                    continue
                out.append((one, b, c, d, 0))
    for c in range(1, F.q):
        negc = F.neg(c)
        for d in F.elements():
            if square_det_only and not F.is_square(negc):
                continue
            out.append((0, one, c, d, 0))
    return sorted(out)


@lru_cache(maxsize=None)
def psl2_group(q: int, cap: int = DEFAULT_ENUM_CAP) -> EnumGroup:
    F = _field_of(q)
    expected = q * (q * q - 1) // gcd(2, q - 1)
    if expected > cap:
        raise BudgetExceeded(f"|PSL2({q})| = {expected} exceeds cap {cap}")
    ops = ProjOps(F)
    elements = _pgl2_elements(F, square_det_only=True)
    assert len(elements) == expected
    gens = [ops.scale((F.one, F.pow(F.xi, i), 0, F.one)) + (0,) for i in range(F.f)]
    gens.append(ops.scale((0, F.one, F.neg(F.one), 0)) + (0,))
    meta = {"simple": q > 3}
    return EnumGroup(ops, elements, gens=gens, name=f"psl2:{q}", meta=meta)


@lru_cache(maxsize=None)
def pgl2_group(q: int, cap: int = DEFAULT_ENUM_CAP) -> EnumGroup:
    F = _field_of(q)
    expected = q * (q * q - 1)
    if expected > cap:
        raise BudgetExceeded(f"|PGL2({q})| = {expected} exceeds cap {cap}")
    ops = ProjOps(F)
    elements = _pgl2_elements(F, square_det_only=False)
    assert len(elements) == expected
    gens = [ops.scale((F.one, F.pow(F.xi, i), 0, F.one)) + (0,) for i in range(F.f)]
    gens.append(ops.scale((F.xi, 0, 0, F.one)) + (0,))
    gens.append(ops.scale((0, F.one, F.neg(F.one), 0)) + (0,))
    return EnumGroup(ops, elements, gens=gens, name=f"pgl2:{q}")


@lru_cache(maxsize=None)
def pgammal2_group(q: int, cap: int = DEFAULT_ENUM_CAP) -> EnumGroup:
    F = _field_of(q)
    expected = q * (q * q - 1) * F.f
    if expected > cap:
        raise BudgetExceeded(f"|PGammaL2({q})| = {expected} exceeds cap {cap}")
    ops = ProjOps(F)
    mats = _pgl2_elements(F, square_det_only=False)
    elements = [m[:4] + (j,) for m in mats for j in range(F.f)]
    gens = [ops.scale((F.one, F.pow(F.xi, i), 0, F.one)) + (0,) for i in range(F.f)]
    gens.append(ops.scale((F.xi, 0, 0, F.one)) + (0,))
    gens.append(ops.scale((0, F.one, F.neg(F.one), 0)) + (0,))
    if F.f > 1:
        gens.append((F.one, 0, 0, F.one, 1))
    return EnumGroup(ops, sorted(elements), gens=gens, name=f"pgammal2:{q}")


# ---------------------------------------------------------------------------
# products, wreath products
# ---------------------------------------------------------------------------


def _embed_left(g: Perm, n_total: int) -> Perm:
    return tuple(g) + tuple(range(len(g), n_total))


def _embed_right(g: Perm, offset: int, n_total: int) -> Perm:
    return tuple(range(offset)) + tuple(offset + i for i in g)


def direct_product(A: GroupHandle, B: GroupHandle, name: str = "") -> GroupHandle:
    """A x B; disjoint-point action when both factors are permutation groups."""
    name = name or f"prod({A.name},{B.name})"
    if A.is_perm_group() and B.is_perm_group():
        na, nb = A.ops.degree, B.ops.degree
        n = na + nb
        gens = [_embed_left(g, n) for g in A.gens]
        gens += [_embed_right(g, na, n) for g in B.gens]
        meta = {}
        factors = []
        for H, embed in ((A, lambda g: _embed_left(g, n)),
                         (B, lambda g: _embed_right(g, na, n))):
            if H.meta.get("simple"):
                factors.append([embed(g) for g in H.gens])
            elif H.meta.get("socle_factors"):
                factors.extend([[embed(g) for g in fac]
                                for fac in H.meta["socle_factors"]])
            else:
                factors = None
                break
        if factors:
            meta["socle_factors"] = factors
        return PermGroupBSGS(n, gens, name=name, meta=meta)
    EA, EB = ensure_enumerated(A), ensure_enumerated(B)
    ops = PairOps(EA.ops, EB.ops)
    elements = [(x, y) for x in EA.elements for y in EB.elements]
    gens = [(g, EB.ops.identity) for g in EA.gens]
    gens += [(EA.ops.identity, g) for g in EB.gens]
    return EnumGroup(ops, sorted(elements, key=ops.key), gens=gens, name=name)


def wreath_enum(S: GroupHandle, n: int, top: GroupHandle,
                cap: int = DEFAULT_ENUM_CAP, name: str = "",
                lifts: Sequence = (), aut_ops=None) -> EnumGroup:
    """Enumerated S^n . top with WreathOps elements.

    ``lifts`` may add automorphism-decorated generators (elements of the
    Aut(S) realization whose ops must then be passed as ``aut_ops``).
    """
    ES = ensure_enumerated(S)
    if not top.is_perm_group() or (top.ops.degree != n):
        raise ValueError("top group must be a permutation group on n points")
    comp_ops = aut_ops if aut_ops is not None else ES.ops
    ops = WreathOps(comp_ops, n)
    gens = []
    for i in range(n):
        for s in ES.gens:
            comps = tuple(s if t == i else comp_ops.identity for t in range(n))
            gens.append((comps, identity_perm(n)))
    top_gens = top.gens if top.gens else ()
    for tau in top_gens:
        gens.append((tuple(comp_ops.identity for _ in range(n)), tau))
    for g in lifts:
        gens.append(g)
    return generate_enumerated(ops, gens, cap=cap,
                               name=name or f"wreath({ES.name},{n},{top.name})")


def wreath_perm(S: GroupHandle, n: int, top: GroupHandle, name: str = "") -> PermGroupBSGS:
    """S wr top as a permutation group on n * deg(S) points, blocks of deg(S).

    Carries socle metadata (the n block copies of S) used by the BSGS
    nonsolvable-length path.
    """
    if not S.is_perm_group():
        raise Unsupported("wreath_perm needs a permutation base group")
    if not top.is_perm_group() or top.ops.degree != n:
        raise ValueError("top group must be a permutation group on n points")
    m = S.ops.degree
    total = n * m
    gens: list[Perm] = []
    factors: list[list[Perm]] = []
    for block in range(n):
        fac = []
        for g in S.gens:
            img = list(range(total))
            for i in range(m):
                img[block * m + i] = block * m + g[i]
            fac.append(tuple(img))
        gens.extend(fac)
        factors.append(fac)
    for tau in top.gens:
        img = [0] * total
        for b in range(n):
            for i in range(m):
                img[b * m + i] = tau[b] * m + i
        gens.append(tuple(img))
    meta = {}
    if S.meta.get("simple"):
        meta["socle_factors"] = factors
        meta["expected_order"] = S.order**n * top.order
    return PermGroupBSGS(total, gens, name=name or f"wreath({S.name},{n},{top.name})",
                         meta=meta)


# ---------------------------------------------------------------------------
# automorphism cosets S.alpha inside Aut(S)
# ---------------------------------------------------------------------------


@dataclass
class AutCoset:
    """A coset S.alpha of a simple group inside a realization of Aut(S)."""

    S: EnumGroup
    aut_ops: object
    rep: object
    desc: str
    outer: object  # the outer-class label

    @property
    def size(self) -> int:
        return self.S.order

    def iter_elements(self) -> Iterator:
        mul = self.aut_ops.mul
        rep = self.rep
        for s in self.S.elements:
            yield mul(s, rep)

    def element(self, i: int):
        return self.aut_ops.mul(self.S.elements[i], self.rep)

    def exponent(self) -> int:
        return exponent_of(self.iter_elements(), self.aut_ops)


def psl2_coset(q: int, eps: int, t: int, cap: int = DEFAULT_ENUM_CAP) -> AutCoset:
    """The coset of PSL2(q) in PGammaL2(q) with diagonal part eps, field part t.

    q = 3 is allowed: PSL2(3) is not simple, but its cosets in
    PGL2(3) = Sym(4) still carry the exponent computation.
    """
    if q < 3:
        raise Unsupported(f"PSL2({q}) cosets are out of scope")
    F = _field_of(q)
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    if not 0 <= t < F.f:
        raise ValueError(f"field power must lie in 0..{F.f - 1}")
    if eps == 1 and F.p == 2:
        raise Unsupported(
            f"PGL2({q}) = PSL2({q}) in characteristic 2: no diagonal outer part")
    S = psl2_group(q, cap=cap)
    ops: ProjOps = S.ops
    if eps:
        mat = ops.scale((F.xi, 0, 0, F.one))
    else:
        mat = (F.one, 0, 0, F.one)
    rep = mat + (t,)
    return AutCoset(S=S, aut_ops=ops, rep=rep,
                    desc=f"psl2:{q} coset eps={eps},t={t}", outer=(eps, t))


@lru_cache(maxsize=None)
def _alt_enumerated(n: int, cap: int) -> EnumGroup:
    return ensure_enumerated(alt_group(n), cap)


def alt_coset(n: int, odd: int, cap: int = DEFAULT_ENUM_CAP) -> AutCoset:
    """The coset of Alt(n) in Sym(n) = Aut(Alt(n)); odd selects the class."""
    if n == 6:
        raise Unsupported(
            "Aut(Alt(6)) is not Sym(6); use psl2:9 (isomorphic to Alt(6)) instead")
    if n not in (5, 7, 8):
        raise Unsupported(f"alt:{n} is outside the automorphism catalog {{5,7,8}}")
    if odd not in (0, 1):
        raise ValueError("outer class must be 0 (inner) or 1 (odd)")
    S = _alt_enumerated(n, cap)
    rep = perm_from_cycles(n, [[0, 1]]) if odd else identity_perm(n)
    return AutCoset(S=S, aut_ops=S.ops, rep=rep,
                    desc=f"alt:{n} coset odd={odd}", outer=odd)


def outer_classes(spec: str) -> list:
    """Outer-class labels for a catalog simple group spec."""
    kind, _, arg = spec.partition(":")
    if kind == "psl2":
        q = int(arg)
        F = _field_of(q)
        if F.p == 2:
            return [(0, t) for t in range(F.f)]
        return [(e, t) for e in (0, 1) for t in range(F.f)]
    if kind == "alt":
        return [0, 1]
    raise Unsupported(f"no automorphism catalog entry for {spec!r}")


def coset_for(spec: str, outer, cap: int = DEFAULT_ENUM_CAP) -> AutCoset:
    kind, _, arg = spec.partition(":")
    if kind == "psl2":
        eps, t = outer
        return psl2_coset(int(arg), eps, t, cap=cap)
    if kind == "alt":
        return alt_coset(int(arg), outer, cap=cap)
    raise Unsupported(f"no automorphism catalog entry for {spec!r}")
