"""Support and fixed-point statistics of permutation groups.

Covers the order/support bounds for bounded-support groups, the tail bounds
from the first and second moment methods, the f(rho, C) order bound for
groups with many small-support elements, and the two extremal constructions
(Hadamard-code groups and subdirect powers of the regular Sym(3)).

All probabilities and moments are exact rationals obtained by full
enumeration; the only floating point enters through ceil(8(C - log rho)),
which is evaluated in high-precision arithmetic and rounded up on ties.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from .errors import BudgetExceeded
from .groups import (
    EnumGroup,
    GroupHandle,
    PermGroupBSGS,
    PermOps,
    ensure_enumerated,
    perm_group,
    regular_rep,
    sym_group,
)
from .perms import (
    Perm,
    fixed_points,
    orbits,
    pair_orbit_count,
    perm_order,
    support,
    support_set,
)

DEFAULT_SB_BUDGET = 10**6


def _require_perm_group(P: GroupHandle) -> None:
    if not P.is_perm_group():
        raise ValueError(f"{P!r} is not a permutation group")


def _element_matrix(P: EnumGroup) -> np.ndarray:
    return np.array(P.elements, dtype=np.int32)


def small_support_set(P: GroupHandle, C: int,
                      budget: int = DEFAULT_SB_BUDGET) -> list[Perm]:
    """SB_C(P): all elements with support of size at most C, by enumeration."""
    _require_perm_group(P)
    if P.order > budget:
        raise BudgetExceeded(
            f"SB enumeration refused: |P| = {P.order} > budget {budget}")
    return [p for p in P.iter_elements() if support(p) <= C]


def orbit_count(P: GroupHandle) -> int:
    _require_perm_group(P)
    return len(orbits(P.ops.degree, P.gens))


def rank(P: GroupHandle, max_degree: int = 2048) -> int:
    """Number of orbits on ordered pairs (diagonal included)."""
    _require_perm_group(P)
    return pair_orbit_count(P.ops.degree, P.gens, max_degree=max_degree)


@dataclass
class SupportStats:
    degree: int
    order: int
    orbit_sizes: tuple[int, ...]
    t: int
    r: int
    c: int  # max support over the group
    supp_p: int  # points moved by some element
    mean_fix: Fraction
    mean_fix_sq: Fraction
    sb_counts: dict[int, int]


def moments(P: GroupHandle, sb_thresholds: Sequence[int] = (0, 1, 2, 3, 4),
            budget: int = DEFAULT_SB_BUDGET) -> SupportStats:
    """Exact E[fix], E[fix^2] and SB_C counts by full enumeration.

    Asserts the Cauchy-Frobenius identities E[fix] = t and E[fix^2] = r.
    """
    _require_perm_group(P)
    E = ensure_enumerated(P, cap=budget)
    n = E.degree
    arr = _element_matrix(E)
    fixed = (arr == np.arange(n, dtype=np.int32)).sum(axis=1).astype(np.int64)
    supp = n - fixed
    total_fix = int(fixed.sum())
    total_fix_sq = int((fixed**2).sum())
    mean_fix = Fraction(total_fix, E.order)
    mean_fix_sq = Fraction(total_fix_sq, E.order)
    orbs = orbits(n, E.gens if E.gens else tuple(E.elements))
    t = len(orbs)
    r = pair_orbit_count(n, E.gens if E.gens else tuple(E.elements))
    assert mean_fix == t, f"Cauchy-Frobenius failed: E[fix] = {mean_fix} != t = {t}"
    assert mean_fix_sq == r, f"second moment failed: E[fix^2] = {mean_fix_sq} != r = {r}"
    moved = set()
    for p in E.elements:
        moved |= support_set(p)
    sb_counts = {C: int((supp <= C).sum()) for C in sb_thresholds}
    return SupportStats(
        degree=n,
        order=E.order,
        orbit_sizes=tuple(len(o) for o in orbs),
        t=t,
        r=r,
        c=int(supp.max()) if E.order else 0,
        supp_p=len(moved),
        mean_fix=mean_fix,
        mean_fix_sq=mean_fix_sq,
        sb_counts=sb_counts,
    )


def check_support_theorem(P: GroupHandle, budget: int = DEFAULT_SB_BUDGET) -> dict:
    """With c = max support: verify |P| <= c! and, for c > 1, supp(P) <= 2(c-1)."""
    stats = moments(P, budget=budget)
    c = stats.c
    order_bound = factorial(c)
    order_ok = stats.order <= order_bound
    supp_bound = 2 * (c - 1) if c > 1 else None
    supp_ok = True if supp_bound is None else stats.supp_p <= supp_bound
    return {
        "c": c,
        "order": stats.order,
        "order_bound": order_bound,
        "order_ok": order_ok,
        "order_slack": order_bound - stats.order,
        "supp_p": stats.supp_p,
        "supp_bound": supp_bound,
        "supp_ok": supp_ok,
        "ok": order_ok and supp_ok,
    }


def factorial_product_bound(sizes: Sequence[int]) -> dict:
    """prod n_i! <= (1 + sum (n_i - 1))!, evaluated in big integers."""
    if any(n < 1 for n in sizes):
        raise ValueError("orbit sizes must be >= 1")
    lhs = 1
    for n in sizes:
        lhs *= factorial(n)
    rhs = factorial(1 + sum(n - 1 for n in sizes))
    return {"lhs": lhs, "rhs": rhs, "ok": lhs <= rhs}


def _ceil_tied_up(x: mpmath.mpf, tol: float = 1e-12) -> int:
    """Ceiling with ties within tol rounded up (can only enlarge the bound)."""
    nearest = mpmath.nint(x)
    if abs(x - nearest) <= tol:
        if x == nearest:
            return int(nearest)
        return int(nearest) + 1
    return int(mpmath.ceil(x))


def f_bound_parts(rho: Fraction, C: int) -> tuple[int, int]:
    """(floor(1/rho + C + 1), ceil(8(C - log rho))) for f(rho, C) = (B!)^s."""
    if not 0 < rho <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    if C < 0:
        raise ValueError("C must be nonnegative")
    base = int(Fraction(1, 1) / rho + C + 1)  # exact floor of a rational
    with mpmath.workdps(60):
        if rho == 1:
            s = 8 * C
        else:
            x = 8 * (C - mpmath.log(mpmath.mpf(rho.numerator) / rho.denominator))
            s = _ceil_tied_up(x)
    return base, s


def f_bound(rho: Fraction, C: int) -> int:
    """f(rho, C) = (floor(1/rho + C + 1)!)^ceil(8(C - log rho)), exactly."""
    base, s = f_bound_parts(rho, C)
    return factorial(base) ** s


def order_at_most_f_bound(order: int, rho: Fraction, C: int) -> bool:
    """Exact comparison order <= f(rho, C) without materialising huge powers."""
    base, s = f_bound_parts(rho, C)
    if s == 0:
        return order <= 1
    fb = factorial(base)
    acc = 1
    for _ in range(s):
        acc *= fb
        if acc >= order:
            return True
    return acc >= order


def floor_sqrt_times_rational(m: int, num: int, den: int) -> int:
    """floor(sqrt(m) * num / den) in exact integer arithmetic (m, num, den >= 0)."""
    return isqrt(m * num * num) // den


def markov_chebyshev_report(P: GroupHandle, epsilons: Sequence[Fraction] = (),
                            C: int = 0, budget: int = DEFAULT_SB_BUDGET) -> dict:
    """Tail bounds from the first/second moment method, checked exactly.

    For each epsilon: P(supp > (1-eps)n) >= 1 - t/(eps n) and
    P(supp > (1-eps)n - t) >= 1 - (r - t^2)/(eps^2 n^2), with the empirical
    probabilities measured by enumeration.  Also evaluates the two factorial
    order bounds for the measured rho = |SB_C(P)| / |P|.
    """
    stats = moments(P, sb_thresholds=(C,), budget=budget)
    E = ensure_enumerated(P, cap=budget)
    n, t, r = stats.degree, stats.t, stats.r
    supps = [support(p) for p in E.elements]
    tails = []
    for eps in epsilons:
        if not 0 < eps < 1:
            raise ValueError("epsilon must lie strictly between 0 and 1")
        thr1 = (1 - eps) * n
        emp1 = Fraction(sum(1 for s in supps if s > thr1), E.order)
        bound1 = 1 - Fraction(t, 1) / (eps * n)
        thr2 = (1 - eps) * n - t
        emp2 = Fraction(sum(1 for s in supps if s > thr2), E.order)
        bound2 = 1 - Fraction(r - t * t, 1) / (eps * eps * n * n)
        tails.append({
            "eps": eps,
            "markov_bound": bound1,
            "markov_empirical": emp1,
            "markov_ok": emp1 >= bound1,
            "chebyshev_bound": bound2,
            "chebyshev_empirical": emp2,
            "chebyshev_ok": emp2 >= bound2,
        })
    rho = Fraction(stats.sb_counts[C], E.order)
    b1 = factorial(int(t / rho + C))
    b2 = factorial(
        floor_sqrt_times_rational(r - t * t, rho.denominator, rho.numerator) + t + C)
    order_bounds = {
        "first_moment_bound": b1,
        "first_moment_ok": E.order <= b1,
        "second_moment_bound": b2,
        "second_moment_ok": E.order <= b2,
        "rho": rho,
        "C": C,
    }
    ok = all(row["markov_ok"] and row["chebyshev_ok"] for row in tails)
    ok = ok and order_bounds["first_moment_ok"] and order_bounds["second_moment_ok"]
    return {"degree": n, "order": E.order, "t": t, "r": r,
            "tails": tails, "order_bounds": order_bounds, "ok": ok}


# ---------------------------------------------------------------------------
# extremal constructions
# ---------------------------------------------------------------------------


def hadamard_perm_group(k: int) -> EnumGroup:
    """The elementary abelian group from the length-2^k Hadamard code.

    Codewords c_x(y) = <x, y> over F_2; the y = 0 coordinate (where every
    codeword vanishes) is dropped, and each codeword acts on
    {1..2^k - 1} x {0, 1} as the product of the transpositions swapping
    (i, 0) with (i, 1) at its nonzero coordinates.
    """
    if not 2 <= k <= 10:
        raise ValueError("k must lie in 2..10")
    ys = list(range(1, 2**k))  # nonzero y in F_2^k, the kept coordinates
    n = 2 * len(ys)

    def codeword_perm(x: int) -> Perm:
        img = list(range(n))
        for i, y in enumerate(ys):
            if bin(x & y).count("1") % 2:
                img[2 * i], img[2 * i + 1] = img[2 * i + 1], img[2 * i]
        return tuple(img)

    elements = sorted(codeword_perm(x) for x in range(2**k))
    basis = [codeword_perm(1 << j) for j in range(k)]
    return EnumGroup(PermOps(n), elements, gens=basis, name=f"hadamard:{k}")


def dihedral_subdirect_power(m: int) -> PermGroupBSGS:
    """P_m <= Sym(6 k_m): the m-generator subdirect power of regular Sym(3).

    Blocks are indexed by the k_m = 3^m - 3 sequences of involutions with at
    least two distinct entries; generator i acts on each block by that
    sequence's i-th entry.
    """
    if not 2 <= m <= 5:
        raise ValueError("m must lie in 2..5")
    R = regular_rep(sym_group(3))
    involutions = sorted(p for p in R.elements if perm_order(p) == 2)
    assert len(involutions) == 3
    seqs = [s for s in itertools.product(involutions, repeat=m) if len(set(s)) >= 2]
    k_m = len(seqs)
    assert k_m == 3**m - 3
    degree = 6 * k_m
    gens = []
    for i in range(m):
        block_img = [0] * degree
        for b, s in enumerate(seqs):
            for j in range(6):
                block_img[6 * b + j] = 6 * b + s[i][j]
        gens.append(tuple(block_img))
    return PermGroupBSGS(degree, gens, name=f"ex35:{m}",
                         meta={"k_m": k_m, "m": m})


# ---------------------------------------------------------------------------
# the reproducible test corpus
# ---------------------------------------------------------------------------

CORPUS_SEED = 41501


def all_subgroups_sym4() -> list[EnumGroup]:
    """Every subgroup of Sym(4), by closing generator sets element by element."""
    S4 = ensure_enumerated(sym_group(4))
    ops = S4.ops

    def closure(seed: tuple) -> frozenset:
        elems = {ops.identity}
        frontier = list(seed)
        elems |= set(seed)
        while frontier:
            x = frontier.pop()
            for g in list(elems):
                for y in (ops.mul(x, g), ops.mul(g, x)):
                    if y not in elems:
                        elems.add(y)
                        frontier.append(y)
        return frozenset(elems)

    subgroups = {frozenset({ops.identity})}
    frontier = [frozenset({ops.identity})]
    while frontier:
        H = frontier.pop()
        for g in S4.elements:
            if g in H:
                continue
            K = closure(tuple(H) + (g,))
            if K not in subgroups:
                subgroups.add(K)
                frontier.append(K)
    out = []
    for i, H in enumerate(sorted(subgroups, key=lambda s: (len(s), sorted(s)))):
        gens = tuple(sorted(H))
        out.append(EnumGroup(ops, sorted(H), gens=gens, name=f"sym4-sub{i}"))
    return out


def random_two_generator_corpus(seed: int = CORPUS_SEED,
                                count_per_degree: int = 50,
                                degrees: Sequence[int] = (5, 6, 7, 8)) -> list[PermGroupBSGS]:
    """count_per_degree seeded 2-generator subgroups of Sym(n) per degree."""
    rng = random.Random(seed)
    out = []
    for n in degrees:
        for i in range(count_per_degree):
            a = tuple(rng.sample(range(n), n))
            b = tuple(rng.sample(range(n), n))
            out.append(perm_group(n, [a, b], name=f"rand:{n}:{i}"))
    return out


def support_corpus(seed: int = CORPUS_SEED) -> list[GroupHandle]:
    """All subgroups of Sym(4) plus 200 seeded 2-generator subgroups of Sym(5..8)."""
    return list(all_subgroups_sym4()) + list(random_two_generator_corpus(seed))
