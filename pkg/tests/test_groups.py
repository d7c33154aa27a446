import random
from math import lcm

import pytest

from groupword.errors import BudgetExceeded, Unsupported
from groupword.ffield import make_field
from groupword.groups import (
    AutCoset,
    EnumGroup,
    PairOps,
    PermGroupBSGS,
    PermOps,
    ProjOps,
    WreathOps,
    alt_coset,
    alt_group,
    coset_for,
    cyclic_group,
    dihedral_group,
    direct_product,
    ensure_enumerated,
    exponent_of,
    generate_enumerated,
    generic_pow,
    outer_classes,
    pgammal2_group,
    pgl2_group,
    psl2_coset,
    psl2_group,
    regular_rep,
    sl2_group,
    sym_group,
    wreath_enum,
    wreath_perm,
)
from groupword.perms import identity_perm, parse_cycles, perm_from_cycles, pmul


class TestGenerateEnumerated:
    def test_sym3_closure(self):
        ops = PermOps(3)
        gens = [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)]
        G = generate_enumerated(ops, gens)
        assert G.order == 6
        assert G.elements[0] == ops.identity

    def test_psl27_closure_matches_direct(self):
        direct = psl2_group(7)
        closed = generate_enumerated(direct.ops, direct.gens)
        assert closed.order == 168
        assert set(closed.elements) == set(direct.elements)

    def test_empty_generators(self):
        G = generate_enumerated(PermOps(4), [])
        assert G.order == 1

    def test_cap(self):
        ops = PermOps(8)
        with pytest.raises(BudgetExceeded):
            generate_enumerated(ops, sym_group(8).gens, cap=100)


class TestBSGS:
    def test_sym5(self):
        assert sym_group(5).order == 120

    def test_wreath_a5_a5(self):
        G = wreath_perm(alt_group(5), 5, alt_group(5))
        assert G.order == 60**6 == 46_656_000_000
        assert G.meta["expected_order"] == G.order

    def test_trivial(self):
        assert PermGroupBSGS(3, []).order == 1

    def test_orders_match_enumeration(self):
        for G in [sym_group(4), alt_group(5), cyclic_group(12), dihedral_group(12)]:
            E = ensure_enumerated(G)
            assert E.order == G.order

    def test_membership_agreement(self):
        rng = random.Random(411)
        for G in [sym_group(4), alt_group(5), dihedral_group(10), sym_group(5)]:
            assert G.order <= 5000
            E = ensure_enumerated(G)
            n = G.degree
            for _ in range(250):
                p = tuple(rng.sample(range(n), n))
                assert (p in G) == (p in E)

    def test_uniform_sampling_hits_whole_group(self):
        G = alt_group(4)
        rng = random.Random(7)
        seen = {G.random_element(rng) for _ in range(600)}
        assert len(seen) == 12


class TestConstructorOrders:
    def test_family_orders(self):
        assert alt_group(5).order == 60
        assert alt_group(6).order == 360
        assert alt_group(7).order == 2520
        assert cyclic_group(30).order == 30
        assert dihedral_group(6).order == 6
        assert dihedral_group(12).order == 12
        assert sl2_group(5).order == 120
        assert psl2_group(5).order == 60
        assert psl2_group(7).order == 168
        assert psl2_group(9).order == 360
        assert pgl2_group(9).order == 720
        assert psl2_group(27).order == 9828

    def test_pgammal2_orders(self):
        assert pgammal2_group(9).order == 2 * 720
        assert pgammal2_group(27).order == 3 * (27 * 26 * 28) == 58968

    def test_psl2_gens_generate(self):
        for q in (5, 7, 9, 27):
            G = psl2_group(q)
            closed = generate_enumerated(G.ops, G.gens)
            assert closed.order == G.order

    def test_sl2_gens_generate(self):
        G = sl2_group(5)
        assert generate_enumerated(G.ops, G.gens).order == 120

    def test_pgl2_pgammal2_gens_generate(self):
        for G in (pgl2_group(9), pgammal2_group(9)):
            assert generate_enumerated(G.ops, G.gens).order == G.order


class TestElementOps:
    def test_element_order_cycle_lcm(self):
        p = parse_cycles("(1 2)(3 4 5)", 5)
        assert PermOps(5).order(p) == 6

    def test_exponents(self):
        A5 = ensure_enumerated(alt_group(5))
        assert A5.exponent() == 30
        odd = [p for p in ensure_enumerated(sym_group(5)).elements if p not in A5]
        assert exponent_of(odd, PermOps(5)) == 12

    def test_pgammal2_frob_component_arithmetic(self):
        G = pgammal2_group(4)
        ops: ProjOps = G.ops
        F = ops.field
        x = (F.one, 0, 0, F.one, 1)
        y = (F.one, 0, 0, F.one, F.f - 1)
        assert ops.mul(x, y)[4] == 0
        assert generic_pow(ops, x, 2) == ops.identity

    def test_proj_inverse(self):
        G = pgammal2_group(9)
        ops = G.ops
        for x in G.elements[::97]:
            assert ops.mul(x, ops.inv(x)) == ops.identity
            assert ops.mul(ops.inv(x), x) == ops.identity


class TestWreath:
    def test_enum_wreath_order(self):
        G = wreath_enum(sym_group(3), 2, sym_group(2))
        assert G.order == 6 * 6 * 2 == 72

    def test_a5_wr_c2_order(self):
        G = wreath_enum(alt_group(5), 2, sym_group(2))
        assert G.order == 7200

    def test_against_independent_pair_model(self):
        """Oracle: (g1, g2, bit) with explicit swap bookkeeping."""
        S = ensure_enumerated(sym_group(3))
        G = wreath_enum(S, 2, sym_group(2))
        swap = (1, 0)

        def to_model(x):
            comps, top = x
            return (comps[0], comps[1], 0 if top == (0, 1) else 1)

        def model_mul(u, v):
            a1, a2, s = u
            b1, b2, t = v
            if s == 0:
                return (S.ops.mul(a1, b1), S.ops.mul(a2, b2), t)
            # coordinate i of the second factor is read from swap^-1(i)
            return (S.ops.mul(a1, b2), S.ops.mul(a2, b1), 1 - t)

        rng = random.Random(2024)
        for _ in range(300):
            x = G.random_element(rng)
            y = G.random_element(rng)
            assert to_model(G.ops.mul(x, y)) == model_mul(to_model(x), to_model(y))

    def test_wreath_order_formula_vs_generic(self):
        G = wreath_enum(sym_group(3), 2, sym_group(2))
        ops: WreathOps = G.ops
        rng = random.Random(5)
        from groupword.groups import generic_order

        for _ in range(100):
            x = G.random_element(rng)
            assert ops.order(x) == generic_order(ops, x)


class TestProducts:
    def test_perm_product_disjoint_action(self):
        G = direct_product(alt_group(5), alt_group(5))
        assert G.order == 3600
        assert G.degree == 10
        assert len(G.meta["socle_factors"]) == 2

    def test_mixed_product_pairs(self):
        G = direct_product(psl2_group(5), alt_group(4))
        assert G.order == 60 * 12
        assert isinstance(G.ops, PairOps)

    def test_regular_representation(self):
        R = regular_rep(sym_group(3))
        assert R.order == 6
        assert R.degree == 6
        # regular action is fixed-point free off the identity
        for p in R.elements:
            if p != R.ops.identity:
                assert all(p[i] != i for i in range(6))


class TestAutCosets:
    def test_psl2_coset_shapes(self):
        c = psl2_coset(27, 1, 1)
        assert c.rep[4] == 1
        ops: ProjOps = c.aut_ops
        assert not ops.det_is_square(c.rep)
        assert c.size == 9828

    def test_alt5_odd_coset(self):
        c = alt_coset(5, 1)
        elems = list(c.iter_elements())
        assert len(elems) == 60
        A5 = ensure_enumerated(alt_group(5))
        assert all(e not in A5 for e in elems)

    def test_char2_diag_rejected(self):
        with pytest.raises(Unsupported):
            psl2_coset(4, 1, 0)

    def test_alt6_routed_away(self):
        with pytest.raises(Unsupported, match="psl2:9"):
            alt_coset(6, 0)

    def test_outer_classes(self):
        assert outer_classes("psl2:27") == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
        assert outer_classes("psl2:4") == [(0, 0), (0, 1)]
        assert outer_classes("alt:5") == [0, 1]

    def test_exp_odd_coset_sym5(self):
        assert alt_coset(5, 1).exponent() == 12


class TestPGammaLSanity:
    def test_psl_slice_closed_and_conjugation_stable(self):
        for q in (5, 7, 9):
            G = pgammal2_group(q)
            ops: ProjOps = G.ops
            psl = {x for x in G.elements if x[4] == 0 and ops.det_is_square(x)}
            expected = q * (q * q - 1) // 2
            assert len(psl) == expected
            rng = random.Random(q)
            sample = random.Random(1).sample(sorted(psl), 20)
            # closure under multiplication
            for a in sample[:8]:
                for b in sample[:8]:
                    assert ops.mul(a, b) in psl
            # conjugation preserves the slice
            for g in [G.random_element(rng) for _ in range(10)]:
                gi = ops.inv(g)
                for x in sample[:6]:
                    assert ops.mul(gi, ops.mul(x, g)) in psl

    def test_centralizer_identity(self):
        """alpha = diag(xi,1).phi^t: alpha^(f/gcd(f,t)) is diag(xi^((p^f-1)/(p^g-1)), 1)
        of order p^gcd(f,t) - 1, for p in {3,5,7}, p^f <= 81."""
        from math import gcd

        cases = [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)]
        for p, f in cases:
            q = p**f
            if q > 81:
                continue
            F = make_field(p, f)
            ops = ProjOps(F)
            for t in range(f):
                alpha = ops.scale((F.xi, 0, 0, F.one)) + (t,)
                g = gcd(f, t) if t else f
                power = generic_pow(ops, alpha, f // g)
                e = (p**f - 1) // (p**g - 1)
                expected = ops.scale((F.pow(F.xi, e), 0, 0, F.one)) + (0,)
                assert power == expected
                from groupword.groups import generic_order

                assert generic_order(ops, power) == p**g - 1
