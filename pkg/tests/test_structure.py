import pytest

from groupword.errors import Unsupported
from groupword.groups import (
    alt_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    ensure_enumerated,
    psl2_group,
    sl2_group,
    sym_group,
    wreath_enum,
    wreath_perm,
)
from groupword.structure import (
    CharSeriesReport,
    check_cycle_lengths,
    check_lambda_nu2,
    certify_semisimple_bsgs,
    is_solvable,
    minimal_normal_subgroups,
    nonsolvable_length,
    nu2_exponent,
    permutation_part,
    quotient_group,
    segment_transfer_check,
    semisimple_decomposition,
    socle,
    solvable_radical,
    subgroup_from,
    transfer_check_power,
)
from groupword.perms import parse_cycles
from groupword.words import parse_word


def radical_order(G):
    return solvable_radical(G).order


class TestSolvability:
    def test_enumerated(self):
        assert is_solvable(sym_group(4))
        assert is_solvable(dihedral_group(12))
        assert not is_solvable(alt_group(5))

    def test_bsgs_derived_series(self):
        from groupword.structure import _bsgs_is_solvable

        assert _bsgs_is_solvable(sym_group(4))
        assert _bsgs_is_solvable(cyclic_group(30))
        assert not _bsgs_is_solvable(sym_group(5))
        assert not _bsgs_is_solvable(wreath_perm(alt_group(5), 5, alt_group(5)))


class TestRadical:
    def test_solvable_whole(self):
        E = ensure_enumerated(sym_group(4))
        assert radical_order(E) == 24

    def test_sym5_trivial(self):
        assert radical_order(sym_group(5)) == 1

    def test_sl25_center(self):
        G = sl2_group(5)
        rad = solvable_radical(G)
        assert rad.order == 2
        Q, _ = quotient_group(G, rad)
        assert Q.order == 60
        assert radical_order(Q) == 1

    def test_rad_of_quotient_trivial(self):
        for G in [sym_group(4), sl2_group(5), dihedral_group(12)]:
            E = ensure_enumerated(G)
            rad = solvable_radical(E)
            if rad.order < E.order:
                Q, _ = quotient_group(E, rad)
                assert radical_order(Q) == 1


class TestSocle:
    def test_sym5(self):
        E = ensure_enumerated(sym_group(5))
        s = socle(E)
        assert s.order == 60

    def test_sym4(self):
        E = ensure_enumerated(sym_group(4))
        s = socle(E)
        assert s.order == 4  # the Klein four group

    def test_a5xa5(self):
        G = ensure_enumerated(direct_product(alt_group(5), alt_group(5)))
        assert socle(G).order == 3600
        assert len(minimal_normal_subgroups(G)) == 2


class TestQuotient:
    def test_sym4_mod_v4(self):
        E = ensure_enumerated(sym_group(4))
        v4 = subgroup_from(E.ops, [parse_cycles("(1 2)(3 4)", 4),
                                   parse_cycles("(1 3)(2 4)", 4)])
        Q, _ = quotient_group(E, v4)
        assert Q.order == 6
        assert Q.element_order_multiset() == (1, 2, 2, 2, 3, 3)

    def test_g_mod_g(self):
        E = ensure_enumerated(sym_group(3))
        whole = subgroup_from(E.ops, E.elements)
        Q, _ = quotient_group(E, whole)
        assert Q.order == 1

    def test_not_normal_rejected(self):
        E = ensure_enumerated(sym_group(3))
        H = subgroup_from(E.ops, [parse_cycles("(1 2)", 3)])
        with pytest.raises(ValueError):
            quotient_group(E, H)


class TestDecomposition:
    def test_sym5(self):
        dec = semisimple_decomposition(sym_group(5))
        assert len(dec.factors) == 1
        assert dec.fingerprints[0][0] == 60

    def test_a5_wr_c2(self):
        H = wreath_enum(alt_group(5), 2, sym_group(2))
        dec = semisimple_decomposition(H)
        assert len(dec.factors) == 2
        assert len(dec.isotypes) == 1

    def test_a5_x_psl27(self):
        H = direct_product(ensure_enumerated(alt_group(5)), psl2_group(7))
        dec = semisimple_decomposition(H)
        assert len(dec.factors) == 2
        assert len(dec.isotypes) == 2

    def test_not_semisimple_rejected(self):
        with pytest.raises(Unsupported):
            semisimple_decomposition(sym_group(4))


class TestPermutationPart:
    def test_a5_wr_c2(self):
        H = wreath_enum(alt_group(5), 2, sym_group(2))
        part = permutation_part(H)
        assert part.P.order == 2
        assert part.mpo == 2

    def test_a5_x_a5_trivial_part(self):
        H = ensure_enumerated(direct_product(alt_group(5), alt_group(5)))
        part = permutation_part(H)
        assert part.P.order == 1
        assert part.mpo == 1

    def test_bsgs_wreath_part(self):
        from groupword.structure import bsgs_permutation_part

        G = wreath_perm(alt_group(5), 5, alt_group(5))
        certify_semisimple_bsgs(G)
        P = bsgs_permutation_part(G)
        assert P.order == 60


class TestLambda:
    def test_solvable_zero(self):
        for G in [sym_group(4), dihedral_group(12), cyclic_group(30)]:
            assert nonsolvable_length(G).lam == 0

    def test_lambda_one(self):
        for G in [alt_group(5), sym_group(5), sl2_group(5), psl2_group(7),
                  direct_product(alt_group(5), alt_group(5))]:
            rep = nonsolvable_length(G)
            assert rep.lam == 1, rep

    def test_sym5_series(self):
        rep = nonsolvable_length(sym_group(5))
        lvl1 = rep.levels[0]
        assert (lvl1.g_order, lvl1.r_order, lvl1.h_order, lvl1.t_order) == (120, 1, 120, 60)
        lvl2 = rep.levels[1]
        assert lvl2.g_order == 2 and rep.lam == 1

    def test_a5_wr_a5_is_two(self):
        G = wreath_perm(alt_group(5), 5, alt_group(5))
        rep = nonsolvable_length(G)
        assert rep.lam == 2
        assert rep.engine == "bsgs"
        assert rep.levels[0].t_order == 60**5

    def test_engines_agree_on_wreath(self):
        enum_h = wreath_enum(alt_group(5), 2, sym_group(2))
        bsgs_h = wreath_perm(alt_group(5), 2, sym_group(2))
        a = nonsolvable_length(enum_h)
        b = nonsolvable_length(bsgs_h)
        assert a.lam == b.lam == 1
        assert a.engine == "enum" and b.engine == "bsgs"

    def test_engines_agree_small(self):
        for G in [sym_group(5), alt_group(5)]:
            auto = nonsolvable_length(G)
            forced = nonsolvable_length(G, engine="enum")
            assert auto.lam == forced.lam

    def test_telescoping(self):
        for G in [sym_group(5), sl2_group(5), sym_group(4)]:
            rep = nonsolvable_length(G, engine="enum")
            total = 1
            for lvl in rep.levels:
                total *= lvl.r_order * max(lvl.t_order, 1)
            E = ensure_enumerated(G)
            assert total == E.order

    def test_radical_index_bound(self):
        # [G : Rad(G)] >= 60^lambda(G)
        for G in [sym_group(4), sym_group(5), sl2_group(5),
                  direct_product(alt_group(5), alt_group(5))]:
            E = ensure_enumerated(G)
            lam = nonsolvable_length(E).lam
            assert E.order // solvable_radical(E).order >= 60**lam

    def test_unsupported_configuration(self):
        big = wreath_perm(alt_group(5), 5, alt_group(5))
        big_nometa = type(big)(big.degree, big.gens, name="stripped")
        with pytest.raises(Unsupported):
            nonsolvable_length(big_nometa)


class TestNu2:
    def test_examples(self):
        assert nu2_exponent(alt_group(5)) == 1  # exp = 30
        assert nu2_exponent(sl2_group(5)) == 2  # exp = 60
        assert nu2_exponent(cyclic_group(15)) == 0

    def test_bound_on_fixtures(self):
        for G in [alt_group(5), sym_group(5), sl2_group(5), psl2_group(7),
                  sym_group(4), cyclic_group(30)]:
            rep = check_lambda_nu2(G)
            assert rep["ok"], rep


class TestTransferPower:
    def test_a5_wr_c2(self):
        H = wreath_enum(alt_group(5), 2, sym_group(2))
        rep = transfer_check_power(H, 60, catalog=["alt:5"])
        assert rep["precondition_ok"]
        assert rep["exp_H"] == 60 and rep["exp_P"] == 2
        assert rep["lemma_ok"] and rep["refined_ok"] and rep["ok"]

    def test_a5_x_psl27_vacuous(self):
        H = direct_product(ensure_enumerated(alt_group(5)), psl2_group(7))
        rep = transfer_check_power(H, 420, catalog=["alt:5", "psl2:7"])
        assert rep["ok"] and rep["exp_P"] == 1

    def test_precondition_failure_reported(self):
        H = wreath_enum(alt_group(5), 2, sym_group(2))
        rep = transfer_check_power(H, 4)
        assert not rep["precondition_ok"] and not rep["ok"]

    def test_cycle_certificate_psl2_27(self):
        # a 3-cycle in the permutation part with e = 36 needs 36/3 = 12 witnessed bad
        from groupword.groups import generate_enumerated, PermOps
        from groupword.wordmap import bad_exponent_scan

        P = generate_enumerated(PermOps(3), [(1, 2, 0)])
        scan = bad_exponent_scan(36, ["psl2:27"])
        witnessed = set(scan["witnessed_bad"])
        assert 12 in witnessed
        rep = check_cycle_lengths(P, 36, witnessed)
        assert rep["ok"], rep


class TestSegmentTransfer:
    def test_trivial_part_conclusion_holds(self):
        H = ensure_enumerated(direct_product(alt_group(5), alt_group(5)))
        w = parse_word("x^30")
        rep = segment_transfer_check(H, w, 1, 2)
        # hypothesis enumeration for x^30 is far out of budget, but the
        # conclusion (on the trivial permutation part) holds regardless
        assert rep["status"] == "conclusion-holds-hypothesis-unchecked"
        assert rep["conclusion_ok"]
        assert rep["delta"] == "x1"

    def test_precondition_failure(self):
        H = wreath_enum(alt_group(5), 2, sym_group(2))
        rep = segment_transfer_check(H, parse_word("x^4"), 1, 2)
        assert rep["status"] == "precondition-failed"

    def test_nontrivial_part_conclusion_fails_is_inconclusive(self):
        # Delta_{1,2}(x^60) = x does not hold on P(H) = C2, and the hypothesis
        # is unchecked at this multiplicity, so the report must stay neutral.
        H = wreath_enum(alt_group(5), 2, sym_group(2))
        rep = segment_transfer_check(H, parse_word("x^60"), 1, 2)
        assert rep["status"] == "inconclusive"
        assert rep["conclusion_ok"] is False


class TestSplitVariationHypothesis:
    def test_multiplicity_shortcut(self):
        from groupword.structure import split_variation_hypothesis

        w = parse_word("x y x^-1 y^-1")
        rep = split_variation_hypothesis(w, 1, 3, ["alt:5"])
        assert rep["all_wmb"] and rep["by"] == "shared-multiplicity<=3"

    def test_enumerated_scan_path(self):
        from groupword.structure import split_variation_hypothesis

        w = parse_word("x y x y x y x y")  # both multiplicities 4
        rep = split_variation_hypothesis(w, 1, 3, ["alt:5"])
        assert rep["by"] == "enumeration"
        assert rep["count"] == len(rep["rows"])
        assert rep["all_wmb"]

    def test_cap(self):
        from groupword.errors import BudgetExceeded
        from groupword.structure import split_variation_hypothesis

        with pytest.raises(BudgetExceeded):
            split_variation_hypothesis(parse_word("x^30"), 1, 2, ["alt:5"])

    def test_counts_match_enumeration(self):
        from groupword.words import count_split_variations, split_variations

        for text, i, j in [("x^4", 1, 2), ("x y x y x y x y", 1, 3),
                           ("x^2 y^2", 1, 2)]:
            w = parse_word(text)
            assert count_split_variations(w, i, j) == len(split_variations(w, i, j))
