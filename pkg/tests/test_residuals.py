import pytest

from residua.group import prime_divisors
from residua.residuals import (
    ABELIAN,
    ALL_GROUPS,
    NILPOTENT,
    SUPERSOLUBLE,
    FormationSpec,
    membership,
    p_nilpotent,
    p_supersoluble,
    parse_formation,
    residual,
    residual_of,
)
from residua.subgroups import (
    derived_subgroup,
    generated_subgroup,
    is_normal,
    join,
    normal_subgroups,
    quotient_group,
    trivial_subgroup,
)
from residua.group import parse_permutation

NA = FormationSpec.product(NILPOTENT, ABELIAN)


def sub(G, *cycles):
    return generated_subgroup(G, [G.index(parse_permutation(c, G.degree)) for c in cycles])


class TestFormationSpec:
    @pytest.mark.parametrize("text", ["A", "N", "U", "E", "pU:3", "pN:2", "N*A", "pN:5*A", "N*A*U"])
    def test_round_trip(self, text):
        assert str(parse_formation(text)) == text

    @pytest.mark.parametrize("text", ["X", "pU:4", "pN:", "pU:x", "*A", ""])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_formation(text)

    def test_composite_structure(self):
        F = parse_formation("N*A")
        assert F.left == NILPOTENT and F.right == ABELIAN


class TestMembership:
    def test_abelian_nilpotent(self, groups):
        assert membership(groups("C12"), NILPOTENT)

    def test_a4(self, groups):
        A4 = groups("A4")
        assert not membership(A4, SUPERSOLUBLE)
        assert membership(A4, NA)

    def test_s3_in_na(self, groups):
        assert membership(groups("S3"), NA)

    def test_s4_not_in_na(self, groups):
        assert not membership(groups("S4"), NA)

    def test_trivial_group_everywhere(self, groups):
        C1 = groups("C1")
        for F in [ABELIAN, NILPOTENT, SUPERSOLUBLE, ALL_GROUPS, p_supersoluble(2), p_nilpotent(3), NA]:
            assert membership(C1, F)

    @pytest.mark.parametrize("name", ["S4", "D12", "Q8", "C2 x A4", "S3 x S3"])
    def test_quotient_closed(self, groups, name):
        G = groups(name)
        classes = [ABELIAN, NILPOTENT, SUPERSOLUBLE, NA] + [
            k(p) for p in prime_divisors(G.order) for k in (p_supersoluble, p_nilpotent)
        ]
        for F in classes:
            if membership(G, F):
                for N in normal_subgroups(G):
                    assert membership(quotient_group(G, N).target, F), (F, N.order)


class TestNormalSubgroups:
    def test_s3(self, groups):
        assert [N.order for N in normal_subgroups(groups("S3"))] == [1, 3, 6]

    def test_s4(self, groups):
        assert [N.order for N in normal_subgroups(groups("S4"))] == [1, 4, 12, 24]

    def test_abelian_all(self, groups):
        from residua.factorization import all_subgroups

        G = groups("C2 x C2 x C3")
        assert normal_subgroups(G) == all_subgroups(G)

    @pytest.mark.parametrize("name", ["S4", "D8", "Q8", "S3 x S3", "C2 x A4"])
    def test_matches_filtered_lattice(self, groups, name):
        from residua.factorization import all_subgroups
        from oracles import is_normal_brute

        G = groups(name)
        expected = [H for H in all_subgroups(G) if is_normal_brute(G, H.members)]
        assert normal_subgroups(G) == expected


class TestResidual:
    def test_member_gives_trivial(self, groups):
        assert residual(groups("S3"), SUPERSOLUBLE).is_trivial

    def test_a4(self, groups):
        A4 = groups("A4")
        V4 = sub(A4, "(1 2)(3 4)", "(1 3)(2 4)")
        assert residual(A4, SUPERSOLUBLE) == V4
        assert residual(A4, NILPOTENT) == V4

    def test_s3_abelian(self, groups):
        S3 = groups("S3")
        C3 = sub(S3, "(1 2 3)")
        assert residual(S3, ABELIAN) == C3 == residual(S3, ABELIAN, method="generic")

    def test_s4(self, groups):
        S4 = groups("S4")
        assert residual(S4, SUPERSOLUBLE) == sub(S4, "(1 2)(3 4)", "(1 3)(2 4)")

    def test_all_groups_class(self, groups):
        assert residual(groups("S4"), ALL_GROUPS).is_trivial
        assert residual(groups("S4"), ALL_GROUPS, method="generic").is_trivial

    def test_composite_na_s4(self, groups):
        S4 = groups("S4")
        assert residual(S4, NA).order == 4 == residual(S4, NA, method="generic").order

    def test_bad_method(self, groups):
        with pytest.raises(ValueError):
            residual(groups("S3"), ABELIAN, method="fast")

    def test_fast_paths_agree(self, catalog):
        for entry in catalog:
            G = entry.group
            for F in (ABELIAN, NILPOTENT, NA):
                assert residual(G, F) == residual(G, F, method="generic"), (entry.name, F)

    def test_residual_is_normal_and_admissible(self, catalog):
        for entry in catalog[::3]:
            G = entry.group
            for F in (SUPERSOLUBLE, p_supersoluble(2), p_nilpotent(3)):
                R = residual(G, F)
                assert is_normal(G, R)
                assert membership(quotient_group(G, R).target, F)


def test_lemma2_quotient_rule(small_catalog):
    for entry in small_catalog[::2]:
        G = entry.group
        classes = [ABELIAN, NILPOTENT, SUPERSOLUBLE] + [p_nilpotent(p) for p in prime_divisors(G.order)]
        for K in normal_subgroups(G):
            q = quotient_group(G, K)
            for F in classes:
                assert q.push(residual(G, F)) == residual(q.target, F)


def test_lemma2_composite_and_containment(small_catalog):
    for entry in small_catalog:
        G = entry.group
        D = derived_subgroup(G)
        assert residual(G, NA, method="generic") == residual_of(D, NILPOTENT)
        assert residual(G, NA) <= residual(G, SUPERSOLUBLE)
        for p in prime_divisors(G.order):
            comp = FormationSpec.product(p_nilpotent(p), ABELIAN)
            assert residual(G, comp, method="generic") == residual_of(D, p_nilpotent(p))
            assert residual(G, p_supersoluble(p)) <= residual(G, p_nilpotent(p))


def test_lemma5_normal_products(small_catalog):
    from residua.factorization import is_product

    for entry in small_catalog:
        G = entry.group
        normals = normal_subgroups(G)
        for A in normals:
            for B in normals:
                if not is_product(G, A, B):
                    continue
                for X in [NILPOTENT] + [p_nilpotent(p) for p in prime_divisors(G.order)]:
                    assert residual(G, X) == join(residual_of(A, X), residual_of(B, X))


def test_residual_of_trivial(groups):
    G = groups("S4")
    assert residual_of(trivial_subgroup(G), SUPERSOLUBLE).is_trivial
