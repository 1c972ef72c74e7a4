import itertools

import pytest

from brnr.catalog import (
    abelian,
    alternating,
    cyclic,
    dihedral,
    heisenberg,
    quaternion,
    symmetric,
    trivial_group,
)
from brnr.errors import (
    InvalidPermutation,
    NoIdentity,
    NoInverse,
    NotAssociative,
    OrderCapExceeded,
)
from brnr.groups import (
    abelianization,
    all_subgroups,
    center,
    centralizer,
    commutator_subgroup,
    from_cayley_table,
    from_permutation_text,
    from_permutations,
    generated_subgroup,
    group_from_json,
    group_to_json,
    induced_abelianized_map,
    is_abelian_subset,
    maximal_subgroup_family,
    subgroup_as_group,
    sylow_subgroup,
)


def brute_s3():
    """S_3 built by brute-force composition of all 6 permutations."""
    perms = sorted(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [
        [idx[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms
    ]
    return table


class TestConstruction:
    def test_trivial(self):
        g = from_cayley_table([[0]])
        assert g.order == 1
        assert g.inv == (0,)

    def test_z2(self):
        g = from_cayley_table([[0, 1], [1, 0]])
        assert g.order == 2
        assert g.inv == (0, 1)

    def test_s3_from_brute_force_table(self):
        g = from_cayley_table(brute_s3())
        assert g.order == 6
        assert not g.is_abelian()

    def test_identity_relabeled_to_zero(self):
        # C3 with identity at position 2
        relabel = [2, 0, 1]  # old -> new chosen so that new identity is at 2
        base = cyclic(3).table
        table = [[0] * 3 for _ in range(3)]
        for a in range(3):
            for b in range(3):
                table[relabel[a]][relabel[b]] = relabel[base[a][b]]
        g = from_cayley_table(table)
        assert all(g.table[0][x] == x == g.table[x][0] for x in range(3))

    def test_no_identity(self):
        with pytest.raises(NoIdentity):
            from_cayley_table([[0, 0], [0, 0]])

    def test_not_associative_names_triple(self):
        # a "random" latin square with identity that is not a group
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(NotAssociative) as exc:
            from_cayley_table(table)
        assert len(exc.value.triple) == 3

    def test_json_round_trip(self):
        g = dihedral(4)
        g2 = group_from_json(group_to_json(g))
        assert g2.table == g.table


class TestPermutations:
    def test_cyclic_from_cycle(self):
        g = from_permutations([(1, 2, 0)], 3)
        assert g.order == 3

    def test_s3_from_generators(self):
        g = from_permutations([(1, 0, 2), (1, 2, 0)], 3)
        assert g.order == 6
        assert sorted(g.element_order(x) for x in range(6)) == [1, 2, 2, 2, 3, 3]

    def test_a5_closure_count(self):
        g = from_permutations([(1, 2, 3, 4, 0), (0, 1, 3, 4, 2)], 5)
        assert g.order == 60

    def test_cap(self):
        with pytest.raises(OrderCapExceeded):
            from_permutations([(1, 2, 3, 4, 0), (0, 1, 3, 4, 2)], 5, cap=30)

    def test_invalid(self):
        with pytest.raises(InvalidPermutation):
            from_permutations([(0, 0, 1)], 3)

    def test_text_parsing(self):
        g = from_permutation_text("(1 2)\n(1 2 3)\n")
        assert g.order == 6
        g2 = from_permutation_text("(1 2 3)(4 5)")
        assert g2.order == 6


class TestElementOrders:
    def test_identity_order(self):
        assert cyclic(6).element_order(0) == 1

    def test_generator_of_z6(self):
        assert cyclic(6).element_order(1) == 6

    def test_transposition_in_s3(self):
        g = from_cayley_table(brute_s3())
        orders = sorted(g.element_order(x) for x in range(6))
        assert orders == [1, 2, 2, 2, 3, 3]

    def test_exponents(self):
        assert trivial_group().exponent() == 1
        assert symmetric(3).exponent() == 6
        assert quaternion(2).exponent() == 4


class TestSubgroups:
    def test_generated_subgroup_closure(self):
        g = symmetric(4)
        for gens in [(1,), (1, 2), (5,)]:
            elems = generated_subgroup(g, gens)
            sub = set(elems)
            assert 0 in sub
            for x in elems:
                assert g.inv[x] in sub
                for y in elems:
                    assert g.table[x][y] in sub

    def test_centralizer_of_identity(self):
        g = symmetric(3)
        assert centralizer(g, [0]).elements == tuple(range(6))

    def test_center_q8(self):
        assert len(center(quaternion(2))) == 2

    def test_center_abelian(self):
        g = abelian([2, 4])
        assert center(g).elements == tuple(range(8))

    def test_commutator_s3(self):
        g = symmetric(3)
        der = commutator_subgroup(g)
        assert len(der) == 3

    def test_commutator_a5_is_everything(self):
        g = alternating(5)
        assert len(commutator_subgroup(g)) == 60

    def test_sylow_trivial_when_coprime(self):
        assert sylow_subgroup(symmetric(3), 5).elements == (0,)

    def test_sylow_s3(self):
        s = sylow_subgroup(symmetric(3), 3)
        assert len(s) == 3
        g = symmetric(3)
        assert is_abelian_subset(g, s.elements)

    def test_sylow_s4_nonabelian(self):
        g = symmetric(4)
        s = sylow_subgroup(g, 2)
        assert len(s) == 8
        assert not is_abelian_subset(g, s.elements)


class TestAbelianization:
    def test_abelian_group_is_itself(self):
        g = abelian([2, 4])
        ab = abelianization(g)
        assert ab.factors == [2, 4]

    def test_s3(self):
        ab = abelianization(symmetric(3))
        assert ab.factors == [2]

    def test_a5_trivial(self):
        ab = abelianization(alternating(5))
        assert ab.factors == []

    def test_projection_is_a_homomorphism(self):
        g = symmetric(4)
        ab = abelianization(g)
        for x in range(0, g.order, 5):
            for y in range(0, g.order, 7):
                xy = g.table[x][y]
                lhs = ab.project(xy)
                rhs = tuple(
                    (a + b) % d
                    for a, b, d in zip(ab.project(x), ab.project(y), ab.factors)
                )
                assert lhs == rhs

    def test_order_identity(self):
        for g in (symmetric(3), symmetric(4), quaternion(2), alternating(4)):
            ab = abelianization(g)
            der = commutator_subgroup(g)
            assert ab.order() * len(der) == g.order

    def test_induced_map_z2_in_z4(self):
        g = cyclic(4)
        sub, elems = subgroup_as_group(g, generated_subgroup(g, [2]))
        rows = induced_abelianized_map(abelianization(sub), abelianization(g), elems)
        assert rows == [[2]]


class TestFamilies:
    def test_abelian_group_family_is_itself(self):
        g = abelian([2, 4])
        fam = maximal_subgroup_family(g, "abelian")
        assert len(fam.members) == 1
        assert fam.members[0].elements == tuple(range(8))

    def test_q8_cyclic_family(self):
        fam = maximal_subgroup_family(quaternion(2), "cyclic")
        assert len(fam.members) == 3
        assert all(len(m) == 4 for m in fam.members)

    def test_s3_abelian_family(self):
        fam = maximal_subgroup_family(symmetric(3), "abelian")
        sizes = sorted(len(m) for m in fam.members)
        assert sizes == [2, 3]
        assert fam.reduction_log  # something was dropped

    def test_self_centralizing(self):
        for g in (symmetric(4), quaternion(2), dihedral(4)):
            fam = maximal_subgroup_family(g, "abelian")
            for m in fam.members:
                assert centralizer(g, m.elements).elements == m.elements

    def test_conjugates_have_equal_order_multisets(self):
        g = symmetric(4)
        for kind in ("cyclic", "bicyclic", "abelian"):
            fam = maximal_subgroup_family(g, kind)
            for m in fam.members:
                base = sorted(g.element_order(x) for x in m.elements)
                for c in range(g.order):
                    conj = [g.conj(c, x) for x in m.elements]
                    assert sorted(g.element_order(x) for x in conj) == base

    @pytest.mark.parametrize("kind", ["cyclic", "bicyclic", "abelian"])
    @pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "S4", "C2xC6"])
    def test_family_soundness_exhaustive(self, kind, name):
        """Every subgroup of the kind embeds in a conjugate of a member."""
        from brnr.catalog import group_by_name

        g = group_by_name(name)
        fam = maximal_subgroup_family(g, kind)
        conjugate_closure = set()
        for m in fam.members:
            for c in range(g.order):
                conjugate_closure.add(
                    tuple(sorted(g.conj(c, x) for x in m.elements))
                )
        for sub in all_subgroups(g):
            sset = set(sub)
            if kind == "cyclic":
                ok_kind = any(
                    set(generated_subgroup(g, [x])) == sset for x in sub
                )
            elif kind == "bicyclic":
                ok_kind = is_abelian_subset(g, sub) and any(
                    set(generated_subgroup(g, [x, y])) == sset
                    for x in sub
                    for y in sub
                )
            else:
                ok_kind = is_abelian_subset(g, sub)
            if not ok_kind:
                continue
            assert any(
                sset <= set(big) for big in conjugate_closure
            ), f"{kind} subgroup {sub} not covered"


class TestCatalog:
    def test_every_entry_fingerprint(self):
        from brnr.catalog import catalog

        for name, entry in catalog().items():
            if entry.expected_order > 150:
                continue
            assert entry.verify_fingerprint(), name

    def test_group_by_name_products(self):
        from brnr.catalog import group_by_name

        g = group_by_name("C2xC2xC2")
        assert g.order == 8
        assert abelianization(g).factors == [2, 2, 2]

    def test_unknown_name(self):
        from brnr.catalog import group_by_name

        with pytest.raises(KeyError):
            group_by_name("E8")
