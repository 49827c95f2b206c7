import pytest

from conftest import discrete, hom_suite, parity, z4_mod2
from oracles import cgroup_axioms_hold, groups_isomorphic, mod_table
from ccrossed import groups
from ccrossed.cgroup import (
    CGroup, CGroupHom, check_c_isomorphism, compose, find_group_isomorphism, group_profile,
    identity_hom, iter_homs, kernel_image, quotient_by_normal, quotient_by_relation,
    search_c_isomorphism, subcgroup, subgroup_profile, universal_factorization, validate_cgroup,
    validate_hom,
)
from ccrossed.report import ConstructionError, SearchNotAttempted
from ccrossed.setoid import FiniteSetoid

Z4 = ["0", "1", "2", "3"]
Z4_NEG = {"0": "0", "1": "3", "2": "2", "3": "1"}
MOD2 = [["0", "2"], ["1", "3"]]


def mutants():
    base = mod_table(4)
    for cell, value in base.items():
        for w in Z4:
            if w != value:
                table = dict(base)
                table[cell] = w
                yield cell, w, table


# -------------------------------------------------------------- validation

def test_mac_lane_fixture_passes():
    G = z4_mod2()
    assert G.carrier.blocks == (("0", "2"), ("1", "3"))
    assert validate_cgroup(G).passed


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "S3", "V4", "1"])
def test_exact_groups_are_cgroups(name):
    assert validate_cgroup(discrete(name)).passed


@pytest.mark.parametrize("partition,expected_failures", [
    ([[a] for a in Z4], 48),
    (MOD2, 32),
])
def test_single_cell_mutations_match_oracle(partition, expected_failures):
    failures = 0
    for cell, w, table in mutants():
        G = CGroup(FiniteSetoid(Z4, partition), table, "0", Z4_NEG)
        verdict = validate_cgroup(G).passed
        assert verdict == cgroup_axioms_hold(Z4, partition, table, "0", Z4_NEG), (cell, w)
        failures += not verdict
    assert failures == expected_failures


def test_mutation_failure_carries_witness():
    table = mod_table(4)
    table["1", "1"] = "3"
    rep = validate_cgroup(CGroup(FiniteSetoid.discrete(Z4), table, "0", Z4_NEG))
    assert not rep.passed
    assert all(c.witness for c in rep.failures())


def test_incompatible_relation_detected():
    # {0,1} {2,3} is not compatible with addition mod 4
    G = CGroup(FiniteSetoid(Z4, [["0", "1"], ["2", "3"]]), mod_table(4), "0", Z4_NEG)
    rep = validate_cgroup(G)
    assert not rep.get("cgroup.compatibility").passed


# -------------------------------------------------------------- morphisms

def test_hom_examples():
    assert validate_hom(identity_hom(discrete("S3"))).passed
    assert validate_hom(parity(z4_mod2())).passed
    Z2 = discrete("Z2")
    const = CGroupHom(Z2, Z2, {"0": "1", "1": "1"})
    assert not validate_hom(const).passed


def test_kernel_image_examples():
    assert kernel_image(parity(z4_mod2())) == (("0", "2"), ("0", "1"))
    assert kernel_image(identity_hom(discrete("Z2"))) == (("0",), ("0", "1"))
    G, H = z4_mod2(), discrete("Z3")
    zero = CGroupHom(G, H, {a: "0" for a in G.elements})
    assert kernel_image(zero) == (tuple(Z4), ("0",))


def test_subgroup_profile_examples():
    prof = subgroup_profile(discrete("Z4"), ["0", "2"])
    assert prof.normal and prof.perfect and prof.c_subgroup
    prof = subgroup_profile(z4_mod2(), ["0"])
    assert not prof.perfect
    assert prof.witnesses["perfect"] == ("2",)
    # A2 = {id, (01)} is not normal in S3
    prof = subgroup_profile(discrete("S3"), ["012", "102"])
    assert prof.c_subgroup and not prof.normal


def test_group_profile_examples():
    one_block = CGroup(FiniteSetoid.indiscrete(Z4), mod_table(4), "0", Z4_NEG)
    assert group_profile(one_block).connected
    prof = group_profile(z4_mod2())
    assert not prof.connected and prof.c_abelian
    prof = group_profile(discrete("S3"))
    assert not prof.c_abelian
    a, b = prof.witnesses["c_abelian"]
    S3 = discrete("S3")
    assert S3.add[a, b] != S3.add[b, a]


def test_subcgroup_rejects_non_closed():
    with pytest.raises(ConstructionError):
        subcgroup(discrete("Z4"), ["0", "1"])


# -------------------------------------------------------------- quotients

def test_quotient_by_relation_examples():
    Q, p = quotient_by_relation(z4_mod2())
    assert len(Q) == 2
    Z2 = groups.cyclic(2)
    assert groups_isomorphic(list(Q.elements), Q.add, list(Z2.elements), Z2.add)
    assert find_group_isomorphism(Q, Z2) is not None
    Q, _ = quotient_by_relation(discrete("S3"))
    assert len(Q) == 6
    Q, _ = quotient_by_relation(CGroup(FiniteSetoid.indiscrete(Z4), mod_table(4), "0", Z4_NEG))
    assert len(Q) == 1


def test_quotient_by_normal_examples():
    # saturated cosets of {0,2} under mod-2 blocks are {0,2} and {1,3}
    Q, p = quotient_by_normal(z4_mod2(), ["0", "2"])
    assert len(Q) == 2
    assert [p(a) for a in Z4] == ["[0]", "[1]", "[0]", "[1]"]
    Q, _ = quotient_by_normal(CGroup(FiniteSetoid.indiscrete(Z4), mod_table(4), "0", Z4_NEG), ["0"])
    assert len(Q) == 1
    Q, p = quotient_by_normal(discrete("Z4"), ["0", "2"])
    assert len(Q) == 2 and find_group_isomorphism(Q, groups.cyclic(2)) is not None
    assert {p(a) for a in Z4} == set(p.target.elements)
    assert all(p(h) == p.target.zero for h in ["0", "2"])
    Q, _ = quotient_by_normal(discrete("Z4"), ["0"])
    assert len(Q) == 4


def test_quotient_by_normal_rejects_non_normal():
    with pytest.raises(ConstructionError):
        quotient_by_normal(discrete("S3"), ["012", "102"])


def test_universal_factorization_examples():
    G = discrete("Z4")
    th = universal_factorization(parity(G), ["0", "2"])
    assert sorted(th.table.values()) == ["0", "1"]
    assert len(set(th.table.values())) == 2  # a bijection onto Z2
    zero = CGroupHom(G, discrete("Z3"), {a: "0" for a in Z4})
    th = universal_factorization(zero, ["0", "2"])
    assert set(th.table.values()) == {"0"}
    _, p = quotient_by_normal(G, ["0", "2"])
    assert kernel_image(p)[0] == ("0", "2")


def test_universal_factorization_requires_vanishing():
    with pytest.raises(ConstructionError):
        universal_factorization(parity(discrete("Z4")), ["0", "1", "2", "3"])


# -------------------------------------------------------------- isomorphisms

def test_c_isomorphism_composites():
    G, Z2 = z4_mod2(), discrete("Z2")
    f = parity(G)
    f2 = CGroupHom(Z2, G, {"0": "0", "1": "1"})
    assert check_c_isomorphism(f, f2)
    # ...but the section is not additive: 1+1 = 0 in Z2, 1+1 = 2 in Z4
    assert validate_hom(f2).failures()[0].witness == ("1", "1")
    # every additive Z2 -> Z4 lands in {0,2}, so no c-isomorphism exists
    assert search_c_isomorphism(G, Z2) is None


def test_c_isomorphism_found():
    one_block = CGroup(FiniteSetoid.indiscrete(["0", "1"]), mod_table(2), "0", {"0": "0", "1": "1"})
    found = search_c_isomorphism(one_block, discrete("1"))
    assert found is not None
    assert check_c_isomorphism(*found)
    S3 = discrete("S3")
    f, f2 = search_c_isomorphism(S3, S3)
    assert check_c_isomorphism(f, f2)


def test_search_absence_and_cap():
    assert search_c_isomorphism(discrete("Z2"), discrete("Z3")) is None
    big = groups.direct_product(groups.cyclic(4), groups.cyclic(4)).as_cgroup()
    with pytest.raises(SearchNotAttempted):
        search_c_isomorphism(big, big)


def test_iter_homs_counts():
    # Hom(Z4, Z4) = 4, Hom(Z4, Z2) = 2, Hom(S3, Z2) = 2, Aut(S3) = 6
    assert len(list(iter_homs(discrete("Z4"), discrete("Z4")))) == 4
    assert len(list(iter_homs(discrete("Z4"), discrete("Z2")))) == 2
    assert len(list(iter_homs(discrete("S3"), discrete("Z2")))) == 2
    assert len(list(iter_homs(discrete("S3"), discrete("S3"), bijective=True))) == 6


def test_compose():
    G = z4_mod2()
    f = parity(G)
    assert compose(f, identity_hom(G)).table == f.table


# -------------------------------------------------------------- kernel and image of certified homs

def test_kernel_is_perfect_normal_and_image_perfect():
    suite = hom_suite()
    assert len(suite) >= 20
    for f in suite:
        assert validate_hom(f).passed
        ker, im = kernel_image(f)
        prof = subgroup_profile(f.source, ker)
        assert prof.perfect_normal, (f.table, prof.witnesses)
        assert subgroup_profile(f.target, im).perfect, f.table
