"""Closed-subset enumeration, ideals, normality, conjugacy and single-table Smarandache verdicts."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from magmakit.catalog import (
    alternating,
    cyclic,
    ln_loop,
    symmetric_group,
    zn_class_enumerate,
    zn_groupoid,
    zn_mul,
)
from magmakit.errors import CapExceeded, NotAGroup, OverlapViolation
from magmakit.magma import Magma, classify
from magmakit.substructure import (
    conjugacy,
    conjugate_pairs,
    enumerate_submagmas,
    ideals,
    is_normal,
    is_simple,
    normal_substructures,
    s_analysis,
)

from strategies import groups, latin_magmas, magmas

# --------------------------------------------------------------------------- oracles


def brute_closed_subsets(m: Magma) -> list[tuple[int, ...]]:
    t = m.table.tolist()
    out = []
    for r in range(1, m.n + 1):
        for s in itertools.combinations(range(m.n), r):
            ss = set(s)
            if all(t[a][b] in ss for a in s for b in s):
                out.append(s)
    return out


def induced_label(m: Magma, subset) -> str:
    return classify(m.restrict(subset)).label


def names(m, subs):
    return {tuple(s.names()) for s in subs}


# --------------------------------------------------------------------------- enumeration


def test_s3_has_six_subgroups():
    subs = enumerate_submagmas(symmetric_group(3), "subgroup")
    assert sorted(s.size for s in subs) == [1, 2, 2, 2, 3, 6]


def test_l52_has_seven_subloops():
    subs = enumerate_submagmas(ln_loop(5, 2), "subloop")
    assert sorted(s.size for s in subs) == [1, 2, 2, 2, 2, 2, 6]


def test_trivial_magma_has_one_closed_subset():
    assert len(enumerate_submagmas(Magma(["e"], [[0]]))) == 1


def test_z6_1_3_semigroups_include_the_three_pairs():
    found = names(zn_groupoid(6, 1, 3, "Z"), enumerate_submagmas(zn_groupoid(6, 1, 3, "Z"), "subsemigroup"))
    assert {("0", "3"), ("1", "4"), ("2", "5")} <= found


def test_local_identity_subgroup_in_z15_multiplication():
    m = zn_mul(15)
    subs = {tuple(s.names()): s for s in enumerate_submagmas(m, "subgroup")}
    g = subs[("3", "6", "9", "12")]
    assert m.elements[g.local_identity] == "6"


def test_enumeration_order_is_size_then_ids():
    subs = enumerate_submagmas(zn_mul(8))
    keys = [(s.size, s.subset) for s in subs]
    assert keys == sorted(keys)


def test_exhaustive_cap_raises_with_guidance(monkeypatch):
    monkeypatch.setenv("MAGMA_MAX_EXHAUSTIVE", "4")
    with pytest.raises(CapExceeded, match="gen:K"):
        enumerate_submagmas(cyclic(6))


def test_generated_mode_flags_incompleteness():
    subs = enumerate_submagmas(symmetric_group(3), None, "gen:1")
    assert not subs.complete
    assert {s.size for s in subs} == {1, 2, 3}
    full = enumerate_submagmas(symmetric_group(3), None, "gen:2")
    assert len(full) == len(enumerate_submagmas(symmetric_group(3)))


def test_unknown_kind_filter():
    with pytest.raises(ValueError):
        enumerate_submagmas(cyclic(3), "subfield")


@given(st.one_of(magmas(max_n=5), latin_magmas(max_n=6), groups()))
def test_enumeration_matches_brute_force(m):
    assert [s.subset for s in enumerate_submagmas(m)] == sorted(brute_closed_subsets(m), key=lambda s: (len(s), s))


@pytest.mark.invariant
@given(st.one_of(magmas(max_n=5), latin_magmas(max_n=6), groups()))
def test_every_submagma_reproduces_its_kind_from_scratch(m):
    for s in enumerate_submagmas(m):
        rebuilt = Magma(m.names(s.subset), [[s.subset.index(int(m.table[a, b])) for b in s.subset] for a in s.subset])
        k = classify(rebuilt)
        assert k == s.kind
        assert ("subgroup" in s.roles) == (k.label == "group")
        assert ("subloop" in s.roles) == k.is_loop
        assert ("subsemigroup" in s.roles) == k.associative
        assert s.proper == (s.size < m.n)


# --------------------------------------------------------------------------- ideals


def brute_ideal(m: Magma, ids, side: str) -> bool:
    t = m.table.tolist()
    s = set(ids)
    left = all(t[x][a] in s for x in range(m.n) for a in s)
    right = all(t[a][x] in s for x in range(m.n) for a in s)
    return {"left": left, "right": right, "two_sided": left and right}[side]


@pytest.mark.parametrize("n", range(3, 13))
def test_zero_is_never_a_two_sided_ideal(n):
    for t, u, m in zn_class_enumerate(n, "Z"):
        assert (0,) not in {s.subset for s in ideals(m, "two_sided")}
        assert not brute_ideal(m, [0], "two_sided")


def test_z6_2_4_has_subgroupoid_of_order_3():
    m = zn_groupoid(6, 2, 4, "Zstar")
    assert (0, 2, 4) in {s.subset for s in enumerate_submagmas(m)}


def test_left_ideals_of_z5_2_3_are_right_ideals_of_z5_3_2():
    a = {s.subset for s in ideals(zn_groupoid(5, 2, 3, "Z"), "left")}
    b = {s.subset for s in ideals(zn_groupoid(5, 3, 2, "Z"), "right")}
    assert a == b


@given(magmas(max_n=5), st.sampled_from(["left", "right", "two_sided"]))
def test_ideals_match_brute_force(m, side):
    expected = {s for s in brute_closed_subsets(m) if len(s) < m.n and brute_ideal(m, s, side)}
    assert {s.subset for s in ideals(m, side)} == expected


@pytest.mark.invariant
@pytest.mark.parametrize("n", range(3, 11))
def test_zn_subgroupoid_of_order_n_over_t(n):
    hits = 0
    for t, u, m in zn_class_enumerate(n, "Zstar"):
        if t + u == n and math.gcd(t, u) == t and n % t == 0:
            hits += 1
            assert n // t in {s.size for s in enumerate_submagmas(m)}, (n, t, u)
    assert n < 4 or n % 2 == 1 or hits >= 1


@pytest.mark.invariant
@pytest.mark.parametrize("n", range(3, 11))
def test_left_right_ideal_duality(n):
    for t, u, m in zn_class_enumerate(n, "Z"):
        dual = zn_groupoid(n, u, t, "Z")
        assert {s.subset for s in ideals(m, "left")} == {s.subset for s in ideals(dual, "right")}
        assert {s.subset for s in ideals(m, "right")} == {s.subset for s in ideals(dual, "left")}


# --------------------------------------------------------------------------- normality


def test_a3_is_normal_in_s3():
    s3 = symmetric_group(3)
    assert is_normal(s3, s3.ids(["123", "231", "312"]), "subgroup")
    assert not is_normal(s3, s3.ids(["123", "213"]), "subgroup")


@given(groups())
def test_whole_and_identity_are_normal(g):
    e = classify(g).identity
    assert is_normal(g, [e], "subgroup") and is_normal(g, range(g.n), "subgroup")


@given(groups())
def test_normal_subgroups_match_conjugation_oracle(g):
    from magmakit.identities import inverse_map

    inv = inverse_map(g)
    t = g.table
    for s in enumerate_submagmas(g, "subgroup"):
        conj_closed = all(t[t[x, h], inv[x]] in s.subset for x in range(g.n) for h in s.subset)
        assert is_normal(g, s.subset, "subgroup") == conj_closed


def test_a4_klein_is_the_only_proper_nontrivial_normal_subgroup():
    a4 = alternating(4)
    normals = [s.size for s in normal_substructures(a4, "subgroup")]
    assert sorted(normals) == [1, 4, 12]
    assert not is_simple(a4, "subgroup")


def test_normal_subgroups_need_group_parent():
    with pytest.raises(NotAGroup):
        normal_substructures(zn_mul(5), "subgroup")


# --------------------------------------------------------------------------- conjugacy


def test_order_two_subgroups_of_s3_are_conjugate():
    s3 = symmetric_group(3)
    subs = [s for s in enumerate_submagmas(s3, "subgroup") if s.size == 2]
    for a, b in itertools.combinations(subs, 2):
        v = conjugacy(s3, a, b)
        assert v.conjugate
        g = v.witness
        from magmakit.identities import inverse_map

        inv = inverse_map(s3)
        assert {int(s3.table[s3.table[g, k], inv[g]]) for k in b.subset} == set(a.subset)


@given(groups())
def test_subgroup_conjugate_to_itself(g):
    for s in enumerate_submagmas(g, "subgroup"):
        assert conjugacy(g, s, s).conjugate


def test_groupoid_conjugacy_requires_disjointness():
    m = zn_groupoid(6, 1, 3, "Z")
    with pytest.raises(OverlapViolation):
        conjugacy(m, [0, 3], [0, 3], "groupoid")


def test_conjugate_element_pairs_in_z8_2_6_satisfy_equations():
    m = zn_groupoid(8, 2, 6, "Zstar")
    t = m.table
    pairs = conjugate_pairs(m)
    assert pairs
    for a, b, x, y in pairs:
        assert a == t[b, x] or a == t[x, b]
        assert b == t[a, y] or b == t[y, a]


# --------------------------------------------------------------------------- Smarandache verdicts


@pytest.mark.parametrize("p", [3, 5, 7])
def test_zp_multiplication_is_s_semigroup_and_s_simple(p):
    sa = s_analysis(zn_mul(p))
    assert sa["s_semigroup"].verdict and sa["s_simple"].verdict
    assert tuple(range(1, p)) in {w.subset for w in sa["s_semigroup"].witnesses}


def test_z6_1_3_is_s_groupoid_with_the_three_pair_witnesses():
    sa = s_analysis(zn_groupoid(6, 1, 3, "Z"))
    assert sa["s_groupoid"].verdict
    assert {(0, 3), (1, 4), (2, 5)} <= {w.subset for w in sa["s_groupoid"].witnesses}


def test_zp_additive_has_only_the_trivial_proper_subgroup():
    sa = s_analysis(cyclic(5))
    assert not sa["s_semigroup"].verdict and sa["s_semigroup"].permissive


def test_l52_is_s_loop():
    sa = s_analysis(ln_loop(5, 2))
    assert sa["s_loop"].verdict and all(w.size == 2 for w in sa["s_loop"].witnesses)


def test_full_transformation_3_is_weakly_commutative_only():
    from magmakit.catalog import full_transformation

    sa = s_analysis(full_transformation(3))
    assert sa["s_weakly_commutative"].verdict and not sa["s_commutative"].verdict
    assert sa["s_weakly_cyclic"].verdict and not sa["s_cyclic"].verdict


def test_z15_multiplication_hyper_subsemigroups_strictly_contain_the_largest_subgroup():
    sa = s_analysis(zn_mul(15))
    for h in sa.hyper_subsemigroups:
        assert any(set(g.subset) < set(h.subset) for g in sa.largest_subgroups)


STRUCTURES = [zn_mul(k) for k in range(2, 13)] + [zn_groupoid(n, t, u, "Zzero") for n in (4, 6) for t in range(n) for u in range(n)]


@given(st.sampled_from(STRUCTURES))
def test_verdict_true_implies_recheckable_witness(m):
    sa = s_analysis(m)
    for v in sa.as_list():
        if v.verdict and v.name not in ("s_simple",):
            assert v.witnesses, v.name
        for w in v.witnesses:
            assert m.is_closed(w.subset) and w.size < m.n


@pytest.mark.invariant
@pytest.mark.parametrize("index", range(len(STRUCTURES)))
def test_s_normal_implies_s_semi_normal(index):
    sa = s_analysis(STRUCTURES[index])
    normal = {w.subset for w in sa["s_normal_groupoid"].witnesses}
    semi = {w.subset for w in sa["s_semi_normal_groupoid"].witnesses}
    assert normal <= semi


@pytest.mark.invariant
@given(st.one_of(st.sampled_from([zn_mul(k) for k in range(2, 16)]), magmas(max_n=4)))
def test_hyper_subsemigroup_exists_exactly_when_not_s_simple(m):
    sa = s_analysis(m)
    if not sa["s_semigroup"].verdict:
        return
    # independent oracle: largest proper subgroups and strict proper supersemigroups
    closed = brute_closed_subsets(m)
    proper = [s for s in closed if len(s) < m.n]
    groups_ = [s for s in proper if induced_label(m, s) == "group"]
    top = max(len(s) for s in groups_)
    largest = [set(s) for s in groups_ if len(s) == top]
    hyper = any(g < set(s) for s in proper if classify(m.restrict(s)).associative for g in largest)
    assert hyper != sa["s_simple"].verdict
    assert hyper == bool(sa.hyper_subsemigroups)


def test_witness_subsets_are_numpy_free_tuples():
    sa = s_analysis(zn_mul(6))
    for v in sa.as_list():
        for w in v.witnesses:
            assert all(isinstance(x, int) and not isinstance(x, np.integer) for x in w.subset)
