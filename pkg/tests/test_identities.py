"""Identity checks, associators/commutators, derived subloops, centres, isotopes."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from magmakit.catalog import cyclic, ln_class, ln_loop, symmetric_group, zn_groupoid, zn_mul
from magmakit.errors import CapExceeded, NoIdentity, NotALoop, NotAQuasigroup, PreconditionUnmet
from magmakit.identities import (
    IDENTITY_NAMES,
    associator,
    check_identity,
    commutant_centre_nuclei,
    commutator,
    derived_subloop,
    is_g_loop,
    principal_isotope,
)
from magmakit.magma import Magma, classify, solve_left

from strategies import GROUP_BUILDERS, groups, latin_magmas, magmas
from structures import units_mod

# --------------------------------------------------------------------------- oracles


def triples(n):
    return itertools.product(range(n), repeat=3)


def oracle(m: Magma, name: str) -> bool:
    t = m.table.tolist()
    n = m.n
    e = classify(m).identity
    if name == "right_alternative":
        return all(t[t[x][y]][y] == t[x][t[y][y]] for x in range(n) for y in range(n))
    if name == "left_alternative":
        return all(t[t[x][x]][y] == t[x][t[x][y]] for x in range(n) for y in range(n))
    if name == "moufang_1":
        return all(t[t[x][y]][t[z][x]] == t[t[x][t[y][z]]][x] for x, y, z in triples(n))
    if name == "bol":
        return all(t[t[t[x][y]][z]][y] == t[x][t[t[y][z]][y]] for x, y, z in triples(n))
    if name == "wip":
        return all(not (t[t[x][y]][z] == e) or t[x][t[y][z]] == e for x, y, z in triples(n))
    if name == "p_groupoid":
        return all(t[t[x][y]][x] == t[x][t[y][x]] for x in range(n) for y in range(n))
    raise KeyError(name)


LOOPS_UP_TO_8 = [lp for n in (5, 7) for _, lp in ln_class(n)] + [GROUP_BUILDERS[k]() for k in sorted(GROUP_BUILDERS)]

# --------------------------------------------------------------------------- check_identity


def test_l73_is_wip():
    assert check_identity(ln_loop(7, 3), "wip").holds


def test_l52_right_but_not_left_alternative():
    m = ln_loop(5, 2)
    assert check_identity(m, "right_alternative").holds
    r = check_identity(m, "left_alternative")
    assert not r.holds and r.counterexample is not None
    x, y = r.counterexample
    assert m.table[m.table[x, x], y] != m.table[x, m.table[x, y]]


@pytest.mark.parametrize("name", sorted(GROUP_BUILDERS))
def test_groups_are_moufang(name):
    assert check_identity(GROUP_BUILDERS[name](), "moufang").holds


def test_l53_is_not_bol():
    assert not check_identity(ln_loop(5, 3), "bol").holds


def test_counterexample_is_lexicographically_first():
    m = ln_loop(5, 2)
    r = check_identity(m, "moufang_1")
    t = m.table.tolist()
    first = next((x, y, z) for x, y, z in triples(m.n) if t[t[x][y]][t[z][x]] != t[t[x][t[y][z]]][x])
    assert r.counterexample == first


@pytest.mark.parametrize("name", ["wip"])
def test_wip_needs_identity(name):
    with pytest.raises(PreconditionUnmet):
        check_identity(zn_groupoid(5, 2, 3, "Z"), name)


@pytest.mark.parametrize("name", ["diassociative", "power_associative", "semi_alternative"])
def test_generated_identities_need_latin_square(name):
    with pytest.raises(PreconditionUnmet):
        check_identity(zn_mul(4), name)


def test_unknown_identity_name():
    with pytest.raises(ValueError, match="unknown identity"):
        check_identity(cyclic(2), "flexible-ish")


@given(st.one_of(magmas(max_n=4), latin_magmas(max_n=5)), st.sampled_from(
    ["right_alternative", "left_alternative", "moufang_1", "bol", "p_groupoid"]))
def test_identity_checks_match_brute_force(m, name):
    assert check_identity(m, name).holds == oracle(m, name)


@pytest.mark.parametrize("n, m", [(n, m) for n in (5, 7, 9) for m, _ in ln_class(n)])
def test_wip_matches_brute_force_on_ln(n, m):
    lp = ln_loop(n, m)
    assert check_identity(lp, "wip").holds == oracle(lp, "wip")


@pytest.mark.invariant
@given(st.one_of(magmas(max_n=4), latin_magmas(max_n=6)))
def test_alternative_is_left_and_right_alternative(m):
    both = check_identity(m, "left_alternative").holds and check_identity(m, "right_alternative").holds
    assert check_identity(m, "alternative").holds == both


@pytest.mark.invariant
@given(st.one_of(groups(), st.sampled_from([zn_mul(k) for k in range(1, 9)] + [units_mod(8)])))
def test_associative_with_identity_satisfies_every_bracketing_identity(m):
    assert classify(m).associative and classify(m).has_identity
    for name in IDENTITY_NAMES:
        if name == "idempotent_everywhere":
            continue
        try:
            result = check_identity(m, name)
        except PreconditionUnmet:
            # division-based identities are undefined without the Latin property
            assert not classify(m).latin_square
            continue
        if name == "bruck" and not result.holds:
            # the bracketing identity always holds; only the inverse rule
            # (xy)^-1 = x^-1 y^-1 can fail, and exactly for non-abelian groups
            assert result.note.startswith("inverse rule") and not classify(m).commutative
            continue
        assert result.holds, name


@pytest.mark.invariant
@pytest.mark.parametrize("n", range(5, 26, 2))
def test_wip_iff_m_squared_minus_m_plus_1_divisible(n):
    for m, lp in ln_class(n):
        assert check_identity(lp, "wip").holds == ((m * m - m + 1) % n == 0), (n, m)


@pytest.mark.invariant
@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_ln_alternative_laws(n):
    loops = ln_class(n)
    right = [m for m, lp in loops if check_identity(lp, "right_alternative").holds]
    left = [m for m, lp in loops if check_identity(lp, "left_alternative").holds]
    both = [m for m, lp in loops if check_identity(lp, "alternative").holds]
    assert (right, left, both) == ([2], [n - 1], [])


@pytest.mark.invariant
@pytest.mark.parametrize("n, m", [(n, m) for n in (5, 7, 9, 11) for m, _ in ln_class(n)])
def test_ln_has_no_moufang_bol_or_bruck(n, m):
    lp = ln_loop(n, m)
    assert not any(check_identity(lp, name).holds for name in ("moufang", "bol", "bruck"))


# --------------------------------------------------------------------------- associators / commutators


@pytest.mark.parametrize("name", sorted(GROUP_BUILDERS))
def test_group_associators_are_trivial(name):
    g = GROUP_BUILDERS[name]()
    e = classify(g).identity
    assert all(associator(g, x, y, z) == e for x, y, z in triples(g.n))


def test_commutator_in_l52_solves_the_defining_equation():
    m = ln_loop(5, 2)
    x, y = m.index("1"), m.index("2")
    c = commutator(m, x, y)
    # x∘y = (y∘x)∘c
    assert m.table[m.table[y, x], c] == m.table[x, y]
    assert c == solve_left(m, m.table[y, x], m.table[x, y])


def test_abelian_commutators_are_trivial():
    g = cyclic(6)
    assert all(commutator(g, x, y) == 0 for x in range(6) for y in range(6))


def test_associator_needs_latin_square():
    with pytest.raises(NotAQuasigroup):
        associator(zn_mul(4), 0, 1, 2)


@pytest.mark.parametrize("n, m", [(5, 2), (5, 3), (5, 4), (7, 2), (7, 3), (7, 4), (7, 5), (7, 6)])
def test_associator_subloop_is_the_whole_loop(n, m):
    lp = ln_loop(n, m)
    r = derived_subloop(lp, "associator")
    assert r.subset == tuple(range(lp.n)) and r.closed


def test_commutator_subloop_of_abelian_group_is_trivial():
    assert derived_subloop(cyclic(6), "commutator").subset == (0,)


def test_commutator_subloop_of_s3_is_a3():
    s3 = symmetric_group(3)
    assert sorted(derived_subloop(s3, "commutator").names(s3)) == ["123", "231", "312"]


def test_derived_subloop_needs_a_loop():
    with pytest.raises(NotALoop):
        derived_subloop(zn_mul(5), "commutator")


# --------------------------------------------------------------------------- centres and nuclei


def test_centre_of_s3_is_trivial():
    s3 = symmetric_group(3)
    assert commutant_centre_nuclei(s3)["centre"].names(s3) == ["123"]


def test_commutant_of_commutative_loop_is_everything():
    lp = ln_loop(5, 3)
    assert commutant_centre_nuclei(lp)["commutant"].subset == tuple(range(6))


def test_commutant_of_l52_is_identity():
    lp = ln_loop(5, 2)
    assert commutant_centre_nuclei(lp)["commutant"].subset == (0,)


def test_centre_needs_identity():
    with pytest.raises(NoIdentity):
        commutant_centre_nuclei(zn_groupoid(5, 2, 3, "Z"))


@given(groups())
def test_group_nucleus_is_everything_and_centre_is_commutant(g):
    r = commutant_centre_nuclei(g)
    assert r["nucleus"].subset == tuple(range(g.n))
    assert r["centre"].subset == r["commutant"].subset and r["centre"].closed


# --------------------------------------------------------------------------- isotopes


def test_identity_isotope_is_the_loop_itself():
    lp = ln_loop(5, 2)
    assert principal_isotope(lp, 0, 0) == lp


@pytest.mark.parametrize("name", ["C4", "C2xC2"])
def test_small_groups_are_g_loops(name):
    assert is_g_loop(GROUP_BUILDERS[name]()).holds


def test_isotope_of_l52_is_a_loop_of_order_6():
    iso = principal_isotope(ln_loop(5, 2), 1, 2)
    assert iso.n == 6 and classify(iso).is_loop


def test_g_loop_cap():
    with pytest.raises(CapExceeded):
        is_g_loop(cyclic(11))


@pytest.mark.invariant
@pytest.mark.parametrize("index", range(len(LOOPS_UP_TO_8)))
def test_every_principal_isotope_of_a_loop_is_a_loop(index):
    lp = LOOPS_UP_TO_8[index]
    for a, b in itertools.product(range(lp.n), repeat=2):
        iso = principal_isotope(lp, a, b)
        k = classify(iso)
        assert k.latin_square and k.has_identity
        # the identity of the isotope is b∘a
        assert k.identity == lp.table[b, a]
