"""The numbered acceptance criteria, one test each, at exact tolerance.

Every test carries ``@pytest.mark.acceptance(number, title)``; the conftest
prints one ``criterion NN PASS/FAIL: title`` line per criterion at the end of
the run.  Where a criterion is a theorem over a range, the library's verdicts
are compared with a small brute-force oracle written here, independent of the
library code paths.
"""

from __future__ import annotations

import io
import itertools
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from magmakit.catalog import (
    ln_class,
    ln_loop,
    regular_representation,
    transport_is_isomorphism,
    zn_class_enumerate,
    zn_groupoid,
    zn_mul,
)
from magmakit.cli import main
from magmakit.formats import parse_cayley
from magmakit.identities import are_isomorphic, check_identity, derived_subloop, is_strictly_non_commutative
from magmakit.magma import Magma, classify
from magmakit.nstructure import (
    cauchy_analysis,
    classify_n,
    find_sub_nstructures,
    is_normal_sub,
    lagrange_analysis,
    order_spectrum,
    sub_from_names,
    tuple_sylow,
    verify_sub,
)
from magmakit.substructure import ideals, s_analysis
from magmakit.suites import KNOWN_ERRATA, run_suite

from strategies import GROUP_BUILDERS
from structures import (
    A3_IN_S3,
    KLEIN_IN_A4,
    a4_s3_s5_c12,
    a4_z10mul_t3_c5,
    a5_names,
    c8_z12mul_s3_z14mul_d5,
    d6_l53_z8mul_z10grp,
    s3_a4_d7_c18,
    s3_z11_a4_c5,
)

ROOT = Path(__file__).resolve().parent.parent
ODD_5_25 = range(5, 26, 2)

# --------------------------------------------------------------------------- oracles


def factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while n > 1:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    return out


def prod_formula(n: int, shift: int) -> int:
    return math.prod((p - shift) * p ** (a - 1) for p, a in factor(n).items())


def ln_oracle(n: int, m: int) -> list[list[int]]:
    """Index 0 is e, index k is element k; residue 0 stands for element n."""
    t = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(n + 1):
            if i == 0 or j == 0:
                t[i][j] = i or j
            elif i != j:
                t[i][j] = (m * j - (m - 1) * i) % n or n
    return t


def is_latin(t: list[list[int]]) -> bool:
    k = len(t)
    return all(len(set(r)) == k for r in t) and all(len({r[j] for r in t}) == k for j in range(k))


def triples_hold(t: np.ndarray, lhs, rhs) -> bool:
    x, y, z = np.meshgrid(*(np.arange(len(t)),) * 3, indexing="ij")
    return bool(np.array_equal(lhs(t, x, y, z), rhs(t, x, y, z)))


def is_ideal(t: list[list[int]], s: set[int], side: str) -> bool:
    g = range(len(t))
    left = all(t[g_][x] in s for g_ in g for x in s)
    right = all(t[x][g_] in s for g_ in g for x in s)
    return {"left": left, "right": right, "two_sided": left and right}[side]


def brute_ideals(t: list[list[int]], side: str) -> set[tuple[int, ...]]:
    n = len(t)
    return {c for k in range(1, n) for c in itertools.combinations(range(n), k) if is_ideal(t, set(c), side)}


def closure(t: list[list[int]], seeds) -> set[int]:
    s = set(seeds)
    while True:
        new = {t[a][b] for a in s for b in s} - s
        if not new:
            return s
        s |= new


# --------------------------------------------------------------------------- 1


PRINTED = {
    (5, 2): """e 1 2 3 4 5
               1 e 3 5 2 4
               2 5 e 4 1 3
               3 4 1 e 5 2
               4 3 5 2 e 1
               5 2 4 1 3 e""",
    (5, 3): """e 1 2 3 4 5
               1 e 4 2 5 3
               2 4 e 5 3 1
               3 2 5 e 1 4
               4 5 3 1 e 2
               5 3 1 4 2 e""",
    (5, 4): """e 1 2 3 4 5
               1 e 5 4 3 2
               2 3 e 1 5 4
               3 5 4 e 2 1
               4 2 1 5 e 3
               5 4 3 2 1 e""",
    (7, 3): """e 1 2 3 4 5 6 7
               1 e 4 7 3 6 2 5
               2 6 e 5 1 4 7 3
               3 4 7 e 6 2 5 1
               4 2 5 1 e 7 3 6
               5 7 3 6 2 e 1 4
               6 5 1 4 7 3 e 2
               7 3 6 2 5 1 4 e""",
    (7, 4): """e 1 2 3 4 5 6 7
               1 e 5 2 6 3 7 4
               2 5 e 6 3 7 4 1
               3 2 6 e 7 4 1 5
               4 6 3 7 e 1 5 2
               5 3 7 4 1 e 2 6
               6 7 4 1 5 2 e 3
               7 4 1 5 2 6 3 e""",
}


@pytest.mark.acceptance(1, "table fidelity of gen ln-loop against the printed L_n(m) tables")
def test_criterion_01_table_fidelity():
    for (n, m), printed in PRINTED.items():
        out = io.StringIO()
        assert main(["gen", "ln-loop", "--n", str(n), "--m", str(m)], out=out) == 0
        generated = parse_cayley(out.getvalue())
        rows = [line.split() for line in printed.splitlines()]
        assert list(generated.elements) == rows[0], (n, m)
        assert generated.rows() == rows, (n, m)
        names = generated.elements
        assert [[names[k] for k in r] for r in ln_oracle(n, m)] == rows, (n, m)


# --------------------------------------------------------------------------- 2


@pytest.mark.acceptance(2, "|L_n| equals the product formula for odd n in [5, 25]; |L_5| = 3")
def test_criterion_02_loop_counting():
    for n in ODD_5_25:
        latin = [m for m in range(1, n) if is_latin(ln_oracle(n, m))]
        members = [m for m, _ in ln_class(n)]
        assert members == latin, n
        assert len(members) == prod_formula(n, 2), n
    assert len(ln_class(5)) == 3


# --------------------------------------------------------------------------- 3


@pytest.mark.acceptance(3, "one commutative L_n(m) at m = (n+1)/2; F_n strictly non-commutative, 0 when 3 | n")
def test_criterion_03_commutativity():
    for n in ODD_5_25:
        loops = ln_class(n)
        comm = [m for m, lp in loops if classify(lp).commutative]
        oracle_comm = [m for m, _ in loops if np.array_equal(np.array(ln_oracle(n, m)), np.array(ln_oracle(n, m)).T)]
        assert comm == oracle_comm == [(n + 1) // 2], n
        strict = 0
        for m, lp in loops:
            t = ln_oracle(n, m)
            oracle = all(t[a][b] != t[b][a] for a in range(1, n + 1) for b in range(a + 1, n + 1))
            assert is_strictly_non_commutative(lp) == oracle, (n, m)
            strict += oracle
        assert strict == prod_formula(n, 3), n
        if n % 3 == 0:
            assert strict == 0, n


# --------------------------------------------------------------------------- 4


@pytest.mark.acceptance(4, "right-alternative iff m = 2, left-alternative iff m = n-1, never alternative (n in [5, 11])")
def test_criterion_04_alternativity():
    for n in range(5, 12, 2):
        right, left, both = [], [], []
        for m, lp in ln_class(n):
            t = ln_oracle(n, m)
            k = n + 1
            r = all(t[t[x][y]][y] == t[x][t[y][y]] for x in range(k) for y in range(k))
            lf = all(t[t[x][x]][y] == t[x][t[x][y]] for x in range(k) for y in range(k))
            assert check_identity(lp, "right_alternative").holds == r
            assert check_identity(lp, "left_alternative").holds == lf
            if r:
                right.append(m)
            if lf:
                left.append(m)
            if check_identity(lp, "alternative").holds:
                both.append(m)
        assert right == [2] and left == [n - 1] and both == [], n


# --------------------------------------------------------------------------- 5


def _wip_oracle(t: np.ndarray) -> bool:
    # (xy)z = e  implies  x(yz) = e, with e at index 0
    n = len(t)
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    lhs = t[t[x, y], z] == 0
    rhs = t[x, t[y, z]] == 0
    return bool(np.all(~lhs | rhs))


@pytest.mark.acceptance(5, "WIP iff m^2 - m + 1 = 0 mod n for odd n in [5, 25]; L_7(3) is WIP")
def test_criterion_05_wip():
    for n in ODD_5_25:
        for m, lp in ln_class(n):
            expected = (m * m - m + 1) % n == 0
            assert _wip_oracle(np.array(ln_oracle(n, m))) == expected, (n, m)
            assert check_identity(lp, "wip").holds == expected, (n, m)
    assert check_identity(ln_loop(7, 3), "wip").holds


# --------------------------------------------------------------------------- 6


def _associator_subloop_oracle(t: list[list[int]]) -> set[int]:
    k = len(t)
    gens = set()
    for x, y, z in itertools.product(range(k), repeat=3):
        left, right = t[t[x][y]][z], t[x][t[y][z]]
        gens |= {u for u in range(k) if t[right][u] == left}
    return closure(t, gens | {0})


@pytest.mark.acceptance(6, "no Moufang, Bol or Bruck loop in L_n for n in [5, 11]; A(L_n(m)) = L_n(m) for n in {5, 7}")
def test_criterion_06_no_moufang_bol_bruck():
    for n in range(5, 12, 2):
        for m, lp in ln_class(n):
            t = np.array(ln_oracle(n, m))
            moufang_1 = triples_hold(t, lambda t, x, y, z: t[t[x, y], t[z, x]], lambda t, x, y, z: t[t[x, t[y, z]], x])
            bol = triples_hold(t, lambda t, x, y, z: t[t[t[x, y], z], y], lambda t, x, y, z: t[x, t[t[y, z], y]])
            assert not moufang_1 and not bol, (n, m)
            for name in ("moufang", "bol", "bruck"):
                assert not check_identity(lp, name).holds, (n, m, name)
    for n in (5, 7):
        for m, lp in ln_class(n):
            assert _associator_subloop_oracle(ln_oracle(n, m)) == set(range(n + 1))
            assert derived_subloop(lp, "associator").subset == tuple(range(lp.n)), (n, m)


# --------------------------------------------------------------------------- 7


@pytest.mark.acceptance(7, "Z_n(t,u) theorems for n in [3, 12]: associativity, idempotence, {0}, ideal duality, |Z*(n)|")
def test_criterion_07_groupoid_theorems():
    for n in range(3, 13):
        for t_, u_, g in zn_class_enumerate(n, "Zzero"):
            t = g.table
            x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
            assoc = bool(np.array_equal(t[t[x, y], z], t[x, t[y, z]]))
            assert assoc == ((t_ * t_ - t_) % n == 0 and (u_ * u_ - u_) % n == 0), (n, t_, u_)
            assert classify(g).associative == assoc
            idem = all(t[a, a] == a for a in range(n))
            assert idem == ((t_ + u_) % n == 1), (n, t_, u_)
        for t_, u_, g in zn_class_enumerate(n, "Zstarstar"):
            rows = g.table.tolist()
            for side in ("left", "right", "two_sided"):
                assert not is_ideal(rows, {0}, side)
                assert (0,) not in {s.subset for s in ideals(g, side)}
        for t_, u_, g in zn_class_enumerate(n, "Z"):
            dual = zn_groupoid(n, u_, t_, "Z")
            lefts = {s.subset for s in ideals(g, "left")}
            rights = {s.subset for s in ideals(dual, "right")}
            assert lefts == rights, (n, t_, u_)
            if n <= 8:
                assert lefts == brute_ideals(g.table.tolist(), "left")
        pairs = [(a, b) for a in range(1, n) for b in range(1, n) if a != b]
        assert len(zn_class_enumerate(n, "Zstar")) == len(pairs) == (n - 1) * (n - 2)


# --------------------------------------------------------------------------- 8


@pytest.mark.acceptance(8, "Z_6(1,3) is an S-groupoid via {0,3}, {1,4}, {2,5}; Z_p multiplicative is S-semigroup and S-simple")
def test_criterion_08_smarandache_detection():
    g = zn_groupoid(6, 1, 3, "Z")
    assert g.table.tolist() == [[(a + 3 * b) % 6 for b in range(6)] for a in range(6)]
    sa = s_analysis(g)
    assert sa["s_groupoid"].verdict
    witnesses = {w.subset for w in sa["s_groupoid"].witnesses}
    rows = g.table.tolist()
    for pair in [(0, 3), (1, 4), (2, 5)]:
        assert pair in witnesses
        assert closure(rows, pair) == set(pair)
        assert all(rows[rows[a][b]][c] == rows[a][rows[b][c]] for a in pair for b in pair for c in pair)
    for p in (3, 5, 7):
        sa = s_analysis(zn_mul(p))
        assert sa["s_semigroup"].verdict and sa["s_simple"].verdict, p
        assert tuple(range(1, p)) in {w.subset for w in sa["s_semigroup"].witnesses}
        assert not sa.hyper_subsemigroups


# --------------------------------------------------------------------------- 9


@pytest.mark.acceptance(9, "order-34 N-group with an N-order-9 sub; order 150 with normal o(H) = 71; (2,3,7,3)-Sylow")
def test_criterion_09_n_group_arithmetic():
    ns = s3_z11_a4_c5()
    assert (ns.order, classify_n(ns)) == (34, "n_group")
    target = [sorted(A3_IN_S3), ["z0"], sorted(KLEIN_IN_A4), ["ce"]]
    found = [h for h in find_sub_nstructures(ns) if [sorted(s) for s in h.names()] == target]
    assert len(found) == 1 and found[0].n_order == 9 == 3 + 1 + 4 + 1 and 34 % 9 != 0
    assert verify_sub(found[0])

    big = a4_s3_s5_c12()
    h = sub_from_names(big, [KLEIN_IN_A4, A3_IN_S3, ["p" + x for x in a5_names()], ["ce", "cg^3", "cg^6", "cg^9"]])
    assert big.order == 150 and h.order == 71 and is_normal_sub(big, h)

    ts = tuple_sylow(s3_a4_d7_c18(), (2, 3, 7, 3))
    assert ts.sub is not None and ts.sub.sizes == (2, 3, 7, 9) and verify_sub(ts.sub)


# --------------------------------------------------------------------------- 10


@pytest.mark.acceptance(10, "order 54 weakly Lagrange (18, 9 divide; 11 not); order 36 subs 12 and 17; Cauchy in order 50")
def test_criterion_10_mixed_structure_analysis():
    rep = lagrange_analysis(a4_z10mul_t3_c5())
    assert rep.order == 54 and rep.verdict == "weakly_lagrange"
    divides = {w.order: w.divides for w in rep.witnesses}
    assert divides[18] is True and divides[9] is True and divides[11] is False
    for w in rep.witnesses:
        if w.order in (18, 9, 11):
            assert verify_sub(w.sub) and w.sub.order == w.order

    glsg = d6_l53_z8mul_z10grp()
    assert glsg.order == 36
    spec = order_spectrum(glsg)
    assert spec[12].divides and not spec[17].divides

    cz = cauchy_analysis(c8_z12mul_s3_z14mul_d5())
    assert cz.order == 50
    two, three = cz.lookup("S3", "s213"), cz.lookup("S3", "s231")
    assert (two.t, two.cauchy) == (2, True) and (three.t, three.cauchy) == (3, False)


# --------------------------------------------------------------------------- 11


def _oracle_transport(g: Magma, img: Magma, f: dict[str, str]) -> bool:
    def mul(m: Magma, a: str, b: str) -> str:
        return m.elements[m.table[m.index(a), m.index(b)]]

    return all(mul(img, f[a], f[b]) == f[mul(g, a, b)] for a in g.elements for b in g.elements)


@pytest.mark.acceptance(11, "regular representation round-trips isomorphically for every group of order <= 8")
def test_criterion_11_cayley_embedding():
    for name, build in sorted(GROUP_BUILDERS.items()):
        g = build()
        assert g.n <= 8
        img, f = regular_representation(g)
        assert classify(img).label == "group", name
        assert len(set(f.values())) == g.n and _oracle_transport(g, img, f), name
        assert transport_is_isomorphism(g, img, f) and are_isomorphic(g, img), name


# --------------------------------------------------------------------------- 12


@pytest.mark.acceptance(12, "known errata are flagged expected_mismatch, not failures")
def test_criterion_12_errata_handling():
    checks = {c.id: c for c in run_suite("paper-examples")}
    for cid in KNOWN_ERRATA:
        assert checks[cid].status == "expected_mismatch" and checks[cid].passed, cid
    assert (checks["five_group_s3_a4_z12_d6_c8_order"].stated,
            checks["five_group_s3_a4_z12_d6_c8_order"].recomputed) == ("48", "50")
    assert not [c.id for c in checks.values() if c.status == "fail"]


# --------------------------------------------------------------------------- 13

INVARIANT_TESTS = [
    "test_magma.py::test_division_solves_both_equations",
    "test_magma.py::test_classification_is_invariant_under_renaming",
    "test_magma.py::test_group_element_orders_divide_group_order",
    "test_magma.py::test_group_label_implies_loop_axioms",
    "test_magma.py::test_serialize_then_parse_reproduces_the_table",
    "test_catalog.py::test_ln_loop_is_a_loop_with_every_element_self_inverse",
    "test_catalog.py::test_ln_class_size_matches_product_formula",
    "test_catalog.py::test_ln_commutative_exactly_at_half",
    "test_catalog.py::test_zstar_associative_iff_coefficients_idempotent",
    "test_catalog.py::test_zn_idempotent_everywhere_iff_coefficients_sum_to_one",
    "test_catalog.py::test_zstar_class_has_n_minus_1_times_n_minus_2_members",
    "test_catalog.py::test_regular_representation_is_an_isomorphic_group",
    "test_identities.py::test_alternative_is_left_and_right_alternative",
    "test_identities.py::test_associative_with_identity_satisfies_every_bracketing_identity",
    "test_identities.py::test_wip_iff_m_squared_minus_m_plus_1_divisible",
    "test_identities.py::test_ln_alternative_laws",
    "test_identities.py::test_ln_has_no_moufang_bol_or_bruck",
    "test_identities.py::test_every_principal_isotope_of_a_loop_is_a_loop",
    "test_substructure.py::test_every_submagma_reproduces_its_kind_from_scratch",
    "test_substructure.py::test_zn_subgroupoid_of_order_n_over_t",
    "test_substructure.py::test_left_right_ideal_duality",
    "test_substructure.py::test_s_normal_implies_s_semi_normal",
    "test_substructure.py::test_hyper_subsemigroup_exists_exactly_when_not_s_simple",
    "test_nstructure.py::test_order_is_the_number_of_distinct_names",
    "test_nstructure.py::test_found_subs_recheck_independently",
    "test_nstructure.py::test_pseudo_divisibility_is_componentwise_and_holds_for_group_slots",
    "test_nstructure.py::test_n_order_bounds_the_set_order_with_equality_iff_slots_disjoint",
    "test_nstructure.py::test_cauchy_classification_is_stable_under_reordering",
    "test_nstructure.py::test_quotient_order_is_the_sum_of_indices",
    "test_nstructure.py::test_s_n_loop_witness_rechecks_as_an_n_group",
    "test_formats.py::test_round_trip_is_byte_stable",
    "test_cli.py::test_exit_code_contract_for_check",
    "test_cli.py::test_exit_code_contract_table",
    "test_cli.py::test_report_witnesses_recheck_independently",
]


@pytest.mark.acceptance(13, "property suite: every invariant test passes, including format round trip and exit codes")
def test_criterion_13_property_suite():
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-v", "-p", "no:cacheprovider", "-m", "invariant and not acceptance", "tests/"],
        cwd=ROOT, capture_output=True, text=True, timeout=600,
    )
    assert proc.returncode == 0, proc.stdout[-3000:]
    passed = {line.split(" ")[0].split("[")[0].removeprefix("tests/")
              for line in proc.stdout.splitlines() if " PASSED" in line}
    missing = [t for t in INVARIANT_TESTS if t not in passed]
    assert not missing, missing
