"""Theorem batteries and worked-example reproductions behind ``verify``.

Every check recomputes its claim from scratch (building tables, enumerating
substructures) and compares it with the expected value.  A check flagged
``expected_mismatch`` records a known arithmetic slip in the published
statement: the recomputed value is reported next to the stated one and the
check does not count as a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .catalog import (
    alternating,
    cyclic,
    dihedral,
    full_transformation,
    ln_class,
    ln_count_formula,
    ln_counts,
    ln_loop,
    quaternion_group,
    regular_representation,
    symmetric_group,
    transport_is_isomorphism,
    zn_add,
    zn_class_enumerate,
    zn_groupoid,
    zn_mul,
)
from .errors import ImproperComponents
from .identities import check_identity, derived_subloop
from .magma import Magma, generated_closure
from .nstructure import (
    assemble,
    cauchy_analysis,
    classify_n,
    coset,
    is_normal_sub,
    lagrange_analysis,
    smarandache_n_analysis,
    sub_from_names,
    sylow_analysis,
    tuple_sylow,
    verify_sub,
)
from .reference import REFERENCE_LN_TABLES
from .substructure import enumerate_submagmas, s_analysis

SUITES = ("ln-theorems", "zn-theorems", "paper-examples")


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    detail: str = ""
    checked_range: str = ""
    expected_mismatch: bool = False
    stated: str | None = None
    recomputed: str | None = None

    @property
    def status(self) -> str:
        if self.expected_mismatch:
            return "expected_mismatch"
        return "pass" if self.passed else "fail"


# ---------------------------------------------------------------------------
# L_n battery
# ---------------------------------------------------------------------------


def _odd_range(lo: int, hi: int) -> list[int]:
    return [n for n in range(lo, hi + 1) if n % 2 == 1]


def ln_theorem_suite(max_n: int = 25) -> list[Check]:
    ns = _odd_range(5, max(5, max_n))
    rng = f"odd n in [5, {ns[-1]}]"
    small = [n for n in ns if n <= 11]
    srng = f"odd n in [5, {small[-1]}]" if small else "none"
    checks: list[Check] = []

    def add(cid: str, ok: bool, detail: str = "", r: str = rng) -> None:
        checks.append(Check(cid, ok, detail, r))

    bad_count, bad_comm, bad_strict, bad_alt_counts = [], [], [], []
    bad_wip: list[tuple[int, int]] = []
    for n in ns:
        c = ln_counts(n)
        if c.total_enumerated != ln_count_formula(n):
            bad_count.append(n)
        comm = [m for m, lp in ln_class(n) if lp.kind.commutative]
        if comm != [(n + 1) // 2]:
            bad_comm.append(n)
        if c.strictly_noncommutative_enumerated != c.strictly_noncommutative_formula or (
            n % 3 == 0 and c.strictly_noncommutative_enumerated != 0
        ):
            bad_strict.append(n)
        if not (
            c.strictly_non_right_alternative_enumerated == c.strictly_non_right_alternative_formula
            and c.strictly_non_left_alternative_enumerated == c.strictly_non_left_alternative_formula
        ):
            bad_alt_counts.append(n)
        for m, lp in ln_class(n):
            if check_identity(lp, "wip").holds != ((m * m - m + 1) % n == 0):
                bad_wip.append((n, m))
    add("ln_count_product_formula", not bad_count, f"mismatch at {bad_count}" if bad_count else "")
    add("ln_class_of_5_has_3_loops", len(ln_class(5)) == 3, f"found {len(ln_class(5))}", "n = 5")
    add("ln_unique_commutative_at_half", not bad_comm, f"mismatch at {bad_comm}" if bad_comm else "")
    add("ln_strictly_noncommutative_count", not bad_strict, f"mismatch at {bad_strict}" if bad_strict else "")
    add("ln_strictly_non_alternative_counts", not bad_alt_counts, f"mismatch at {bad_alt_counts}" if bad_alt_counts else "")
    add("ln_wip_iff_m2_minus_m_plus_1", not bad_wip, f"mismatch at {bad_wip}" if bad_wip else "")
    add("ln_l73_is_wip", check_identity(ln_loop(7, 3), "wip").holds, "", "n = 7, m = 3")

    bad_alt, bad_id = [], []
    for n in small:
        for m, lp in ln_class(n):
            r = check_identity(lp, "right_alternative").holds
            l_ = check_identity(lp, "left_alternative").holds
            a = check_identity(lp, "alternative").holds
            if r != (m == 2) or l_ != (m == n - 1) or a:
                bad_alt.append((n, m))
            if any(check_identity(lp, w).holds for w in ("moufang", "bol", "bruck")):
                bad_id.append((n, m))
    add("ln_alternative_laws", not bad_alt, f"mismatch at {bad_alt}" if bad_alt else "", srng)
    add("ln_no_moufang_bol_bruck", not bad_id, f"holds at {bad_id}" if bad_id else "", srng)
    bad_assoc = [
        (n, m) for n in (5, 7) for m, lp in ln_class(n) if len(derived_subloop(lp, "associator").subset) != lp.n
    ]
    add("ln_associator_subloop_is_whole", not bad_assoc, f"proper at {bad_assoc}" if bad_assoc else "", "n in {5, 7}")
    return checks


# ---------------------------------------------------------------------------
# Z_n(t, u) battery
# ---------------------------------------------------------------------------


def _is_ideal(m: Magma, ids: list[int], side: str) -> bool:
    t = m.table
    s = set(ids)
    if side == "left":
        return all(int(t[x, y]) in s for x in range(m.n) for y in ids)
    return all(int(t[y, x]) in s for x in range(m.n) for y in ids)


def zn_theorem_suite(max_n: int = 12) -> list[Check]:
    hi = max(3, max_n)
    rng = f"n in [3, {hi}]"
    bad = {k: [] for k in ("assoc", "idem", "zero", "dual", "count", "sub")}
    for n in range(3, hi + 1):
        for t, u, g in zn_class_enumerate(n, "Zzero"):
            k = g.kind
            if k.associative != ((t * t - t) % n == 0 and (u * u - u) % n == 0):
                bad["assoc"].append((n, t, u))
            if all(g.table[x, x] == x for x in range(n)) != ((t + u) % n == 1):
                bad["idem"].append((n, t, u))
        for t, u, g in zn_class_enumerate(n, "Z"):
            if _is_ideal(g, [0], "left") and _is_ideal(g, [0], "right"):
                bad["zero"].append((n, t, u))
        if n <= 8:
            for t, u, g in zn_class_enumerate(n, "Zstarstar"):
                op = zn_groupoid(n, u, t, "Zstarstar")
                for sub in enumerate_submagmas(g):
                    ids = list(sub.subset)
                    if _is_ideal(g, ids, "left") != _is_ideal(op, ids, "right"):
                        bad["dual"].append((n, t, u, tuple(ids)))
        if len(zn_class_enumerate(n, "Zstar")) != (n - 1) * (n - 2):
            bad["count"].append(n)
        if n % 2 == 0:
            m2 = n
            for t in range(1, n):
                u = m2 - t
                if n % t or math.gcd(t, u) != t or t == u:
                    continue
                g = zn_groupoid(n, t, u, "Zstar")
                ids = sorted({(t * a) % n for a in range(n)})
                if not g.is_closed(ids) or len(ids) != n // t:
                    bad["sub"].append((n, t, u))
    return [
        Check("zn_semigroup_iff_idempotent_coefficients", not bad["assoc"], str(bad["assoc"][:5]) if bad["assoc"] else "", rng + ", all (t, u)"),
        Check("zn_idempotent_iff_t_plus_u_is_1", not bad["idem"], str(bad["idem"][:5]) if bad["idem"] else "", rng + ", all (t, u)"),
        Check("zn_zero_never_an_ideal", not bad["zero"], str(bad["zero"][:5]) if bad["zero"] else "", rng + ", class Z"),
        Check("zn_left_right_ideal_duality", not bad["dual"], str(bad["dual"][:5]) if bad["dual"] else "", f"n in [3, {min(hi, 8)}], class Z**"),
        Check("zn_star_class_size", not bad["count"], str(bad["count"]) if bad["count"] else "", rng),
        Check("zn_multiples_of_t_form_subgroupoid", not bad["sub"], str(bad["sub"][:5]) if bad["sub"] else "", rng + ", even n"),
    ]


# ---------------------------------------------------------------------------
# Worked examples
# ---------------------------------------------------------------------------


def _p(m: Magma, prefix: str) -> Magma:
    return m.with_prefix(prefix)


def _units_mod(k: int) -> Magma:
    """The unit group of ``Z_k`` under multiplication."""
    return zn_mul(k).restrict([x for x in range(1, k) if math.gcd(x, k) == 1])


GROUP_FIXTURES: dict[str, Callable[[], Magma]] = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C2xC2": lambda: _units_mod(12),
    "C5": lambda: cyclic(5),
    "C6": lambda: cyclic(6),
    "S3": lambda: symmetric_group(3),
    "C7": lambda: cyclic(7),
    "C8": lambda: cyclic(8),
    "D4": lambda: dihedral(4),
    "Q8": quaternion_group,
    "C2xC4": lambda: _units_mod(15),
    "C2xC2xC2": lambda: _units_mod(24),
}


def _check(cid: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    ok, detail = fn()
    return Check(cid, ok, detail)


def _ng_order_34() -> tuple[bool, str]:
    ns = assemble([("S3", _p(symmetric_group(3), "s")), ("Z11", _p(zn_add(11), "z")),
                   ("A4", _p(alternating(4), "a")), ("C5", _p(cyclic(5), "c"))])
    h = sub_from_names(ns, [["s123", "s231", "s312"], ["z0"], ["a1234", "a2143", "a3412", "a4321"], ["ce"]])
    ok = ns.order == 34 and classify_n(ns) == "n_group" and verify_sub(h) and h.n_order == 9 and 34 % 9 != 0
    return ok, f"order={ns.order} kind={classify_n(ns)} sub_order={h.n_order}"


def _improper() -> tuple[bool, str]:
    try:
        assemble([("A3", alternating(3)), ("S3", symmetric_group(3))])
    except ImproperComponents as exc:
        return exc.pair == ("A3", "S3"), str(exc)
    return False, "accepted nested components"


def _ng_order_150() -> tuple[bool, str]:
    s5 = symmetric_group(5)
    a5 = s5.names(generated_closure(s5, [s5.index("23145"), s5.index("12453")]))
    ns = assemble([("A4", _p(alternating(4), "a")), ("S3", _p(symmetric_group(3), "s")),
                   ("S5", _p(s5, "p")), ("C12", _p(cyclic(12), "c"))])
    h = sub_from_names(ns, [["a1234", "a2143", "a3412", "a4321"], ["s123", "s231", "s312"],
                            ["p" + x for x in a5], ["ce", "cg^3", "cg^6", "cg^9"]])
    ok = ns.order == 150 and h.order == 71 and is_normal_sub(ns, h)
    return ok, f"order={ns.order} sub_order={h.order} normal={is_normal_sub(ns, h)}"


def _pseudo_7() -> tuple[bool, str]:
    ns = assemble([("S3", _p(symmetric_group(3), "s")), ("A4", _p(alternating(4), "a")), ("C11", _p(cyclic(11), "c"))])
    f = {x.p: x for x in sylow_analysis(ns)}[7]
    return ns.order == 29 and f.status == "pseudo_sylow" and 1 in f.exponents, f"order={ns.order} p=7 status={f.status}"


def _tuple_sylow() -> tuple[bool, str]:
    ns = assemble([("S3", _p(symmetric_group(3), "s")), ("A4", _p(alternating(4), "a")),
                   ("D7", _p(dihedral(7), "d")), ("C18", _p(cyclic(18), "c"))])
    ts = tuple_sylow(ns, (2, 3, 7, 3))
    sizes = ts.sub.sizes if ts.sub else None
    return sizes == (2, 3, 7, 9), f"sizes={sizes} n_order={ts.n_order}"


def _weak_lagrange_54() -> tuple[bool, str]:
    ns = assemble([("A4", _p(alternating(4), "a")), ("Z10", _p(zn_mul(10), "z")),
                   ("S3", _p(full_transformation(3), "t")), ("C5", _p(cyclic(5), "c"))])
    rep = lagrange_analysis(ns)
    orders = {w.order: w.divides for w in rep.witnesses}
    ok = (ns.order == 54 and classify_n(ns) == "n_group_semigroup" and rep.verdict == "weakly_lagrange"
          and orders.get(18) is True and orders.get(9) is True and orders.get(11) is False)
    return ok, f"order={ns.order} verdict={rep.verdict}"


def _glsg_36() -> tuple[bool, str]:
    ns = assemble([("D6", _p(dihedral(6), "d")), ("L53", _p(ln_loop(5, 3), "l")),
                   ("Z8", _p(zn_mul(8), "m")), ("Z10", _p(zn_groupoid(10, 1, 4, "Zzero"), "q"))])
    bs = ["de", "db", "db^2", "db^3", "db^4", "db^5"]
    p = sub_from_names(ns, [bs, ["le", "l1"], ["m0", "m4"], ["q0", "q5"]])
    r = sub_from_names(ns, [bs, ["le", "l3"], ["m0", "m2", "m4", "m6"], ["q0", "q2", "q4", "q6", "q8"]])
    ok = (ns.order == 36 and verify_sub(p) and verify_sub(r) and p.order == 12 and r.order == 17
          and 36 % 12 == 0 and 36 % 17 != 0)
    return ok, f"order={ns.order} P={p.order} R={r.order}"


def _lagrange_free_29() -> tuple[bool, str]:
    ns = assemble([("S3", _p(symmetric_group(3), "s")), ("L73", _p(ln_loop(7, 3), "l")),
                   ("Z6", _p(zn_mul(6), "m")), ("Z9", _p(zn_groupoid(9, 3, 6, "Zstarstar"), "q"))])
    rep = lagrange_analysis(ns)
    return ns.order == 29 and rep.verdict == "lagrange_free", f"order={ns.order} verdict={rep.verdict}"


def _glsg_kind() -> tuple[bool, str]:
    ns = assemble([("C8", _p(cyclic(8), "c")), ("L52", _p(ln_loop(5, 2), "l")),
                   ("Z12", _p(zn_mul(12), "m")), ("Z8", _p(zn_groupoid(8, 2, 6, "Zstarstar"), "q"))])
    return classify_n(ns) == "n_glsg", f"kind={classify_n(ns)}"


def _cauchy_free_53() -> tuple[bool, str]:
    ns = assemble([("C7", _p(cyclic(7), "c")), ("S3", _p(full_transformation(3), "t")),
                   ("Z11", _p(zn_add(11), "z")), ("Z8", _p(zn_mul(8), "m"))])
    rep = cauchy_analysis(ns)
    return ns.order == 53 and rep.verdict == "cauchy_free", f"order={ns.order} verdict={rep.verdict}"


def _cauchy_50() -> tuple[bool, str]:
    ns = assemble([("C8", _p(cyclic(8), "c")), ("Z12", _p(zn_mul(12), "y")), ("S3", _p(symmetric_group(3), "s")),
                   ("Z14", _p(zn_mul(14), "z")), ("D5", _p(dihedral(5), "d"))])
    rep = cauchy_analysis(ns)
    tr = rep.lookup("S3", "s213")
    cyc3 = rep.lookup("S3", "s231")
    g2 = rep.lookup("C8", "cg^2")
    b = rep.lookup("D5", "db")
    three = rep.lookup("Z14", "z3")
    ok = (ns.order == 50 and tr.t == 2 and tr.cauchy and cyc3.t == 3 and not cyc3.cauchy
          and g2.t == 4 and not g2.cauchy and b.t == 5 and b.cauchy and three.t == 6 and not three.cauchy)
    return ok, f"order={ns.order} t(transposition)={tr.t} t(3-cycle)={cyc3.t}"


def _cauchy_18() -> tuple[bool, str]:
    ns = assemble([("Z6", _p(zn_mul(6), "m")), ("C3", _p(cyclic(3), "c")),
                   ("S3", _p(symmetric_group(3), "s")), ("Z3", _p(zn_add(3), "z"))])
    rep = cauchy_analysis(ns)
    return ns.order == 18 and rep.verdict == "cauchy", f"order={ns.order} verdict={rep.verdict}"


def _s_groupoid_z6() -> tuple[bool, str]:
    g = zn_groupoid(6, 1, 3, "Z")
    sa = s_analysis(g)
    wit = {s.subset for s in sa["s_groupoid"].witnesses}
    ok = sa["s_groupoid"].verdict and {(0, 3), (1, 4), (2, 5)} <= wit
    return ok, f"witnesses_found={sorted(w for w in wit if len(w) == 2)}"


def _zp_s_simple() -> tuple[bool, str]:
    res = {p: (s_analysis(zn_mul(p))["s_semigroup"].verdict, s_analysis(zn_mul(p))["s_simple"].verdict) for p in (3, 5, 7)}
    return all(a and b for a, b in res.values()), str(res)


def _l73_wip() -> tuple[bool, str]:
    return check_identity(ln_loop(7, 3), "wip").holds, ""


def _s_4_group() -> tuple[bool, str]:
    ns = assemble([("S3", _p(full_transformation(3), "t")), ("Z10", _p(zn_add(10), "a")),
                   ("Z12", _p(zn_mul(12), "m")), ("C5", _p(cyclic(5), "c"))])
    rep = smarandache_n_analysis(ns)
    w = rep["s_n_group"].witness
    return rep["s_n_group"].holds and w is not None and verify_sub(w), f"roles={rep.slot_roles}"


def _s_weakly_commutative() -> tuple[bool, str]:
    ns = assemble([("S3", _p(full_transformation(3), "t")), ("Z19", _p(zn_add(19), "a")), ("Z24", _p(zn_mul(24), "m"))])
    rep = smarandache_n_analysis(ns)
    ok = rep["s_weakly_commutative"].holds and not rep["s_commutative"].holds
    return ok, f"weak={rep['s_weakly_commutative'].holds} strong={rep['s_commutative'].holds}"


def _s_weakly_cyclic() -> tuple[bool, str]:
    ns = assemble([("S3", _p(full_transformation(3), "t")), ("C7", _p(cyclic(7), "c")),
                   ("Z15", _p(zn_mul(15), "m")), ("U11", _p(_units_mod(11), "u"))])
    rep = smarandache_n_analysis(ns)
    ok = rep["s_weakly_cyclic"].holds and not rep["s_cyclic"].holds
    return ok, f"weak={rep['s_weakly_cyclic'].holds} strong={rep['s_cyclic'].holds}"


def _coset_zero() -> Check:
    ns = assemble([("S3", _p(symmetric_group(3), "s")), ("Z10", _p(zn_mul(10), "u")), ("Z24", _p(zn_mul(24), "v"))])
    h = sub_from_names(ns, [["s123", "s231", "s312"], ["u0", "u2", "u4", "u6", "u8"], ["v0", "v8", "v16"]])
    c = coset(ns, h, "v18")
    third = sorted(x[1:] for x in c.slots[2])
    return Check(
        "coset_by_18_in_z24_mult", c.smarandache, f"third_slot={third} left_equals_right={c.smarandache}",
        expected_mismatch=third != ["0", "16"], stated="{16,0}", recomputed="{" + ",".join(third) + "}",
    )


def _embedding() -> tuple[bool, str]:
    bad = []
    for name, build in GROUP_FIXTURES.items():
        g = build()
        img, f = regular_representation(g)
        if not transport_is_isomorphism(g, img, f):
            bad.append(name)
    return not bad, f"fixtures={len(GROUP_FIXTURES)} failed={bad}"


#: Published statements that disagree with a recomputation from their own data.
KNOWN_ERRATA: dict[str, dict[str, object]] = {
    "five_group_s3_a4_z12_d6_c8_order": {
        "components": ("S3", "A4", "Z12 additive", "D_{2,6}", "C8"),
        "stated": 48,
        "recomputed": 6 + 12 + 12 + 12 + 8,
    },
    "group_semigroup_c7_z12_u11_order": {
        "components": ("C7", "Z12 multiplicative", "Z11 units"),
        "stated": 27,
        "stated_sizes": (7, 11, 9),
        "recomputed": 7 + 12 + 10,
        "recomputed_sizes": (7, 12, 10),
    },
}


def _errata_checks() -> list[Check]:
    out = []
    ns = assemble([("S3", _p(symmetric_group(3), "s")), ("A4", _p(alternating(4), "a")), ("Z12", _p(zn_add(12), "z")),
                   ("D6", _p(dihedral(6), "d")), ("C8", _p(cyclic(8), "c"))])
    e = KNOWN_ERRATA["five_group_s3_a4_z12_d6_c8_order"]
    out.append(Check("five_group_s3_a4_z12_d6_c8_order", ns.order == e["recomputed"], f"order={ns.order}",
                     expected_mismatch=ns.order != e["stated"], stated=str(e["stated"]), recomputed=str(ns.order)))
    ns = assemble([("C7", _p(cyclic(7), "c")), ("Z12", _p(zn_mul(12), "m")), ("U11", _p(_units_mod(11), "u"))])
    e = KNOWN_ERRATA["group_semigroup_c7_z12_u11_order"]
    sizes = ns.component_orders
    out.append(Check("group_semigroup_c7_z12_u11_order", ns.order == e["recomputed"] and sizes == e["recomputed_sizes"],
                     f"sizes={list(sizes)} order={ns.order}", expected_mismatch=sizes != e["stated_sizes"],
                     stated=f"{e['stated']} = 7+11+9", recomputed=f"{ns.order} = " + "+".join(map(str, sizes))))
    return out


def worked_example_suite() -> list[Check]:
    checks = []
    for (n, m), (header, rows) in REFERENCE_LN_TABLES.items():
        lp = ln_loop(n, m)
        checks.append(Check(f"ln_table_{n}_{m}", list(lp.elements) == header and lp.rows() == rows, "cell-for-cell"))
    checks.append(_check("ln_class_of_5_has_3_loops", lambda: (len(ln_class(5)) == 3, f"found {len(ln_class(5))}")))
    checks.append(_check("l73_is_wip", _l73_wip))
    for cid, fn in (
        ("n_group_order_34_sub_order_9", _ng_order_34),
        ("nested_components_rejected", _improper),
        ("n_group_order_150_normal_sub_71", _ng_order_150),
        ("pseudo_7_sylow_in_order_29", _pseudo_7),
        ("tuple_sylow_2_3_7_3", _tuple_sylow),
        ("weakly_lagrange_order_54", _weak_lagrange_54),
        ("glsg_order_36_subs_12_and_17", _glsg_36),
        ("lagrange_free_order_29", _lagrange_free_29),
        ("glsg_kind_detected", _glsg_kind),
        ("cauchy_free_order_53", _cauchy_free_53),
        ("cauchy_verdicts_order_50", _cauchy_50),
        ("cauchy_order_18", _cauchy_18),
        ("s_groupoid_z6_1_3_witnesses", _s_groupoid_z6),
        ("zp_mult_s_semigroup_and_s_simple", _zp_s_simple),
        ("s_4_group_finite_variant", _s_4_group),
        ("s_weakly_commutative_not_commutative", _s_weakly_commutative),
        ("s_weakly_cyclic_not_cyclic", _s_weakly_cyclic),
        ("regular_representation_round_trip", _embedding),
    ):
        checks.append(_check(cid, fn))
    checks.append(_coset_zero())
    checks.extend(_errata_checks())
    return checks


def run_suite(name: str, max_n: int | None = None) -> list[Check]:
    if name == "ln-theorems":
        return ln_theorem_suite(25 if max_n is None else max_n)
    if name == "zn-theorems":
        return zn_theorem_suite(12 if max_n is None else max_n)
    if name == "paper-examples":
        return worked_example_suite()
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
