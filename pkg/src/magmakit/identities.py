"""Decide named identities and compute the derived subsets of a single magma.

Every identity is checked exhaustively over all required tuples; failures
report the first counterexample in lexicographic order of element ids, so
results are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import CapExceeded, NoIdentity, NotALoop, PreconditionUnmet
from .magma import Magma, generated_closure, is_associative

IDENTITY_NAMES = (
    "moufang",
    "moufang_1",
    "moufang_2",
    "moufang_3",
    "bol",
    "bruck",
    "wip",
    "left_alternative",
    "right_alternative",
    "alternative",
    "semi_alternative",
    "p_groupoid",
    "idempotent_everywhere",
    "diassociative",
    "power_associative",
)

DEFAULT_G_LOOP_CAP = 10


@dataclass(frozen=True)
class IdentityResult:
    name: str
    holds: bool
    counterexample: tuple[int, ...] | None = None
    note: str = ""


# ---------------------------------------------------------------------------
# Scanning helpers
# ---------------------------------------------------------------------------

Check3 = Callable[[np.ndarray, int, np.ndarray, np.ndarray], np.ndarray]


def _scan3(m: Magma, bad: Check3) -> tuple[int, int, int] | None:
    """Apply ``bad(T, x, Y, Z)`` for each x; first True cell wins."""
    t = m.table
    ar = np.arange(m.n)
    Y, Z = np.meshgrid(ar, ar, indexing="ij")
    for x in range(m.n):
        hits = np.argwhere(bad(t, x, Y, Z))
        if hits.size:
            return (x, int(hits[0, 0]), int(hits[0, 1]))
    return None


def _scan2(m: Magma, bad: Callable[[np.ndarray, int, np.ndarray], np.ndarray]) -> tuple[int, int] | None:
    t = m.table
    ar = np.arange(m.n)
    for x in range(m.n):
        hits = np.flatnonzero(bad(t, x, ar))
        if hits.size:
            return (x, int(hits[0]))
    return None


def _moufang1(t, x, Y, Z):
    return t[t[x, Y], t[Z, x]] != t[t[x, t[Y, Z]], x]


def _moufang2(t, x, Y, Z):
    return t[t[t[x, Y], Z], Y] != t[x, t[Y, t[Z, Y]]]


def _moufang3(t, x, Y, Z):
    return t[x, t[Y, t[x, Z]]] != t[t[t[x, Y], x], Z]


def _bol(t, x, Y, Z):
    return t[t[t[x, Y], Z], Y] != t[x, t[t[Y, Z], Y]]


def _bruck_identity(t, x, Y, Z):
    # (x(yx))z = x(y(xz))
    return t[t[x, t[Y, x]], Z] != t[x, t[Y, t[x, Z]]]


def _right_alt(t, x, y):
    return t[t[x, y], y] != t[x, t[y, y]]


def _left_alt(t, x, y):
    return t[t[x, x], y] != t[x, t[x, y]]


def _p_groupoid(t, x, y):
    return t[t[x, y], x] != t[x, t[y, x]]


def _first(*cands: tuple[int, ...] | None) -> tuple[int, ...] | None:
    found = [c for c in cands if c is not None]
    return min(found) if found else None


def _require_identity(m: Magma, which: str) -> int:
    e = m.kind.identity
    if e is None:
        raise PreconditionUnmet(f"{which} needs a two-sided identity element")
    return e


def _require_latin(m: Magma, which: str) -> None:
    if not m.kind.latin_square:
        raise PreconditionUnmet(f"{which} needs a Latin-square (quasigroup) table")


def inverse_map(m: Magma) -> np.ndarray | None:
    """``inv[x]`` with ``x inv[x] = inv[x] x = e``, or None if some x lacks one."""
    e = m.kind.identity
    if e is None:
        return None
    t = m.table
    hit = (t == e) & (t.T == e)
    if not hit.any(axis=1).all():
        return None
    return hit.argmax(axis=1)


# ---------------------------------------------------------------------------
# check_identity
# ---------------------------------------------------------------------------


def check_identity(m: Magma, which: str) -> IdentityResult:
    """Decide the named identity exhaustively."""
    if which not in IDENTITY_NAMES:
        raise ValueError(f"unknown identity {which!r}; expected one of {IDENTITY_NAMES}")
    t = m.table
    if which == "moufang":
        if m.kind.is_loop:
            ce = _first(_scan3(m, _moufang1), _scan3(m, _moufang2), _scan3(m, _moufang3))
            return IdentityResult(which, ce is None, ce, "all three Moufang forms (loop)")
        ce = _scan3(m, _moufang1)
        return IdentityResult(which, ce is None, ce, "form (xy)(zx) = (x(yz))x only (not a loop)")
    if which in ("moufang_1", "moufang_2", "moufang_3"):
        f = {"moufang_1": _moufang1, "moufang_2": _moufang2, "moufang_3": _moufang3}[which]
        ce = _scan3(m, f)
        return IdentityResult(which, ce is None, ce)
    if which == "bol":
        ce = _scan3(m, _bol)
        return IdentityResult(which, ce is None, ce)
    if which == "bruck":
        return _check_bruck(m)
    if which == "wip":
        e = _require_identity(m, which)
        ce = _scan3(m, lambda t, x, Y, Z: (t[t[x, Y], Z] == e) & (t[x, t[Y, Z]] != e))
        return IdentityResult(which, ce is None, ce)
    if which == "right_alternative":
        ce = _scan2(m, _right_alt)
        return IdentityResult(which, ce is None, ce)
    if which == "left_alternative":
        ce = _scan2(m, _left_alt)
        return IdentityResult(which, ce is None, ce)
    if which == "alternative":
        ce = _first(_scan2(m, _left_alt), _scan2(m, _right_alt))
        return IdentityResult(which, ce is None, ce)
    if which == "p_groupoid":
        ce = _scan2(m, _p_groupoid)
        return IdentityResult(which, ce is None, ce)
    if which == "idempotent_everywhere":
        bad = np.flatnonzero(np.diag(t) != np.arange(m.n))
        ce = (int(bad[0]),) if bad.size else None
        return IdentityResult(which, ce is None, ce)
    if which == "semi_alternative":
        _require_latin(m, which)
        a = associator_table(m)
        bad = np.argwhere(a != np.transpose(a, (1, 2, 0)))
        ce = tuple(int(v) for v in bad[0]) if bad.size else None
        return IdentityResult(which, ce is None, ce, "associator equality (x,y,z) = (y,z,x)")
    if which == "diassociative":
        _require_latin(m, which)
        return _check_generated(m, which, arity=2)
    if which == "power_associative":
        _require_latin(m, which)
        return _check_generated(m, which, arity=1)
    raise AssertionError(which)  # pragma: no cover


def _check_bruck(m: Magma) -> IdentityResult:
    ce = _scan3(m, _bruck_identity)
    if ce is not None:
        return IdentityResult("bruck", False, ce, "identity (x(yx))z = x(y(xz)) fails")
    if not m.kind.is_loop:
        return IdentityResult("bruck", True, None, "identity only (not a loop, no inverses)")
    inv = inverse_map(m)
    if inv is None:  # pragma: no cover - loops always have two-sided inverses? not always
        return IdentityResult("bruck", False, None, "some element has no two-sided inverse")
    t = m.table
    ar = np.arange(m.n)
    X, Y = np.meshgrid(ar, ar, indexing="ij")
    bad = np.argwhere(inv[t[X, Y]] != t[inv[X], inv[Y]])
    if bad.size:
        return IdentityResult(
            "bruck", False, (int(bad[0, 0]), int(bad[0, 1])), "inverse rule (xy)^-1 = x^-1 y^-1 fails"
        )
    return IdentityResult("bruck", True, None, "identity and inverse rule")


def _check_generated(m: Magma, which: str, arity: int) -> IdentityResult:
    cache: dict[tuple[int, ...], bool] = {}
    for tup in _tuples(m.n, arity):
        sub = tuple(generated_closure(m, tup))
        ok = cache.get(sub)
        if ok is None:
            r = m.restrict(sub)
            ok = is_associative(r) and (arity > 1 or r.kind.commutative)
            cache[sub] = ok
        if not ok:
            return IdentityResult(which, False, tup, "generated sub-magma (all bracketings)")
    return IdentityResult(which, True, None, "generated sub-magma (all bracketings)")


def _tuples(n: int, arity: int) -> Iterable[tuple[int, ...]]:
    if arity == 1:
        return ((x,) for x in range(n))
    return ((x, y) for x in range(n) for y in range(n))


def is_strictly_non_commutative(m: Magma) -> bool:
    """``xy != yx`` for every pair of distinct non-identity elements."""
    e = m.kind.identity
    t = m.table
    diff = t != t.T
    keep = np.ones(m.n, dtype=bool)
    if e is not None:
        keep[e] = False
    mask = keep[:, None] & keep[None, :] & ~np.eye(m.n, dtype=bool)
    return bool(diff[mask].all())


def is_strictly_non_alternative(m: Magma, side: str) -> bool:
    """The alternative law fails for every pair of distinct non-identity elements."""
    e = m.kind.identity
    t = m.table
    ar = np.arange(m.n)
    X, Y = np.meshgrid(ar, ar, indexing="ij")
    if side == "right":
        diff = t[t[X, Y], Y] != t[X, t[Y, Y]]
    elif side == "left":
        diff = t[t[X, X], Y] != t[X, t[X, Y]]
    else:
        raise ValueError("side must be 'left' or 'right'")
    keep = np.ones(m.n, dtype=bool)
    if e is not None:
        keep[e] = False
    mask = keep[:, None] & keep[None, :] & ~np.eye(m.n, dtype=bool)
    return bool(diff[mask].all())


# ---------------------------------------------------------------------------
# Associators, commutators and derived subloops
# ---------------------------------------------------------------------------


def associator(m: Magma, x: int, y: int, z: int) -> int:
    """The ``a`` with ``(xy)z = (x(yz)) a``."""
    t = m.table
    return int(m.left_division[t[x, t[y, z]], t[t[x, y], z]])


def commutator(m: Magma, x: int, y: int) -> int:
    """The ``c`` with ``xy = (yx) c``."""
    t = m.table
    return int(m.left_division[t[y, x], t[x, y]])


def associator_table(m: Magma) -> np.ndarray:
    """``A[x, y, z]`` = associator of ``(x, y, z)``."""
    t = m.table
    ld = m.left_division
    ar = np.arange(m.n)
    X, Y, Z = np.meshgrid(ar, ar, ar, indexing="ij")
    return ld[t[X, t[Y, Z]], t[t[X, Y], Z]]


def commutator_table(m: Magma) -> np.ndarray:
    t = m.table
    return m.left_division[t.T, t]


@dataclass(frozen=True)
class DerivedSubsetReport:
    role: str
    subset: tuple[int, ...]
    closed: bool
    witness: tuple[int, ...] | None = None

    def names(self, m: Magma) -> list[str]:
        return m.names(self.subset)


def subloop_generated(m: Magma, seeds: Iterable[int]) -> list[int]:
    """Close ``seeds`` (plus the identity) under the product and both divisions."""
    if not m.kind.is_loop:
        raise NotALoop("subloop generation needs a loop")
    tables = (m.table, m.left_division, m.right_division)
    inside = np.zeros(m.n, dtype=bool)
    start = set(int(s) for s in seeds) | {m.kind.identity}
    frontier = np.array(sorted(start), dtype=np.int64)
    inside[frontier] = True
    while frontier.size:
        members = np.flatnonzero(inside)
        prods = np.concatenate(
            [tb[np.ix_(frontier, members)].ravel() for tb in tables]
            + [tb[np.ix_(members, frontier)].ravel() for tb in tables]
        )
        prods = np.unique(prods)
        frontier = prods[~inside[prods]]
        inside[frontier] = True
    return np.flatnonzero(inside).tolist()


def derived_subloop(m: Magma, flavor: str) -> DerivedSubsetReport:
    """The subloop generated by all commutators (``flavor='commutator'``) or associators."""
    if not m.kind.is_loop:
        raise NotALoop("derived subloops need a loop")
    if flavor == "commutator":
        gens = np.unique(commutator_table(m)).tolist()
        role = "commutator_subloop"
    elif flavor == "associator":
        gens = np.unique(associator_table(m)).tolist()
        role = "associator_subloop"
    else:
        raise ValueError("flavor must be 'commutator' or 'associator'")
    sub = subloop_generated(m, gens)
    return DerivedSubsetReport(role, tuple(sub), m.is_closed(sub), tuple(int(g) for g in gens))


def commutant_centre_nuclei(m: Magma) -> dict[str, DerivedSubsetReport]:
    """Commutant (Moufang centre), left/middle/right nuclei, nucleus and centre."""
    if m.kind.identity is None:
        raise NoIdentity("commutant, nuclei and centre need an identity element")
    t = m.table
    n = m.n
    ar = np.arange(n)
    X, Y = np.meshgrid(ar, ar, indexing="ij")
    comm = [a for a in range(n) if np.array_equal(t[a], t[:, a])]
    left = [a for a in range(n) if np.array_equal(t[t[a, X], Y], t[a, t[X, Y]])]
    middle = [a for a in range(n) if np.array_equal(t[t[X, a], Y], t[X, t[a, Y]])]
    right = [a for a in range(n) if np.array_equal(t[t[X, Y], a], t[X, t[Y, a]])]
    nucleus = sorted(set(left) & set(middle) & set(right))
    centre = sorted(set(comm) & set(nucleus))

    def rep(role: str, s: list[int]) -> DerivedSubsetReport:
        return DerivedSubsetReport(role, tuple(s), m.is_closed(s) if s else False)

    return {
        "commutant": rep("commutant", comm),
        "moufang_centre": rep("moufang_centre", comm),
        "left_nucleus": rep("left_nucleus", left),
        "middle_nucleus": rep("middle_nucleus", middle),
        "right_nucleus": rep("right_nucleus", right),
        "nucleus": rep("nucleus", nucleus),
        "centre": rep("centre", centre),
    }


# ---------------------------------------------------------------------------
# Isotopes and G-loops
# ---------------------------------------------------------------------------


def principal_isotope(m: Magma, a: int, b: int) -> Magma:
    """``x * y = X Y`` where ``X a = x`` and ``b Y = y``."""
    if not m.kind.is_loop:
        raise NotALoop("principal isotopes are defined for loops")
    X = m.right_division[a]  # X[x] = the X with X∘a = x
    Y = m.left_division[b]   # Y[y] = the Y with b∘Y = y
    return Magma(m.elements, m.table[np.ix_(X, Y)])


def _generators(m: Magma) -> list[int]:
    """A small generating set chosen greedily by largest closure gain."""
    gens: list[int] = []
    current: set[int] = set()
    while len(current) < m.n:
        best, best_set = None, current
        for x in range(m.n):
            if x in current:
                continue
            s = set(generated_closure(m, gens + [x]))
            if len(s) > len(best_set):
                best, best_set = x, s
        gens.append(best)  # type: ignore[arg-type]
        current = best_set
    return gens


def find_isomorphism(a: Magma, b: Magma) -> list[int] | None:
    """Backtracking search for an isomorphism; returns ``f`` with ``f[x]`` in ``b``."""
    if a.n != b.n:
        return None
    n = a.n
    ka, kb = a.kind, b.kind
    if (ka.associative, ka.commutative, ka.latin_square, ka.has_identity) != (
        kb.associative,
        kb.commutative,
        kb.latin_square,
        kb.has_identity,
    ):
        return None
    if sorted(_profile(a)) != sorted(_profile(b)):
        return None
    prof_a, prof_b = _profile(a), _profile(b)
    gens = _generators(a)
    ta, tb = a.table, b.table

    def extend(f: list[int]) -> list[int] | None:
        # propagate f along products until fixed point; detect conflicts
        changed = True
        while changed:
            changed = False
            known = [x for x in range(n) if f[x] >= 0]
            for x in known:
                for y in known:
                    p, q = ta[x, y], tb[f[x], f[y]]
                    if f[p] < 0:
                        if q in used:
                            return None
                        f[p] = int(q)
                        used.add(int(q))
                        changed = True
                    elif f[p] != q:
                        return None
        return f

    def search(k: int, f: list[int]) -> list[int] | None:
        nonlocal used
        if k == len(gens):
            return f if all(v >= 0 for v in f) else None
        g = gens[k]
        if f[g] >= 0:
            return search(k + 1, f)
        for cand in range(n):
            if cand in used or prof_b[cand] != prof_a[g]:
                continue
            saved_used = set(used)
            trial = list(f)
            trial[g] = cand
            used.add(cand)
            got = extend(trial)
            if got is not None:
                res = search(k + 1, got)
                if res is not None:
                    return res
            used = saved_used
        return None

    used: set[int] = set()
    f0 = [-1] * n
    return search(0, f0)


def _profile(m: Magma) -> list[tuple]:
    """Isomorphism-invariant per-element signature."""
    t = m.table
    out = []
    for x in range(m.n):
        seq = []
        p = x
        for _ in range(m.n + 1):
            seq.append(p)
            p = int(t[p, x])
        out.append((len(set(seq)), int(t[x, x]) == x, int(np.sum(t[x] == t[:, x]))))
    return out


def are_isomorphic(a: Magma, b: Magma) -> bool:
    return find_isomorphism(a, b) is not None


@dataclass(frozen=True)
class GLoopResult:
    holds: bool
    failing: tuple[int, int] | None = None


def is_g_loop(m: Magma, cap: int = DEFAULT_G_LOOP_CAP) -> GLoopResult:
    """Is ``m`` isomorphic to every principal isotope?"""
    if not m.kind.is_loop:
        raise NotALoop("G-loop test needs a loop")
    if m.n > cap:
        raise CapExceeded(f"G-loop test is capped at n <= {cap} (got {m.n})")
    for a in range(m.n):
        for b in range(m.n):
            if not are_isomorphic(m, principal_isotope(m, a, b)):
                return GLoopResult(False, (a, b))
    return GLoopResult(True)
