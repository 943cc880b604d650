"""Sub-objects of a single magma and the single-structure Smarandache verdicts.

Closed subsets are found by a walk over the lattice of closed
subsets: start from the closure of every singleton, and from each closed set
``C`` visit ``closure(C ∪ {x})`` for every ``x`` outside ``C``.  Every closed
set ``S`` is reached this way (add its elements one at a time; each
intermediate closure stays inside ``S``), so the walk is complete while its
cost grows with the number of closed subsets rather than with ``2^n``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, NotAGroup, OverlapViolation
from .magma import AlgebraKind, Magma, closure_mask, generated_closure

DEFAULT_MAX_EXHAUSTIVE = 128
DEFAULT_MAX_SUBSETS = 200_000

ROLE_FILTERS = ("subgroup", "subloop", "subsemigroup", "subgroupoid")
LABEL_FILTERS = ("group", "monoid", "semigroup", "loop", "quasigroup", "magma")


def max_exhaustive() -> int:
    """Element cap for exhaustive enumeration (env ``MAGMA_MAX_EXHAUSTIVE``)."""
    raw = os.environ.get("MAGMA_MAX_EXHAUSTIVE")
    return int(raw) if raw else DEFAULT_MAX_EXHAUSTIVE


@dataclass(frozen=True)
class SubMagma:
    """A closed subset of ``parent`` with its induced classification."""

    parent: Magma = field(repr=False, compare=False, hash=False)
    subset: tuple[int, ...]
    kind: AlgebraKind = field(repr=False, compare=False, hash=False)
    roles: frozenset[str] = field(compare=False, hash=False)
    local_identity: int | None = field(default=None, compare=False, hash=False)

    @property
    def proper(self) -> bool:
        return len(self.subset) < self.parent.n

    @property
    def size(self) -> int:
        return len(self.subset)

    def names(self) -> list[str]:
        return self.parent.names(self.subset)

    def induced(self) -> Magma:
        return self.parent.restrict(self.subset)


class SubMagmaList(list):
    """A list of :class:`SubMagma` carrying a completeness flag."""

    complete: bool = True


def make_submagma(m: Magma, subset: Iterable[int]) -> SubMagma:
    """Wrap a closed subset, computing induced kind and roles."""
    ids = tuple(sorted(set(int(i) for i in subset)))
    induced = m.restrict(ids)
    k = induced.kind
    roles = {"subgroupoid"}
    if k.associative:
        roles.add("subsemigroup")
    if k.is_loop:
        roles.add("subloop")
    if k.is_group:
        roles.add("subgroup")
    if len(ids) < m.n:
        t = m.table
        inside = np.zeros(m.n, dtype=bool)
        inside[list(ids)] = True
        left = bool(inside[t[:, list(ids)]].all())
        right = bool(inside[t[list(ids), :]].all())
        if left:
            roles.add("left_ideal")
        if right:
            roles.add("right_ideal")
        if left and right:
            roles.add("ideal")
    local = ids[k.identity] if k.identity is not None else None
    return SubMagma(m, ids, k, frozenset(roles), local)


def _mask_key(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def parse_mode(mode: str | tuple | None) -> tuple[str, int]:
    """Accept ``"exhaustive"``, ``"gen:K"``, ``("generated", K)``."""
    if mode is None or mode == "exhaustive":
        return ("exhaustive", 0)
    if isinstance(mode, tuple):
        return ("generated", int(mode[1]))
    if isinstance(mode, str) and (mode.startswith("gen:") or mode.startswith("generated:")):
        return ("generated", int(mode.split(":", 1)[1]))
    raise ValueError(f"unknown enumeration mode {mode!r}; use 'exhaustive' or 'gen:K'")


@lru_cache(maxsize=256)
def _closed_subsets_cached(m: Magma, mode: tuple[str, int], cap: int, max_subsets: int) -> tuple[tuple[tuple[int, ...], ...], bool]:
    kind, k = mode
    n = m.n
    t = m.table
    found: dict[int, np.ndarray] = {}
    if kind == "generated":
        for size in range(1, min(k, n) + 1):
            for gens in itertools.combinations(range(n), size):
                mask = closure_mask(t, np.array(gens, dtype=np.int64))
                key = _mask_key(mask)
                if key not in found:
                    found[key] = mask
                    if len(found) > max_subsets:
                        raise CapExceeded(f"more than {max_subsets} closed subsets")
        complete = k >= n
    else:
        if n > cap:
            raise CapExceeded(
                f"exhaustive enumeration is capped at n <= {cap} (got {n}); "
                "use generated mode (gen:K) or raise MAGMA_MAX_EXHAUSTIVE"
            )
        queue: list[np.ndarray] = []
        for x in range(n):
            mask = closure_mask(t, np.array([x], dtype=np.int64))
            key = _mask_key(mask)
            if key not in found:
                found[key] = mask
                queue.append(mask)
        while queue:
            base = queue.pop()
            for x in np.flatnonzero(~base):
                mask = closure_mask(t, np.array([x], dtype=np.int64), base)
                key = _mask_key(mask)
                if key not in found:
                    found[key] = mask
                    queue.append(mask)
                    if len(found) > max_subsets:
                        raise CapExceeded(
                            f"more than {max_subsets} closed subsets; use generated mode (gen:K)"
                        )
        complete = True
    subsets = sorted((tuple(np.flatnonzero(v).tolist()) for v in found.values()), key=lambda s: (len(s), s))
    return tuple(subsets), complete


def closed_subsets(
    m: Magma, mode: str | tuple | None = "exhaustive", cap: int | None = None, max_subsets: int = DEFAULT_MAX_SUBSETS
) -> tuple[list[tuple[int, ...]], bool]:
    """All non-empty closed subsets ordered by (size, ids), plus completeness."""
    subsets, complete = _closed_subsets_cached(
        m, parse_mode(mode), max_exhaustive() if cap is None else cap, max_subsets
    )
    return list(subsets), complete


def _matches(sm: SubMagma, required: str | None) -> bool:
    if required is None:
        return True
    if required in ROLE_FILTERS:
        return required in sm.roles
    if required in LABEL_FILTERS:
        return sm.kind.label == required
    raise ValueError(f"unknown kind filter {required!r}")


def enumerate_submagmas(
    m: Magma,
    required_kind: str | None = None,
    mode: str | tuple | None = "exhaustive",
    cap: int | None = None,
    max_subsets: int = DEFAULT_MAX_SUBSETS,
) -> SubMagmaList:
    """Closed subsets (whole carrier included), optionally filtered by kind.

    ``required_kind`` is a role (``subgroup``, ``subloop``, ``subsemigroup``,
    ``subgroupoid``) or an exact label (``group``, ``monoid``, ...).
    """
    if required_kind is not None and required_kind not in ROLE_FILTERS + LABEL_FILTERS:
        raise ValueError(f"unknown kind filter {required_kind!r}")
    subsets, complete = closed_subsets(m, mode, cap, max_subsets)
    out = SubMagmaList(sm for sm in (make_submagma(m, s) for s in subsets) if _matches(sm, required_kind))
    out.complete = complete
    return out


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


def ideals(m: Magma, side: str = "two_sided", mode: str | tuple | None = "exhaustive") -> SubMagmaList:
    """Proper subgroupoids absorbing products from the given side(s)."""
    role = {"left": "left_ideal", "right": "right_ideal", "two_sided": "ideal"}.get(side)
    if role is None:
        raise ValueError("side must be 'left', 'right' or 'two_sided'")
    subs = enumerate_submagmas(m, None, mode)
    out = SubMagmaList(s for s in subs if role in s.roles)
    out.complete = subs.complete
    return out


# ---------------------------------------------------------------------------
# Normality
# ---------------------------------------------------------------------------


def _set(a: np.ndarray) -> frozenset[int]:
    return frozenset(np.unique(a).tolist())


def is_normal(m: Magma, subset: Sequence[int], flavor: str) -> bool:
    """Normality of a closed subset.

    * ``subgroup``: ``xN = Nx`` for every ``x`` (parent must be a group).
    * ``subloop`` / ``subgroupoid``: ``xV = Vx``, ``(Vx)y = V(xy)`` and
      ``y(xV) = (yx)V`` for all ``x, y`` of the parent.
    """
    t = m.table
    s = np.array(sorted(set(subset)), dtype=np.int64)
    if flavor == "subgroup":
        if not m.kind.is_group:
            raise NotAGroup("normal subgroups need a group parent")
        return all(_set(t[x, s]) == _set(t[s, x]) for x in range(m.n))
    if flavor not in ("subloop", "subgroupoid"):
        raise ValueError("flavor must be 'subgroup', 'subloop' or 'subgroupoid'")
    for x in range(m.n):
        if _set(t[x, s]) != _set(t[s, x]):
            return False
    for x in range(m.n):
        vx = t[s, x]
        xv = t[x, s]
        for y in range(m.n):
            if _set(t[vx, y]) != _set(t[s, t[x, y]]):
                return False
            if _set(t[y, xv]) != _set(t[t[y, x], s]):
                return False
    return True


def normal_substructures(m: Magma, flavor: str, mode: str | tuple | None = "exhaustive") -> SubMagmaList:
    """Normal subgroups / subloops / subgroupoids (the whole carrier included)."""
    role = {"subgroup": "subgroup", "subloop": "subloop", "subgroupoid": "subgroupoid"}.get(flavor)
    if role is None:
        raise ValueError("flavor must be 'subgroup', 'subloop' or 'subgroupoid'")
    if flavor == "subgroup" and not m.kind.is_group:
        raise NotAGroup("normal subgroups need a group parent")
    subs = enumerate_submagmas(m, role, mode)
    out = SubMagmaList(
        SubMagma(s.parent, s.subset, s.kind, s.roles | {"normal"}, s.local_identity)
        for s in subs
        if is_normal(m, s.subset, flavor)
    )
    out.complete = subs.complete
    return out


def is_simple(m: Magma, flavor: str, mode: str | tuple | None = "exhaustive") -> bool:
    """No normal substructure other than the whole and one-element ones."""
    return all(s.size == m.n or s.size == 1 for s in normal_substructures(m, flavor, mode))


# ---------------------------------------------------------------------------
# Conjugacy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyVerdict:
    conjugate: bool
    witness: int | None = None
    side: str | None = None  # "conjugation" for groups; "left", "right" or "both" for groupoids


def conjugacy(m: Magma, h: Sequence[int] | SubMagma, k: Sequence[int] | SubMagma, flavor: str = "group") -> ConjugacyVerdict:
    """Group conjugacy ``H = gKg^-1`` or groupoid conjugacy ``H = xK`` / ``Kx`` with ``x ∈ H``."""
    hs = frozenset(h.subset if isinstance(h, SubMagma) else h)
    ks = frozenset(k.subset if isinstance(k, SubMagma) else k)
    t = m.table
    karr = np.array(sorted(ks), dtype=np.int64)
    if flavor == "group":
        if not m.kind.is_group:
            raise NotAGroup("group conjugacy needs a group parent")
        from .identities import inverse_map

        inv = inverse_map(m)
        for g in range(m.n):
            if _set(t[t[g, karr], inv[g]]) == hs:
                return ConjugacyVerdict(True, g, "conjugation")
        return ConjugacyVerdict(False)
    if flavor != "groupoid":
        raise ValueError("flavor must be 'group' or 'groupoid'")
    if hs & ks:
        raise OverlapViolation("groupoid conjugacy needs disjoint subgroupoids")
    for x in sorted(hs):
        left = _set(t[x, karr]) == hs
        right = _set(t[karr, x]) == hs
        if left or right:
            side = "both" if left and right else ("left" if left else "right")
            return ConjugacyVerdict(True, x, side)
    return ConjugacyVerdict(False)


def conjugate_pairs(m: Magma) -> list[tuple[int, int, int, int]]:
    """Pairs ``a != b`` with ``a = bx`` (or ``xb``) and ``b = ay`` (or ``ya``).

    Each entry is ``(a, b, x, y)`` with the first witnesses found in id order.
    """
    t = m.table
    out = []
    for a in range(m.n):
        for b in range(m.n):
            if a == b:
                continue
            xs = np.flatnonzero((t[b] == a) | (t[:, b] == a))
            ys = np.flatnonzero((t[a] == b) | (t[:, a] == b))
            if xs.size and ys.size:
                out.append((a, b, int(xs[0]), int(ys[0])))
    return out


# ---------------------------------------------------------------------------
# Smarandache analysis of one magma
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmarandacheVerdict:
    """``verdict`` uses witnesses of size >= 2; ``permissive`` also admits singletons."""

    name: str
    verdict: bool
    permissive: bool
    witnesses: tuple[SubMagma, ...] = ()
    note: str = ""


def _bits(ids: Iterable[int]) -> int:
    out = 0
    for i in ids:
        out |= 1 << int(i)
    return out


def is_cyclic_group(sm: SubMagma | Magma) -> bool:
    m = sm.induced() if isinstance(sm, SubMagma) else sm
    return any(len(generated_closure(m, [x])) == m.n for x in range(m.n))


def is_s_subgroupoid(m: Magma, subset: Iterable[int]) -> bool:
    """A closed subset containing a proper closed associative subset."""
    ids = sorted(set(subset))
    if not ids or not m.is_closed(ids):
        return False
    sub = m.restrict(ids)
    return any(
        "subsemigroup" in s.roles and s.proper for s in enumerate_submagmas(sub, "subsemigroup")
    )


@dataclass
class SAnalysis:
    magma: Magma
    verdicts: dict[str, SmarandacheVerdict]
    largest_subgroups: tuple[SubMagma, ...]
    hyper_subsemigroups: tuple[SubMagma, ...]
    complete: bool

    def __getitem__(self, name: str) -> SmarandacheVerdict:
        return self.verdicts[name]

    def as_list(self) -> list[SmarandacheVerdict]:
        return list(self.verdicts.values())


def proper_subgroups(m: Magma, mode: str | tuple | None = "exhaustive") -> list[SubMagma]:
    return [s for s in enumerate_submagmas(m, "subgroup", mode) if s.proper]


def s_analysis(m: Magma, mode: str | tuple | None = "exhaustive") -> SAnalysis:
    """Every single-structure Smarandache property with witnesses."""
    subs = enumerate_submagmas(m, None, mode)
    proper = [s for s in subs if s.proper]
    groups = [s for s in proper if "subgroup" in s.roles]
    strict_groups = [s for s in groups if s.size >= 2]
    semis = [s for s in proper if "subsemigroup" in s.roles]
    strict_semis = [s for s in semis if s.size >= 2]
    k = m.kind
    v: dict[str, SmarandacheVerdict] = {}

    def put(name: str, strict: bool, permissive: bool, wit: Sequence[SubMagma], note: str = "") -> None:
        v[name] = SmarandacheVerdict(name, strict, permissive, tuple(wit), note)

    s_semi = k.associative and bool(strict_groups)
    put("s_semigroup", s_semi, k.associative and bool(groups), strict_groups if k.associative else [])
    put("s_groupoid", bool(strict_semis), bool(semis), strict_semis)
    put("s_loop", k.is_loop and bool(strict_groups), k.is_loop and bool(groups), strict_groups if k.is_loop else [])

    group_scope = k.associative or k.is_loop
    if group_scope:
        comm = [s for s in strict_groups if s.kind.commutative]
        cyc = [s for s in strict_groups if is_cyclic_group(s)]
        has = bool(strict_groups)
        put("s_commutative", has and len(comm) == len(strict_groups), bool(groups) and all(s.kind.commutative for s in groups), comm)
        put("s_weakly_commutative", bool(comm), bool(comm) or bool(groups), comm)
        put("s_cyclic", has and len(cyc) == len(strict_groups), bool(groups) and all(is_cyclic_group(s) for s in groups), cyc)
        put("s_weakly_cyclic", bool(cyc), bool(cyc) or bool(groups), cyc)
    else:
        comm = [s for s in strict_semis if s.kind.commutative]
        note = "groupoid reading: some proper subsemigroup is commutative"
        put("s_commutative", bool(comm), bool(comm) or any(s.kind.commutative for s in semis), comm, note)
        put("s_weakly_commutative", bool(comm), bool(comm) or any(s.kind.commutative for s in semis), comm, note)
        cyc = [s for s in strict_groups if is_cyclic_group(s)]
        put("s_cyclic", False, False, [], "defined for S-semigroups and S-loops only")
        put("s_weakly_cyclic", False, False, [], "defined for S-semigroups and S-loops only")

    # largest proper subgroup(s) and hyper subsemigroups (strict containment)
    largest: list[SubMagma] = []
    hyper: list[SubMagma] = []
    if groups:
        top = max(s.size for s in groups)
        largest = [s for s in groups if s.size == top]
        for g in largest:
            gs = set(g.subset)
            hyper.extend(s for s in semis if gs < set(s.subset))
    hyper = sorted({s.subset: s for s in hyper}.values(), key=lambda s: (s.size, s.subset))
    s_simple = s_semi and not hyper
    put("s_simple", s_simple, k.associative and bool(groups) and not hyper, largest, "hyper means strict containment of the largest subgroup")

    # S-normal groupoid: an S-subgroupoid V with aV and Va S-subgroupoids for all a.
    # Closed subsets of a closed X are exactly the parent's closed subsets inside X,
    # so S-subgroupoid tests reduce to bitmask containment against ``semi_masks``.
    t = m.table
    semi_masks = [_bits(s.subset) for s in subs if "subsemigroup" in s.roles]
    closed_masks = {_bits(s.subset) for s in subs}

    def s_sub(ids: Iterable[int]) -> bool:
        x = _bits(ids)
        return x in closed_masks and any(sm & x == sm and sm != x for sm in semi_masks)

    normal_w: list[SubMagma] = []
    semi_normal_w: list[SubMagma] = []
    for s in proper:
        if not s_sub(s.subset):
            continue
        arr = np.array(s.subset)
        both = one = True
        for a in range(m.n):
            av = s_sub(t[a, arr].tolist())
            va = s_sub(t[arr, a].tolist())
            both &= av and va
            one &= av or va
            if not one:
                break
        if both:
            normal_w.append(s)
        if one:
            semi_normal_w.append(s)
    put("s_normal_groupoid", bool(normal_w), bool(normal_w), normal_w)
    put("s_semi_normal_groupoid", bool(semi_normal_w), bool(semi_normal_w), semi_normal_w, "one-sided reading: aV or Va")

    idem = [s for s in strict_semis if all(t[x, x] == x for x in s.subset)]
    put(
        "s_idempotent",
        bool(strict_semis) and len(idem) == len(strict_semis),
        bool(semis) and all(all(t[x, x] == x for x in s.subset) for s in semis),
        idem,
        "every proper subsemigroup witness consists of idempotents",
    )
    return SAnalysis(m, v, tuple(largest), tuple(hyper), subs.complete)


def s_right_coset(m: Magma, h: Sequence[int], a: int) -> tuple[list[int], list[int], bool]:
    """``Ha``, ``aH`` and whether they coincide (a Smarandache coset)."""
    t = m.table
    arr = np.array(sorted(set(h)), dtype=np.int64)
    ha = sorted(_set(t[arr, a]))
    ah = sorted(_set(t[a, arr]))
    return ha, ah, ha == ah
