"""N-structures: finite unions of magmas, each carrying its own operation.

An :class:`NStructure` is an ordered list of labelled components sharing one
namespace (two elements are the same iff their names agree).  The mixed kind
(``n_group``, ``n_glsg``, ...) is read off the coarse kinds of the components,
and the analyses below (Lagrange, Sylow, Cauchy, cosets, quotients,
Smarandache verdicts, homomorphisms) all work slot by slot.

Counting questions about sub-structures are answered without materialising
the cartesian product of per-slot choices whenever the components are
pairwise disjoint: the order of a selection is then the sum of its slot sizes,
so a dynamic programme over slot sizes suffices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .catalog import factorize
from .errors import (
    CapExceeded,
    ElementAbsent,
    ImproperComponents,
    InsufficientMix,
    InvalidParams,
    KindMismatch,
    MapIncomplete,
    NotAGroupComponent,
    NotNormal,
)
from .magma import Magma, OrderResult, Periodic, element_order
from .substructure import (
    SAnalysis,
    SubMagma,
    conjugacy,
    enumerate_submagmas,
    is_cyclic_group,
    is_normal,
    make_submagma,
    s_analysis,
)

COARSE = ("group", "loop", "semigroup", "groupoid")
_LETTER = {"group": "g", "loop": "l", "semigroup": "s", "groupoid": "gr"}
REQUIREMENT_LETTERS = ("g", "l", "s", "gr", "-")

#: mixed-kind label for each set of coarse component kinds present
_NKIND_TABLE: dict[frozenset[str], str] = {
    frozenset({"g"}): "n_group",
    frozenset({"l"}): "n_loop",
    frozenset({"g", "l"}): "n_loop",
    frozenset({"s"}): "n_semigroup",
    frozenset({"gr"}): "n_groupoid",
    frozenset({"s", "gr"}): "n_groupoid",
    frozenset({"g", "s"}): "n_group_semigroup",
    frozenset({"g", "gr"}): "n_loop_groupoid",
    frozenset({"l", "gr"}): "n_loop_groupoid",
    frozenset({"g", "l", "gr"}): "n_loop_groupoid",
    frozenset({"l", "s"}): "n_gls",
    frozenset({"g", "l", "s"}): "n_gls",
    frozenset({"g", "s", "gr"}): "n_gsg",
    frozenset({"l", "s", "gr"}): "n_lsg",
    frozenset({"g", "l", "s", "gr"}): "n_glsg",
}
NKINDS = tuple(sorted(set(_NKIND_TABLE.values())))

#: (kinds that must be present, kinds allowed) for a declared label;
#: ``"gl"`` means "a group or a loop".
_NKIND_NEEDS: dict[str, tuple[tuple[str, ...], frozenset[str]]] = {
    "n_group": (("g",), frozenset({"g"})),
    "n_loop": (("l",), frozenset({"g", "l"})),
    "n_semigroup": (("s",), frozenset({"s"})),
    "n_groupoid": (("gr",), frozenset({"s", "gr"})),
    "n_group_semigroup": (("g", "s"), frozenset({"g", "s"})),
    "n_loop_groupoid": (("gl", "gr"), frozenset({"g", "l", "gr"})),
    "n_gls": (("l", "s"), frozenset({"g", "l", "s"})),
    "n_gsg": (("g", "s", "gr"), frozenset({"g", "s", "gr"})),
    "n_lsg": (("l", "s", "gr"), frozenset({"l", "s", "gr"})),
    "n_glsg": (("g", "l", "s", "gr"), frozenset({"g", "l", "s", "gr"})),
}

DEFAULT_MAX_COMBINATIONS = 200_000


# ---------------------------------------------------------------------------
# Assembly and classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NStructure:
    """Validated N-structure; build it with :func:`assemble`."""

    components: tuple[tuple[str, Magma], ...]
    declared_kind: str | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.components)

    @property
    def magmas(self) -> tuple[Magma, ...]:
        return tuple(m for _, m in self.components)

    def __getitem__(self, i: int) -> Magma:
        return self.components[i][1]

    @property
    def elements(self) -> tuple[str, ...]:
        """Distinct element names in first-occurrence order."""
        seen: dict[str, None] = {}
        for m in self.magmas:
            for x in m.elements:
                seen.setdefault(x, None)
        return tuple(seen)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def component_orders(self) -> tuple[int, ...]:
        return tuple(m.n for m in self.magmas)

    @property
    def disjoint(self) -> bool:
        return self.order == sum(self.component_orders)

    @property
    def kinds(self) -> tuple[str, ...]:
        """Coarse kind of each component."""
        return tuple(m.kind.coarse for m in self.magmas)

    @property
    def nkind(self) -> str:
        return classify_n(self)

    def slots_containing(self, name: str) -> list[int]:
        return [i for i, m in enumerate(self.magmas) if name in m.elements]

    def default_requirement(self) -> tuple[str, ...]:
        return tuple(_LETTER[k] for k in self.kinds)

    def submagmas(self, slot: int, mode: str | tuple | None = "exhaustive") -> list[SubMagma]:
        """Every closed subset of a component (cached per slot and mode)."""
        key = ("subs", slot, mode)
        if key not in self._cache:
            try:
                self._cache[key] = list(enumerate_submagmas(self[slot], None, mode))
            except CapExceeded as exc:
                raise CapExceeded(f"component {self.labels[slot]}: {exc}", component=self.labels[slot]) from None
        return self._cache[key]

    def s_analysis(self, slot: int, mode: str | tuple | None = "exhaustive") -> SAnalysis:
        key = ("sa", slot, mode)
        if key not in self._cache:
            try:
                self._cache[key] = s_analysis(self[slot], mode)
            except CapExceeded as exc:
                raise CapExceeded(f"component {self.labels[slot]}: {exc}", component=self.labels[slot]) from None
        return self._cache[key]


def _as_pairs(components: Iterable) -> list[tuple[str, Magma]]:
    out = []
    for i, c in enumerate(components, start=1):
        if isinstance(c, Magma):
            out.append((f"G{i}", c))
        else:
            lbl, m = c
            if not isinstance(m, Magma):
                raise TypeError(f"component {lbl!r} is not a Magma")
            out.append((str(lbl), m))
    return out


def assemble(components: Iterable, declared_kind: str | None = None) -> NStructure:
    """Validate components and build an :class:`NStructure`.

    ``components`` holds :class:`Magma` objects or ``(label, Magma)`` pairs.
    """
    pairs = _as_pairs(components)
    if len(pairs) < 2:
        raise InvalidParams(f"an N-structure needs at least 2 components (got {len(pairs)})")
    labels = [lbl for lbl, _ in pairs]
    if len(set(labels)) != len(labels):
        raise InvalidParams(f"component labels must be unique: {labels}")
    sets = [frozenset(m.elements) for _, m in pairs]
    for i, j in itertools.permutations(range(len(pairs)), 2):
        if sets[i] <= sets[j]:
            raise ImproperComponents(
                f"component {labels[i]} is contained in component {labels[j]}; "
                "components must not contain one another",
                pair=(labels[i], labels[j]),
            )
    ns = NStructure(tuple(pairs), declared_kind)
    if declared_kind is not None:
        check_declared_kind(ns, declared_kind)
    return ns


def classify_n(ns: NStructure) -> str:
    """Mixed-kind label from the coarse kinds of the components."""
    return _NKIND_TABLE[frozenset(_LETTER[k] for k in ns.kinds)]


def check_declared_kind(ns: NStructure, declared: str) -> None:
    if declared not in _NKIND_NEEDS:
        raise InvalidParams(f"unknown N-kind {declared!r}; expected one of {NKINDS}")
    needs, allowed = _NKIND_NEEDS[declared]
    present = {_LETTER[k] for k in ns.kinds}
    missing = [k for k in needs if not (present & ({"g", "l"} if k == "gl" else {k}))]
    extra = sorted(present - allowed)
    if missing or extra:
        parts = []
        if missing:
            parts.append("missing " + ", ".join(missing))
        if extra:
            parts.append("not allowed " + ", ".join(extra))
        raise InsufficientMix(
            f"declared kind {declared} does not fit component kinds {list(ns.kinds)} ({'; '.join(parts)})"
        )


# ---------------------------------------------------------------------------
# Sub-N-structures
# ---------------------------------------------------------------------------


def parse_requirement(ns: NStructure, requirement: Sequence[str] | str | None) -> tuple[str, ...]:
    """Normalise a requirement vector; ``None`` means each component's own kind."""
    if requirement is None:
        return ns.default_requirement()
    req = tuple(r.strip() for r in requirement.split(",")) if isinstance(requirement, str) else tuple(requirement)
    if len(req) != ns.n:
        raise InvalidParams(f"requirement vector has {len(req)} entries for {ns.n} components")
    bad = [r for r in req if r not in REQUIREMENT_LETTERS]
    if bad:
        raise InvalidParams(f"unknown requirement letters {bad}; use g, l, s, gr or -")
    return req


def slot_satisfies(sm: SubMagma, letter: str) -> bool:
    """Whether a closed subset meets a slot requirement."""
    k = sm.kind
    if letter == "g":
        return k.is_group
    if letter == "l":
        return k.is_loop
    if letter == "s":
        return k.associative
    if letter == "gr":
        return True
    raise InvalidParams(f"unknown requirement letter {letter!r}")


@dataclass(frozen=True)
class SubNStructure:
    """A per-slot selection; ``None`` marks an absent slot."""

    parent: NStructure = field(repr=False, compare=False, hash=False)
    slots: tuple[SubMagma | None, ...]
    requirement: tuple[str, ...] = field(compare=False)

    @property
    def full(self) -> bool:
        return all(s is not None for s in self.slots)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(0 if s is None else s.size for s in self.slots)

    @property
    def n_order(self) -> int:
        """Sum of slot sizes."""
        return sum(self.sizes)

    @property
    def order(self) -> int:
        """Distinct element names over the selected slots."""
        return len({x for s in self.slots if s is not None for x in s.names()})

    @property
    def proper(self) -> bool:
        return not all(s is not None and s.size == s.parent.n for s in self.slots)

    @property
    def nontrivial(self) -> bool:
        return any(sz >= 2 for sz in self.sizes)

    def names(self) -> list[list[str] | None]:
        return [None if s is None else s.names() for s in self.slots]

    def pseudo_divides(self) -> bool:
        return pseudo_divides(self)


def pseudo_divides(h: SubNStructure) -> bool:
    """Componentwise divisibility ``o(H_i) | o(G_i)`` over the present slots."""
    return all(s is None or s.parent.n % s.size == 0 for s in h.slots)


def sub_from_names(
    ns: NStructure, slots: Sequence[Iterable[str] | None], requirement: Sequence[str] | str | None = None
) -> SubNStructure:
    """Build a selection from element names per slot (validated as closed)."""
    if len(slots) != ns.n:
        raise InvalidParams(f"selection has {len(slots)} slots for {ns.n} components")
    chosen: list[SubMagma | None] = []
    for i, names in enumerate(slots):
        if names is None:
            chosen.append(None)
            continue
        m = ns[i]
        try:
            ids = m.ids(names)
        except KeyError as exc:
            raise ElementAbsent(f"component {ns.labels[i]}: {exc.args[0]}") from None
        if not ids or not m.is_closed(ids):
            raise InvalidParams(f"slot {ns.labels[i]}: {sorted(names)} is not closed")
        chosen.append(make_submagma(m, ids))
    req = parse_requirement(ns, requirement) if requirement is not None else tuple(
        "-" if c is None else _LETTER[c.kind.coarse] for c in chosen
    )
    return SubNStructure(ns, tuple(chosen), req)


def verify_sub(h: SubNStructure) -> bool:
    """Independent recheck: each present slot closed and of its required kind."""
    for s, letter in zip(h.slots, h.requirement):
        if letter == "-":
            if s is not None:
                return False
            continue
        if s is None:
            return False
        m = s.parent
        if not m.is_closed(s.subset):
            return False
        if not slot_satisfies(make_submagma(m, s.subset), letter):
            return False
    return True


def _slot_options(ns: NStructure, req: tuple[str, ...], mode) -> list[list[SubMagma | None]]:
    opts: list[list[SubMagma | None]] = []
    for i, letter in enumerate(req):
        if letter == "-":
            opts.append([None])
        else:
            opts.append([s for s in ns.submagmas(i, mode) if slot_satisfies(s, letter)])
    return opts


def combination_count(ns: NStructure, requirement=None, mode="exhaustive") -> int:
    req = parse_requirement(ns, requirement)
    return int(np.prod([len(o) for o in _slot_options(ns, req, mode)], dtype=object))


def iter_sub_nstructures(
    ns: NStructure, requirement: Sequence[str] | str | None = None, mode: str | tuple | None = "exhaustive"
) -> Iterator[SubNStructure]:
    """Lazily yield every slot combination meeting the requirement vector."""
    req = parse_requirement(ns, requirement)
    for combo in itertools.product(*_slot_options(ns, req, mode)):
        yield SubNStructure(ns, tuple(combo), req)


def find_sub_nstructures(
    ns: NStructure,
    requirement: Sequence[str] | str | None = None,
    mode: str | tuple | None = "exhaustive",
    cap: int = DEFAULT_MAX_COMBINATIONS,
) -> list[SubNStructure]:
    """All sub-N-structures matching ``requirement``, ordered by (N-order, slots).

    Raises :class:`CapExceeded` (naming the largest slot) when the number of
    combinations exceeds ``cap``.
    """
    req = parse_requirement(ns, requirement)
    opts = _slot_options(ns, req, mode)
    total = int(np.prod([len(o) for o in opts], dtype=object))
    if total > cap:
        worst = max(range(ns.n), key=lambda i: len(opts[i]))
        raise CapExceeded(
            f"{total} sub-structure combinations exceed the cap {cap} "
            f"(component {ns.labels[worst]} alone contributes {len(opts[worst])})",
            component=ns.labels[worst],
        )
    seen: dict[tuple, SubNStructure] = {}
    for combo in itertools.product(*opts):
        key = tuple(None if s is None else s.subset for s in combo)
        seen.setdefault(key, SubNStructure(ns, tuple(combo), req))
    return sorted(seen.values(), key=lambda h: (h.n_order, [(-1,) if s is None else s.subset for s in h.slots]))


# ---------------------------------------------------------------------------
# Order spectrum (shared by the Lagrange and Sylow analyses)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderWitness:
    """One proper, nontrivial sub-structure realising ``order``."""

    order: int
    divides: bool
    sub: SubNStructure
    count: int  # how many selections realise this order


def order_spectrum(
    ns: NStructure,
    requirement: Sequence[str] | str | None = None,
    mode: str | tuple | None = "exhaustive",
    cap: int = DEFAULT_MAX_COMBINATIONS,
) -> dict[int, OrderWitness]:
    """Achievable orders of proper nontrivial sub-structures, one witness each.

    "Nontrivial" means some slot has at least two elements.  With pairwise
    disjoint components the spectrum is computed by a dynamic programme over
    slot sizes; otherwise combinations are enumerated (subject to ``cap``).
    """
    req = parse_requirement(ns, requirement)
    opts = _slot_options(ns, req, mode)
    o_g = ns.order
    out: dict[int, OrderWitness] = {}
    if ns.disjoint:
        # state (sum, some slot >= 2, every slot full) -> [count, first choice]
        states: dict[tuple[int, bool, bool], list] = {(0, False, True): [1, ()]}
        for i, slot_opts in enumerate(opts):
            grouped: dict[tuple[int, bool], list] = {}
            for s in slot_opts:
                size = 0 if s is None else s.size
                full = s is not None and s.size == ns[i].n
                g = grouped.setdefault((size, full), [0, s])
                g[0] += 1
            nxt: dict[tuple[int, bool, bool], list] = {}
            for (tot, ge2, allf), (cnt, choice) in states.items():
                for (size, full), (mult, s) in grouped.items():
                    key = (tot + size, ge2 or size >= 2, allf and full)
                    if key in nxt:
                        nxt[key][0] += cnt * mult
                    else:
                        nxt[key] = [cnt * mult, choice + (s,)]
            states = nxt
        for (tot, ge2, allf), (cnt, choice) in sorted(states.items()):
            if ge2 and not allf:
                w = out.get(tot)
                if w is None:
                    out[tot] = OrderWitness(tot, o_g % tot == 0, SubNStructure(ns, choice, req), cnt)
                else:
                    out[tot] = OrderWitness(tot, w.divides, w.sub, w.count + cnt)
        return dict(sorted(out.items()))
    total = int(np.prod([len(o) for o in opts], dtype=object))
    if total > cap:
        worst = max(range(ns.n), key=lambda i: len(opts[i]))
        raise CapExceeded(
            f"{total} combinations over overlapping components exceed the cap {cap}",
            component=ns.labels[worst],
        )
    for combo in itertools.product(*opts):
        h = SubNStructure(ns, tuple(combo), req)
        if not (h.proper and h.nontrivial):
            continue
        o = h.order
        w = out.get(o)
        if w is None:
            out[o] = OrderWitness(o, o_g % o == 0, h, 1)
        else:
            out[o] = OrderWitness(o, w.divides, w.sub, w.count + 1)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# Lagrange
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LagrangeReport:
    order: int
    verdict: str  # lagrange | weakly_lagrange | lagrange_free
    witnesses: tuple[OrderWitness, ...]

    @property
    def dividing_orders(self) -> list[int]:
        return [w.order for w in self.witnesses if w.divides]

    @property
    def non_dividing_orders(self) -> list[int]:
        return [w.order for w in self.witnesses if not w.divides]


def lagrange_analysis(
    ns: NStructure,
    requirement: Sequence[str] | str | None = None,
    mode: str | tuple | None = "exhaustive",
    cap: int = DEFAULT_MAX_COMBINATIONS,
) -> LagrangeReport:
    """Classify by which proper nontrivial sub-structure orders divide ``o(G)``.

    No such sub-structure at all is reported as ``lagrange_free``.
    """
    spec = order_spectrum(ns, requirement, mode, cap)
    ws = tuple(spec.values())
    dividing = [w for w in ws if w.divides]
    if ws and len(dividing) == len(ws):
        verdict = "lagrange"
    elif dividing:
        verdict = "weakly_lagrange"
    else:
        verdict = "lagrange_free"
    return LagrangeReport(ns.order, verdict, ws)


# ---------------------------------------------------------------------------
# Sylow
# ---------------------------------------------------------------------------


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).tolist()


def _p_power(o: int, p: int) -> int | None:
    r = 0
    while o % p == 0:
        o //= p
        r += 1
    return r if o == 1 and r >= 1 else None


@dataclass(frozen=True)
class SylowFinding:
    p: int
    status: str  # sylow | super_sylow | pseudo_sylow | none
    alpha: int  # exponent of p in o(G)
    exponents: tuple[int, ...]  # exponents r with a sub of order p^r
    witnesses: tuple[OrderWitness, ...]

    @property
    def max_exponent(self) -> int:
        return max(self.exponents, default=0)

    @property
    def exact(self) -> bool:
        return self.alpha > 0 and self.alpha in self.exponents


def sylow_analysis(
    ns: NStructure,
    requirement: Sequence[str] | str | None = None,
    mode: str | tuple | None = "exhaustive",
    cap: int = DEFAULT_MAX_COMBINATIONS,
    primes: Iterable[int] | None = None,
) -> list[SylowFinding]:
    """p-Sylow / super / pseudo findings for each prime ``p <= o(G)``."""
    spec = order_spectrum(ns, requirement, mode, cap)
    o_g = ns.order
    out = []
    for p in _primes_upto(o_g) if primes is None else primes:
        alpha = factorize(o_g).get(p, 0) if o_g > 1 else 0
        hits = [(r, w) for o, w in spec.items() if (r := _p_power(o, p)) is not None]
        exps = tuple(r for r, _ in hits)
        if not hits:
            status = "none"
        elif alpha == 0:
            status = "pseudo_sylow"
        elif max(exps) > alpha:
            status = "super_sylow"
        else:
            status = "sylow"
        out.append(SylowFinding(p, status, alpha, exps, tuple(w for _, w in hits)))
    return out


@dataclass(frozen=True)
class TupleSylow:
    primes: tuple[int, ...]
    sub: SubNStructure | None
    n_order: int


def tuple_sylow(ns: NStructure, primes: Sequence[int], mode: str | tuple | None = "exhaustive") -> TupleSylow:
    """Componentwise ``p_i``-Sylow subgroups (first one found in each slot)."""
    if len(primes) != ns.n:
        raise InvalidParams(f"need {ns.n} primes, got {len(primes)}")
    chosen: list[SubMagma] = []
    for i, p in enumerate(primes):
        m = ns[i]
        if not m.kind.is_group:
            raise NotAGroupComponent(f"component {ns.labels[i]} is not a group")
        target = p ** factorize(m.n).get(p, 0) if m.n > 1 else 1
        found = next((s for s in ns.submagmas(i, mode) if s.kind.is_group and s.size == target), None)
        if found is None:
            return TupleSylow(tuple(primes), None, 0)
        chosen.append(found)
    h = SubNStructure(ns, tuple(chosen), ("g",) * ns.n)
    return TupleSylow(tuple(primes), h, h.n_order)


# ---------------------------------------------------------------------------
# Cauchy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CauchyElement:
    component: str
    name: str
    order: OrderResult
    cauchy: bool  # t > 1 and t | o(G)
    s_cauchy: bool  # t > 1 and t | o(G_i)

    @property
    def t(self) -> int | None:
        return self.order.t if isinstance(self.order, Periodic) else None

    @property
    def eligible(self) -> bool:
        return isinstance(self.order, Periodic) and self.order.t > 1


@dataclass(frozen=True)
class CauchyReport:
    order: int
    verdict: str  # cauchy | weakly_cauchy | cauchy_free
    elements: tuple[CauchyElement, ...]

    def lookup(self, component: str, name: str) -> CauchyElement:
        for e in self.elements:
            if e.component == component and e.name == name:
                return e
        raise ElementAbsent(f"{name} is not an element of component {component}")


def cauchy_analysis(ns: NStructure) -> CauchyReport:
    """Left-power periods against each component's own identity.

    Elements of components without an identity are left out entirely.
    """
    o_g = ns.order
    elems = []
    for lbl, m in ns.components:
        e = m.kind.identity
        if e is None:
            continue
        for x in range(m.n):
            r = element_order(m, x, e)
            t = r.t if isinstance(r, Periodic) else 0
            elems.append(
                CauchyElement(lbl, m.elements[x], r, t > 1 and o_g % t == 0, t > 1 and m.n % t == 0)
            )
    eligible = [c for c in elems if c.eligible]
    hits = [c for c in eligible if c.cauchy]
    if len(hits) == len(eligible):
        verdict = "cauchy"
    elif hits:
        verdict = "weakly_cauchy"
    else:
        verdict = "cauchy_free"
    return CauchyReport(o_g, verdict, tuple(elems))


# ---------------------------------------------------------------------------
# Cosets, products, quotients, normalizers, conjugacy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CosetFamily:
    element: str
    side: str
    slots: tuple[tuple[str, ...], ...]
    translated: tuple[bool, ...]
    other_side: tuple[tuple[str, ...], ...]

    @property
    def smarandache(self) -> bool:
        """The left and right translates agree."""
        return self.slots == self.other_side

    @property
    def union(self) -> frozenset[str]:
        return frozenset(x for s in self.slots for x in s)


def _require_full(h: SubNStructure) -> None:
    if not h.full:
        raise InvalidParams("this operation needs a selection in every slot")


def coset(
    ns: NStructure,
    h: SubNStructure,
    a: str,
    side: str = "right",
    designated: Mapping[int, Iterable[str]] | None = None,
) -> CosetFamily:
    """Translate ``H_i`` by ``a`` exactly in the slots whose component holds ``a``.

    ``designated`` optionally replaces ``H_i`` by a chosen subgroup ``H'_i``
    (by slot index) before translating, for semigroup slots.
    """
    if side not in ("left", "right"):
        raise InvalidParams("side must be 'left' or 'right'")
    _require_full(h)
    where = ns.slots_containing(a)
    if not where:
        raise ElementAbsent(f"{a} is not an element of any component")
    designated = dict(designated or {})

    def family(which: str) -> tuple[tuple[str, ...], ...]:
        out = []
        for i, s in enumerate(h.slots):
            assert s is not None
            m = ns[i]
            if i not in where:
                out.append(tuple(m.names(sorted(s.subset))))
                continue
            base = m.ids(designated[i]) if i in designated else list(s.subset)
            ai = m.index(a)
            arr = np.array(base, dtype=np.int64)
            prods = m.table[arr, ai] if which == "right" else m.table[ai, arr]
            out.append(tuple(m.names(np.unique(prods).tolist())))
        return tuple(out)

    other = "left" if side == "right" else "right"
    translated = tuple(i in where for i in range(ns.n))
    return CosetFamily(a, side, family(side), translated, family(other))


@dataclass(frozen=True)
class ProductVerdict:
    hk: tuple[tuple[str, ...], ...]
    kh: tuple[tuple[str, ...], ...]
    permutable: tuple[bool, ...]
    slot_ok: tuple[bool, ...]

    @property
    def is_sub(self) -> bool:
        return all(self.permutable) and all(self.slot_ok)


def product_sub(ns: NStructure, h: SubNStructure, k: SubNStructure) -> ProductVerdict:
    """Slotwise ``H_iK_i`` and whether ``HK`` is again a sub-structure.

    ``HK`` qualifies iff for every slot ``H_iK_i = K_iH_i`` and the set is a
    closed subset of the slot's required kind.
    """
    _require_full(h)
    _require_full(k)
    hk, kh, perm, ok = [], [], [], []
    for i, (hs, ks) in enumerate(zip(h.slots, k.slots)):
        assert hs is not None and ks is not None
        t = ns[i].table
        a = np.array(hs.subset)
        b = np.array(ks.subset)
        s1 = sorted(set(t[np.ix_(a, b)].ravel().tolist()))
        s2 = sorted(set(t[np.ix_(b, a)].ravel().tolist()))
        hk.append(tuple(ns[i].names(s1)))
        kh.append(tuple(ns[i].names(s2)))
        perm.append(s1 == s2)
        good = ns[i].is_closed(s1) and slot_satisfies(make_submagma(ns[i], s1), h.requirement[i])
        ok.append(good)
    return ProductVerdict(tuple(hk), tuple(kh), tuple(perm), tuple(ok))


def _require_groups(ns: NStructure) -> None:
    for lbl, m in ns.components:
        if not m.kind.is_group:
            raise NotAGroupComponent(f"component {lbl} is not a group")


def is_normal_sub(ns: NStructure, h: SubNStructure) -> bool:
    """Every slot is a normal subgroup of its (group) component."""
    _require_groups(ns)
    _require_full(h)
    return all(s is not None and s.kind.is_group and is_normal(ns[i], s.subset, "subgroup") for i, s in enumerate(h.slots))


def quotient(ns: NStructure, normal: SubNStructure) -> NStructure:
    """Componentwise coset groups ``G_i/N_i``.

    A coset is named ``<label>/<r>`` where ``r`` is its first element in the
    component's order, so quotient slots never share names.
    """
    _require_groups(ns)
    _require_full(normal)
    comps = []
    for i, s in enumerate(normal.slots):
        assert s is not None
        m = ns[i]
        if not (s.kind.is_group and is_normal(m, s.subset, "subgroup")):
            raise NotNormal(f"slot {ns.labels[i]} is not a normal subgroup", slot=i)
        nsub = np.array(s.subset)
        coset_of = np.full(m.n, -1, dtype=np.int64)
        reps: list[int] = []
        for x in range(m.n):
            if coset_of[x] < 0:
                coset_of[m.table[x, nsub]] = len(reps)
                reps.append(x)
        table = coset_of[m.table[np.ix_(reps, reps)]]
        names = [f"{ns.labels[i]}/{m.elements[r]}" for r in reps]
        comps.append((ns.labels[i], Magma(names, table)))
    return assemble(comps)


@dataclass(frozen=True)
class NormalizerSlot:
    component: str
    names: tuple[str, ...]
    is_subgroup: bool
    index: Fraction  # o(G_i) / o(N(a))


def normalizer(ns: NStructure, a: str) -> list[NormalizerSlot]:
    """``{x : xa = ax}`` in each component containing ``a`` (never merged)."""
    where = ns.slots_containing(a)
    if not where:
        raise ElementAbsent(f"{a} is not an element of any component")
    out = []
    for i in where:
        m = ns[i]
        ai = m.index(a)
        ids = np.flatnonzero(m.table[:, ai] == m.table[ai, :]).tolist()
        sub = m.is_closed(ids) and make_submagma(m, ids).kind.is_group
        out.append(NormalizerSlot(ns.labels[i], tuple(m.names(ids)), sub, Fraction(m.n, len(ids))))
    return out


@dataclass(frozen=True)
class ConjugateSubsVerdict:
    conjugate: bool
    witnesses: tuple[str | None, ...]


def conjugate_subs(ns: NStructure, h: SubNStructure, k: SubNStructure) -> ConjugateSubsVerdict:
    """Slotwise group conjugacy ``H_i = g K_i g^-1``."""
    _require_groups(ns)
    _require_full(h)
    _require_full(k)
    wit = []
    ok = True
    for i, (hs, ks) in enumerate(zip(h.slots, k.slots)):
        v = conjugacy(ns[i], hs, ks, "group")  # type: ignore[arg-type]
        ok &= v.conjugate
        wit.append(None if v.witness is None else ns[i].elements[v.witness])
    return ConjugateSubsVerdict(ok, tuple(wit))


# ---------------------------------------------------------------------------
# Smarandache analysis at the N level
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NVerdict:
    name: str
    holds: bool
    witness: SubNStructure | None = None
    note: str = ""


@dataclass(frozen=True)
class InversePair:
    component: str
    x: str
    y: str
    a: str
    b: str


@dataclass(frozen=True)
class ConjugatePair:
    component: str
    x: str
    y: str
    a: str
    b: str
    c: str


@dataclass
class NSmarandacheReport:
    verdicts: dict[str, NVerdict]
    slot_roles: tuple[str, ...]
    inverse_pairs: list[InversePair]
    conjugate_pairs: list[ConjugatePair]

    def __getitem__(self, name: str) -> NVerdict:
        return self.verdicts[name]


def slot_role(ns: NStructure, i: int, mode="exhaustive") -> str:
    """``group``, ``s_semigroup``, ``semigroup``, ``s_loop``, ``loop``, ``s_groupoid`` or ``groupoid``."""
    k = ns[i].kind.coarse
    if k == "group":
        return "group"
    sa = ns.s_analysis(i, mode)
    if k == "semigroup":
        return "s_semigroup" if sa["s_semigroup"].verdict else "semigroup"
    if k == "loop":
        return "s_loop" if sa["s_loop"].verdict else "loop"
    return "s_groupoid" if sa["s_groupoid"].verdict else "groupoid"


def _largest_group_slot(ns: NStructure, i: int, mode, proper: bool) -> SubMagma | None:
    cands = [s for s in ns.submagmas(i, mode) if s.kind.is_group and s.size >= 2 and (s.proper or not proper)]
    return max(cands, key=lambda s: s.size) if cands else None


def _n_group_witness(ns: NStructure, roles: Sequence[str], mode) -> SubNStructure | None:
    """Groups kept whole, every other slot replaced by its largest proper subgroup."""
    chosen = []
    for i, r in enumerate(roles):
        s = _largest_group_slot(ns, i, mode, proper=(r != "group"))
        if s is None:
            return None
        chosen.append(s)
    h = SubNStructure(ns, tuple(chosen), ("g",) * ns.n)
    if not h.proper or not _mutually_proper(h):
        return None
    return h


def _mutually_proper(h: SubNStructure) -> bool:
    sets = [frozenset(s.names()) for s in h.slots if s is not None]
    return not any(a <= b for a, b in itertools.permutations(sets, 2))


def _inverse_pairs(ns: NStructure, limit: int) -> list[InversePair]:
    out = []
    for lbl, m in ns.components:
        e = m.kind.identity
        if e is None:
            continue
        t = m.table
        for x in range(m.n):
            if x == e:
                continue
            for y in np.flatnonzero(t[x] == e).tolist():
                banned = {e, x, y}
                a_c = [a for a in np.flatnonzero(t[x] == y).tolist() if a not in banned]
                b_c = [b for b in np.flatnonzero(t[y] == x).tolist() if b not in banned]
                hit = next(((a, b) for a in a_c for b in b_c if t[a, b] == e), None)
                if hit:
                    out.append(InversePair(lbl, *m.names([x, y, hit[0], hit[1]])))
                    if len(out) >= limit:
                        return out
    return out


def _conjugate_pairs(ns: NStructure, limit: int, max_n: int = 128) -> list[ConjugatePair]:
    out = []
    for lbl, m in ns.components:
        if m.n > max_n:
            continue
        t = m.table
        # E[a, x]: some b with ab = bx; B[a, x]: the first such b
        eq = t[:, :, None] == t.T[None, :, :]  # [a, b, x]: t[a,b] == t[b,x]
        E = eq.any(axis=1)
        B = eq.argmax(axis=1)
        for x in range(m.n):
            for a in range(m.n):
                if not E[a, x]:
                    continue
                ys = np.flatnonzero((t[x, a] == t[a, :]) & E[a, :])
                for y in ys.tolist():
                    if y == x:
                        continue
                    out.append(ConjugatePair(lbl, *m.names([x, y, a, int(B[a, x]), int(B[a, y])])))
                    if len(out) >= limit:
                        return out
                    break
    return out


def smarandache_n_analysis(ns: NStructure, mode: str | tuple | None = "exhaustive", pair_limit: int = 50) -> NSmarandacheReport:
    """Lift the per-component Smarandache verdicts to the whole structure."""
    roles = tuple(slot_role(ns, i, mode) for i in range(ns.n))
    kinds = ns.kinds
    v: dict[str, NVerdict] = {}

    def put(name: str, holds: bool, witness: SubNStructure | None = None, note: str = "") -> None:
        v[name] = NVerdict(name, holds, witness, note)

    s_n_group = all(r in ("group", "s_semigroup") for r in roles) and "s_semigroup" in roles
    put("s_n_group", s_n_group, _n_group_witness(ns, roles, mode) if s_n_group else None,
        "group slots and at least one S-semigroup slot; witness keeps groups and takes largest subgroups")

    groups = [i for i, r in enumerate(roles) if r == "group"]
    s_semis = [i for i, r in enumerate(roles) if r == "s_semigroup"]
    ab_groups = all(ns[i].kind.commutative for i in groups)
    cyc_groups = all(is_cyclic_group(ns[i]) for i in groups)
    sa = {i: ns.s_analysis(i, mode) for i in s_semis}
    put("s_commutative", s_n_group and ab_groups and all(sa[i]["s_commutative"].verdict for i in s_semis))
    put("s_weakly_commutative", s_n_group and ab_groups and all(sa[i]["s_weakly_commutative"].verdict for i in s_semis))
    put("s_cyclic", s_n_group and cyc_groups and all(sa[i]["s_cyclic"].verdict for i in s_semis))
    put("s_weakly_cyclic", s_n_group and cyc_groups and all(sa[i]["s_weakly_cyclic"].verdict for i in s_semis))

    if all(k in ("group", "loop") for k in kinds) and "loop" in kinds:
        w = _n_group_witness(ns, roles, mode)
        put("s_n_loop", w is not None, w, "a proper subset that is an N-group")
    else:
        put("s_n_loop", False, None, "needs loop components only")

    put("s_n_groupoid", all(r in ("s_groupoid", "s_semigroup") for r in roles) and "s_groupoid" in roles,
        None, "every slot an S-groupoid or an S-semigroup")
    put("s_n_group_semigroup", bool(groups) and bool(s_semis) and all(k in ("group", "semigroup") for k in kinds),
        None, "groups, S-semigroups and possibly plain semigroups")
    glsg_ok = all(r in ("group", "s_loop", "s_semigroup", "s_groupoid") for r in roles)
    put("s_n_glsg", glsg_ok and all(r in roles for r in ("s_loop", "s_semigroup", "s_groupoid")), None,
        "some S-loops, S-semigroups and S-groupoids")

    hyper = _hyper_n_group_semigroup(ns, roles, mode)
    put("s_hyper_n_group_semigroup", hyper is not None, hyper,
        "groups whole, S-semigroups by their largest subgroup, other semigroups by their largest ideal")
    return NSmarandacheReport(v, roles, _inverse_pairs(ns, pair_limit), _conjugate_pairs(ns, pair_limit))


def _hyper_n_group_semigroup(ns: NStructure, roles: Sequence[str], mode) -> SubNStructure | None:
    if not all(r in ("group", "s_semigroup", "semigroup") for r in roles) or "s_semigroup" not in roles:
        return None
    chosen: list[SubMagma] = []
    req = []
    for i, r in enumerate(roles):
        if r == "group":
            chosen.append(make_submagma(ns[i], range(ns[i].n)))
            req.append("g")
        elif r == "s_semigroup":
            largest = ns.s_analysis(i, mode).largest_subgroups
            if not largest:
                return None
            chosen.append(largest[0])
            req.append("g")
        else:
            ideals = [s for s in ns.submagmas(i, mode) if "ideal" in s.roles]
            if not ideals:
                return None
            chosen.append(max(ideals, key=lambda s: s.size))
            req.append("s")
    return SubNStructure(ns, tuple(chosen), tuple(req))


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlotHom:
    holds: bool
    counterexample: tuple[str, str] | None
    injective: bool
    surjective: bool


@dataclass(frozen=True)
class HomVerdict:
    slots: tuple[SlotHom, ...]

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.slots)

    @property
    def injective(self) -> bool:
        return all(s.injective for s in self.slots)

    @property
    def surjective(self) -> bool:
        return all(s.surjective for s in self.slots)


def verify_homomorphism(src: NStructure, dst: NStructure, maps: Sequence[Mapping[str, str]]) -> HomVerdict:
    """Check ``phi_i(x y) = phi_i(x) phi_i(y)`` exhaustively in every slot.

    Slots must carry the same coarse kind on both sides.
    """
    if src.n != dst.n or len(maps) != src.n:
        raise InvalidParams("source, target and maps must have the same number of slots")
    out = []
    for i, (a, b, f) in enumerate(zip(src.magmas, dst.magmas, maps)):
        if a.kind.coarse != b.kind.coarse:
            raise KindMismatch(
                f"slot {i}: cannot map a {a.kind.coarse} ({src.labels[i]}) into a {b.kind.coarse} ({dst.labels[i]})"
            )
        missing = [x for x in a.elements if x not in f]
        if missing:
            raise MapIncomplete(f"slot {i}: no image for {missing[:5]}")
        try:
            img = np.array([b.index(f[x]) for x in a.elements], dtype=np.int64)
        except KeyError as exc:
            raise ElementAbsent(f"slot {i}: image {exc.args[0]} is not in {dst.labels[i]}") from None
        lhs = img[a.table]
        rhs = b.table[np.ix_(img, img)]
        bad = np.argwhere(lhs != rhs)
        ce = None if bad.size == 0 else (a.elements[bad[0][0]], a.elements[bad[0][1]])
        out.append(SlotHom(ce is None, ce, len(set(img.tolist())) == a.n, len(set(img.tolist())) == b.n))
    return HomVerdict(tuple(out))


# ---------------------------------------------------------------------------
# Aggregate report
# ---------------------------------------------------------------------------


@dataclass
class AnalysisReport:
    order: int
    component_orders: tuple[int, ...]
    nkind: str
    requirement: tuple[str, ...]
    lagrange: LagrangeReport | None = None
    sylow: list[SylowFinding] | None = None
    cauchy: CauchyReport | None = None
    smarandache: NSmarandacheReport | None = None


REPORT_SECTIONS = ("lagrange", "sylow", "cauchy", "smarandache")


def analyze(
    ns: NStructure,
    sections: Iterable[str] = REPORT_SECTIONS,
    requirement: Sequence[str] | str | None = None,
    mode: str | tuple | None = "exhaustive",
) -> AnalysisReport:
    sections = set(sections)
    unknown = sections - set(REPORT_SECTIONS)
    if unknown:
        raise InvalidParams(f"unknown report sections {sorted(unknown)}")
    req = parse_requirement(ns, requirement)
    rep = AnalysisReport(ns.order, ns.component_orders, ns.nkind, req)
    if "lagrange" in sections:
        rep.lagrange = lagrange_analysis(ns, req, mode)
    if "sylow" in sections:
        rep.sylow = sylow_analysis(ns, req, mode)
    if "cauchy" in sections:
        rep.cauchy = cauchy_analysis(ns)
    if "smarandache" in sections:
        rep.smarandache = smarandache_n_analysis(ns, mode)
    return rep


__all__ = [
    "AnalysisReport",
    "CauchyElement",
    "CauchyReport",
    "CosetFamily",
    "HomVerdict",
    "LagrangeReport",
    "NKINDS",
    "NSmarandacheReport",
    "NStructure",
    "NVerdict",
    "NormalizerSlot",
    "OrderWitness",
    "ProductVerdict",
    "SubNStructure",
    "SylowFinding",
    "TupleSylow",
    "analyze",
    "assemble",
    "cauchy_analysis",
    "check_declared_kind",
    "classify_n",
    "conjugate_subs",
    "coset",
    "find_sub_nstructures",
    "is_normal_sub",
    "iter_sub_nstructures",
    "lagrange_analysis",
    "normalizer",
    "order_spectrum",
    "parse_requirement",
    "product_sub",
    "pseudo_divides",
    "quotient",
    "slot_role",
    "smarandache_n_analysis",
    "sub_from_names",
    "sylow_analysis",
    "tuple_sylow",
    "verify_homomorphism",
    "verify_sub",
]
