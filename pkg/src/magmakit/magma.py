"""Finite magmas given by Cayley tables, and their classification.

A :class:`Magma` is an ordered tuple of element names plus an ``n x n`` table
of element ids, where ``table[i, j]`` is the id of ``i ∘ j`` (the row operand
is the left factor).  Magmas are immutable; the table is stored as a read-only
``numpy`` array so that the identity checks elsewhere can be vectorised.

Powers are left-associated throughout the package: ``x^1 = x`` and
``x^(k+1) = x^k ∘ x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import InvalidMagma, NotAQuasigroup, ProductTooLarge

DEFAULT_PRODUCT_CAP = 4096

#: Fine-grained labels, most specific first.
LABELS = ("group", "monoid", "semigroup", "loop", "quasigroup", "magma")


class Magma:
    """A finite set with one total binary operation.

    Parameters
    ----------
    elements:
        Distinct, whitespace-free names.  Position defines the element id.
    table:
        ``n x n`` integer array-like; ``table[i][j]`` is the id of ``i ∘ j``.
    """

    __slots__ = ("_elements", "_table", "_index", "__dict__")

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[int]] | np.ndarray):
        names = tuple(str(e) for e in elements)
        n = len(names)
        if n < 1:
            raise InvalidMagma("a magma needs at least one element")
        for name in names:
            if not name or any(ch.isspace() for ch in name):
                raise InvalidMagma(f"element name {name!r} is empty or contains whitespace")
        if len(set(names)) != n:
            dup = sorted({x for x in names if names.count(x) > 1})
            raise InvalidMagma(f"duplicate element names: {dup}")
        arr = np.array(table, dtype=np.int64)
        if arr.shape != (n, n):
            raise InvalidMagma(f"table shape {arr.shape} does not match {n} elements")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            raise InvalidMagma(f"table entry at ({bad[0]}, {bad[1]}) is not a valid element id")
        arr.setflags(write=False)
        self._elements = names
        self._table = arr
        self._index = {name: i for i, name in enumerate(names)}

    # ------------------------------------------------------------------ basics
    @classmethod
    def from_rows(cls, elements: Sequence[str], rows: Sequence[Sequence[str]]) -> "Magma":
        """Build from rows of element *names*."""
        elements = tuple(elements)
        index = {name: i for i, name in enumerate(elements)}
        try:
            table = [[index[x] for x in row] for row in rows]
        except KeyError as exc:
            raise InvalidMagma(f"table mentions unknown element {exc.args[0]!r}") from None
        return cls(elements, table)

    @classmethod
    def from_function(cls, elements: Sequence[str], op: Callable[[int, int], int]) -> "Magma":
        """Build from a function on element ids."""
        n = len(elements)
        return cls(elements, [[op(i, j) for j in range(n)] for i in range(n)])

    @property
    def elements(self) -> tuple[str, ...]:
        return self._elements

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def n(self) -> int:
        return len(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no element named {name!r}") from None

    def ids(self, names: Iterable[str]) -> list[int]:
        return [self.index(x) for x in names]

    def names(self, ids: Iterable[int]) -> list[str]:
        return [self._elements[i] for i in ids]

    def op(self, i: int, j: int) -> int:
        return int(self._table[i, j])

    def mul(self, a: str, b: str) -> str:
        """Multiply by name."""
        return self._elements[self._table[self.index(a), self.index(b)]]

    def rows(self) -> list[list[str]]:
        return [[self._elements[k] for k in row] for row in self._table]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Magma):
            return NotImplemented
        return self._elements == other._elements and np.array_equal(self._table, other._table)

    def __hash__(self) -> int:
        return hash((self._elements, self._table.tobytes()))

    def __repr__(self) -> str:
        shown = ", ".join(self._elements[:6]) + (", ..." if self.n > 6 else "")
        return f"Magma(n={self.n}, elements=[{shown}])"

    # ---------------------------------------------------------- derived views
    def rename(self, mapping: Mapping[str, str] | Callable[[str], str]) -> "Magma":
        """Return the same table with renamed elements."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return Magma([f(x) for x in self._elements], self._table)

    def with_prefix(self, prefix: str) -> "Magma":
        return self.rename(lambda x: f"{prefix}{x}")

    def permuted(self, order: Sequence[int]) -> "Magma":
        """Relabel ids so that new element ``k`` is old element ``order[k]``."""
        order = list(order)
        inv = np.empty(self.n, dtype=np.int64)
        inv[order] = np.arange(self.n)
        t = self._table[np.ix_(order, order)]
        return Magma([self._elements[i] for i in order], inv[t])

    def is_closed(self, subset: Iterable[int]) -> bool:
        ids = np.fromiter(sorted(set(subset)), dtype=np.int64)
        if ids.size == 0:
            return False
        inside = np.zeros(self.n, dtype=bool)
        inside[ids] = True
        return bool(inside[self._table[np.ix_(ids, ids)]].all())

    def restrict(self, subset: Iterable[int]) -> "Magma":
        """The induced magma on a closed subset (ids kept in ascending order)."""
        ids = sorted(set(int(i) for i in subset))
        if not ids or not self.is_closed(ids):
            raise InvalidMagma("subset is empty or not closed under the operation")
        local = {g: k for k, g in enumerate(ids)}
        sub = self._table[np.ix_(ids, ids)]
        return Magma([self._elements[i] for i in ids], [[local[int(v)] for v in row] for row in sub])

    # ---------------------------------------------------------- cached checks
    @cached_property
    def kind(self) -> "AlgebraKind":
        return _classify(self)

    @cached_property
    def left_division(self) -> np.ndarray:
        """``L[a, b]`` = the x with ``a ∘ x = b``; needs a Latin square."""
        _require_latin(self)
        n = self.n
        out = np.empty((n, n), dtype=np.int64)
        rows = np.arange(n)[:, None]
        out[rows, self._table] = np.arange(n)[None, :]
        out.setflags(write=False)
        return out

    @cached_property
    def right_division(self) -> np.ndarray:
        """``R[a, b]`` = the y with ``y ∘ a = b``; needs a Latin square."""
        _require_latin(self)
        n = self.n
        out = np.empty((n, n), dtype=np.int64)
        cols = np.arange(n)[:, None]
        out[cols, self._table.T] = np.arange(n)[None, :]
        out.setflags(write=False)
        return out


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraKind:
    """Flags computed by exhaustive checks plus the derived label."""

    associative: bool
    has_identity: bool
    identity: int | None
    has_inverses: bool
    latin_square: bool
    commutative: bool
    left_identities: tuple[int, ...] = field(default=())
    right_identities: tuple[int, ...] = field(default=())

    @property
    def label(self) -> str:
        if self.associative and self.latin_square and self.has_identity:
            return "group"
        if self.associative and self.has_identity:
            return "monoid"
        if self.associative:
            return "semigroup"
        if self.latin_square and self.has_identity:
            return "loop"
        if self.latin_square:
            return "quasigroup"
        return "magma"

    @property
    def coarse(self) -> str:
        """The four-way kind used for mixed structures.

        ``group``; ``loop`` (non-associative loop); ``semigroup`` (associative,
        not a group); ``groupoid`` (everything else, quasigroups included).
        """
        label = self.label
        if label in ("monoid", "semigroup"):
            return "semigroup"
        if label in ("quasigroup", "magma"):
            return "groupoid"
        return label

    @property
    def is_group(self) -> bool:
        return self.label == "group"

    @property
    def is_loop(self) -> bool:
        """Loop axioms hold (groups included)."""
        return self.latin_square and self.has_identity


def associativity_counterexample(m: Magma) -> tuple[int, int, int] | None:
    """First ``(x, y, z)`` in lexicographic order with ``(xy)z != x(yz)``."""
    t = m.table
    for x in range(m.n):
        left = t[t[x], :]          # (x y) z  indexed [y, z]
        right = t[x][t]            # x (y z)  indexed [y, z]
        bad = np.argwhere(left != right)
        if bad.size:
            return (x, int(bad[0, 0]), int(bad[0, 1]))
    return None


def is_associative(m: Magma) -> bool:
    return associativity_counterexample(m) is None


def is_commutative(m: Magma) -> bool:
    return bool(np.array_equal(m.table, m.table.T))


def left_identities(m: Magma) -> tuple[int, ...]:
    """All ``e`` with ``e ∘ a = a`` for every ``a``."""
    ar = np.arange(m.n)
    return tuple(int(e) for e in range(m.n) if np.array_equal(m.table[e], ar))


def right_identities(m: Magma) -> tuple[int, ...]:
    """All ``e`` with ``a ∘ e = a`` for every ``a``."""
    ar = np.arange(m.n)
    return tuple(int(e) for e in range(m.n) if np.array_equal(m.table[:, e], ar))


def identity_element(m: Magma) -> int | None:
    """The two-sided identity, or ``None``."""
    return m.kind.identity


def _first_non_permutation(m: Magma) -> tuple[str, int] | None:
    n = m.n
    for i in range(n):
        if len(np.unique(m.table[i])) != n:
            return ("row", i)
    for j in range(n):
        if len(np.unique(m.table[:, j])) != n:
            return ("column", j)
    return None


def is_latin_square(m: Magma) -> bool:
    t = m.table
    n = m.n
    srt_rows = np.sort(t, axis=1)
    srt_cols = np.sort(t, axis=0)
    ar = np.arange(n)
    return bool((srt_rows == ar[None, :]).all() and (srt_cols == ar[:, None]).all())


def _require_latin(m: Magma) -> None:
    where = _first_non_permutation(m)
    if where is not None:
        side, k = where
        kw = {"row": k} if side == "row" else {"column": k}
        raise NotAQuasigroup(
            f"table is not a Latin square: {side} {m.elements[k]!r} repeats an entry", **kw
        )


def _classify(m: Magma) -> AlgebraKind:
    lefts = left_identities(m)
    rights = right_identities(m)
    both = sorted(set(lefts) & set(rights))
    ident = both[0] if both else None
    inverses = False
    if ident is not None:
        t = m.table
        hit = (t == ident) & (t.T == ident)
        inverses = bool(hit.any(axis=1).all())
    return AlgebraKind(
        associative=is_associative(m),
        has_identity=ident is not None,
        identity=ident,
        has_inverses=inverses,
        latin_square=is_latin_square(m),
        commutative=is_commutative(m),
        left_identities=lefts,
        right_identities=rights,
    )


def classify(m: Magma) -> AlgebraKind:
    """Exhaustively compute the classification flags of ``m``."""
    return m.kind


# ---------------------------------------------------------------------------
# Division
# ---------------------------------------------------------------------------


def solve_left(m: Magma, a: int, b: int) -> int:
    """The unique ``x`` with ``a ∘ x = b``."""
    return int(m.left_division[a, b])


def solve_right(m: Magma, a: int, b: int) -> int:
    """The unique ``y`` with ``y ∘ a = b``."""
    return int(m.right_division[a, b])


# ---------------------------------------------------------------------------
# Element orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Periodic:
    """``x^t`` is the identity for the minimal ``t`` (``t = 1`` for the identity)."""

    t: int


@dataclass(frozen=True)
class Idempotent:
    """``x ∘ x = x`` and ``x`` is not the identity."""


@dataclass(frozen=True)
class NoIdentityReturn:
    """The power sequence enters a cycle that never meets an identity.

    ``tail`` is the number of powers before the cycle starts and ``cycle``
    its length (both counted on ``x^1, x^2, ...``).
    """

    tail: int
    cycle: int


OrderResult = Union[Periodic, Idempotent, NoIdentityReturn]


def power_sequence(m: Magma, x: int) -> tuple[list[int], int]:
    """Left powers ``x^1, x^2, ...`` up to the first repeat.

    Returns the distinct powers in order and the index where the cycle starts.
    """
    seen: dict[int, int] = {}
    seq: list[int] = []
    p = x
    while p not in seen:
        seen[p] = len(seq)
        seq.append(p)
        p = int(m.table[p, x])
    return seq, seen[p]


def element_order(m: Magma, x: int, identity: int | None = None) -> OrderResult:
    """Left-power order of ``x`` relative to the magma's identity.

    ``identity`` overrides the identity used (e.g. a component's identity);
    by default the magma's two-sided identity is used when it exists.
    """
    e = m.kind.identity if identity is None else identity
    if e is not None and x == e:
        return Periodic(1)
    if m.table[x, x] == x:
        return Idempotent()
    seq, start = power_sequence(m, x)
    if e is not None:
        for k, p in enumerate(seq[1:], start=2):
            if p == e:
                return Periodic(k)
    return NoIdentityReturn(tail=start, cycle=len(seq) - start)


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def direct_product(
    a: Magma,
    b: Magma,
    name_joiner: Callable[[str, str], str] | None = None,
    cap: int = DEFAULT_PRODUCT_CAP,
) -> Magma:
    """Component-wise product; pairs are ordered with ``a``'s index major."""
    size = a.n * b.n
    if size > cap:
        raise ProductTooLarge(f"direct product would have {size} elements (cap {cap})")
    join = name_joiner or (lambda x, y: f"({x},{y})")
    names = [join(x, y) for x in a.elements for y in b.elements]
    ta = a.table[:, None, :, None]
    tb = b.table[None, :, None, :]
    # entry for ((i,k),(j,l)) = (a[i,j], b[k,l])  ->  id a[i,j]*nb + b[k,l]
    full = ta * b.n + tb
    table = full.reshape(size, size)
    return Magma(names, table)


def generated_closure(m: Magma, seeds: Iterable[int]) -> list[int]:
    """Smallest closed subset containing ``seeds`` (sorted ids)."""
    return sorted(closure_mask(m.table, np.fromiter(seeds, dtype=np.int64)).nonzero()[0].tolist())


def closure_mask(table: np.ndarray, seeds: np.ndarray, base: np.ndarray | None = None) -> np.ndarray:
    """Boolean membership mask of the closure of ``seeds`` (plus a closed ``base``)."""
    n = table.shape[0]
    inside = np.zeros(n, dtype=bool) if base is None else base.copy()
    seeds = np.unique(seeds)
    frontier = seeds[~inside[seeds]]
    inside[frontier] = True
    while frontier.size:
        members = np.flatnonzero(inside)
        prods = np.concatenate(
            (table[np.ix_(frontier, members)].ravel(), table[np.ix_(members, frontier)].ravel())
        )
        prods = np.unique(prods)
        frontier = prods[~inside[prods]]
        inside[frontier] = True
    return inside
