"""Constructors for the concrete finite families used throughout the toolkit.

* ``L_n(m)`` loops on ``{e, 1, ..., n}``: ``i ∘ j = (m j - (m-1) i) mod n`` for
  ``i != j`` with residue 0 written as ``n``, ``i ∘ i = e``.
* ``Z_n(t, u)`` groupoids on ``{0, ..., n-1}``: ``a ∘ b = (t a + u b) mod n``,
  in four admissibility classes (``Z``, ``Zstar``, ``Zstarstar``, ``Zzero``).
* Standard groups and semigroups: cyclic, dihedral, symmetric, alternating,
  additive / multiplicative residues and the full transformation semigroup.

Permutations and transformations of ``{1..k}`` are named in one-line notation
(``"231"`` maps 1->2, 2->3, 3->1) and compose right-to-left:
``(p ∘ q)(i) = p(q(i))``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CapExceeded, InvalidN, InvalidParams, NotAGroup
from .magma import Magma

ZN_CLASSES = ("Z", "Zstar", "Zstarstar", "Zzero")
FAMILIES = (
    "cyclic",
    "dihedral",
    "symmetric_group",
    "alternating",
    "zn_add",
    "zn_mul",
    "full_transformation",
)


def _cap(env: str, default: int) -> int:
    raw = os.environ.get(env)
    return int(raw) if raw else default


SYMMETRIC_CAP = 6
TRANSFORMATION_CAP = 4


# ---------------------------------------------------------------------------
# L_n(m)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LnParams:
    n: int
    m: int

    def __post_init__(self) -> None:
        n, m = self.n, self.m
        if n <= 3 or n % 2 == 0:
            raise InvalidParams(f"n must be odd and greater than 3 (got n={n})")
        if not 1 < m < n:
            raise InvalidParams(f"m must satisfy 1 < m < n (got m={m}, n={n})")
        if math.gcd(m, n) != 1:
            raise InvalidParams(f"gcd(m, n) = gcd({m}, {n}) = {math.gcd(m, n)} is not 1")
        if math.gcd(m - 1, n) != 1:
            raise InvalidParams(f"gcd(m-1, n) = gcd({m - 1}, {n}) = {math.gcd(m - 1, n)} is not 1")


def ln_valid_m(n: int) -> list[int]:
    """All admissible ``m`` for odd ``n > 3`` in ascending order."""
    if n <= 3 or n % 2 == 0:
        raise InvalidN(f"L_n needs an odd n > 3 (got {n})")
    return [m for m in range(2, n) if math.gcd(m, n) == 1 and math.gcd(m - 1, n) == 1]


def ln_loop(n: int | LnParams, m: int | None = None) -> Magma:
    """The loop ``L_n(m)`` with elements ordered ``e, 1, ..., n``."""
    p = n if isinstance(n, LnParams) else LnParams(int(n), int(m))  # type: ignore[arg-type]
    n, m = p.n, p.m
    names = ["e"] + [str(i) for i in range(1, n + 1)]
    table = np.zeros((n + 1, n + 1), dtype=np.int64)
    table[0, :] = np.arange(n + 1)
    table[:, 0] = np.arange(n + 1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            r = (m * j - (m - 1) * i) % n
            table[i, j] = r if r else n  # residue 0 is the element n
    return Magma(names, table)


def ln_class(n: int) -> list[tuple[int, Magma]]:
    return [(m, ln_loop(n, m)) for m in ln_valid_m(n)]


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _prod_formula(n: int, shift: int) -> int:
    total = 1
    for p, a in factorize(n).items():
        total *= (p - shift) * p ** (a - 1)
    return total


def ln_count_formula(n: int) -> int:
    """``prod (p - 2) p^(a-1)`` over the factorisation of ``n``."""
    return _prod_formula(n, 2)


def ln_strict_formula(n: int) -> int:
    """``prod (p - 3) p^(a-1)``: both ``F_n`` and ``P_n``."""
    return _prod_formula(n, 3)


@dataclass(frozen=True)
class LnCounts:
    n: int
    total_formula: int
    total_enumerated: int
    commutative_formula: int
    commutative_enumerated: int
    strictly_noncommutative_formula: int
    strictly_noncommutative_enumerated: int
    strictly_non_right_alternative_formula: int
    strictly_non_right_alternative_enumerated: int
    strictly_non_left_alternative_formula: int
    strictly_non_left_alternative_enumerated: int

    @property
    def consistent(self) -> bool:
        return (
            self.total_formula == self.total_enumerated
            and self.commutative_formula == self.commutative_enumerated
            and self.strictly_noncommutative_formula == self.strictly_noncommutative_enumerated
            and self.strictly_non_right_alternative_formula
            == self.strictly_non_right_alternative_enumerated
            and self.strictly_non_left_alternative_formula
            == self.strictly_non_left_alternative_enumerated
        )


def ln_counts(n: int) -> LnCounts:
    """Closed-form counts next to counts obtained by building every loop."""
    from .identities import is_strictly_non_commutative, is_strictly_non_alternative

    loops = [lp for _, lp in ln_class(n)]
    m_half = (n + 1) // 2
    comm_formula = int(math.gcd(m_half, n) == 1 and math.gcd(m_half - 1, n) == 1)
    strict = ln_strict_formula(n)
    return LnCounts(
        n=n,
        total_formula=ln_count_formula(n),
        total_enumerated=len(loops),
        commutative_formula=comm_formula,
        commutative_enumerated=sum(lp.kind.commutative for lp in loops),
        strictly_noncommutative_formula=strict,
        strictly_noncommutative_enumerated=sum(is_strictly_non_commutative(lp) for lp in loops),
        strictly_non_right_alternative_formula=strict,
        strictly_non_right_alternative_enumerated=sum(
            is_strictly_non_alternative(lp, "right") for lp in loops
        ),
        strictly_non_left_alternative_formula=strict,
        strictly_non_left_alternative_enumerated=sum(
            is_strictly_non_alternative(lp, "left") for lp in loops
        ),
    )


# ---------------------------------------------------------------------------
# Z_n(t, u)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZnParams:
    n: int
    t: int
    u: int
    class_tag: str = "Z"

    def __post_init__(self) -> None:
        n, t, u, tag = self.n, self.t, self.u, self.class_tag
        if tag not in ZN_CLASSES:
            raise InvalidParams(f"unknown class tag {tag!r}; expected one of {ZN_CLASSES}")
        if n < 3:
            raise InvalidParams(f"n must be at least 3 (got {n})")
        if not (0 <= t < n and 0 <= u < n):
            raise InvalidParams(f"t and u must be residues mod {n} (got t={t}, u={u})")
        if tag == "Zzero":
            return
        if t == 0 or u == 0:
            raise InvalidParams(f"class {tag} needs nonzero t and u (got t={t}, u={u})")
        if tag == "Zstarstar":
            return
        if t == u:
            raise InvalidParams(f"class {tag} needs t != u (got t=u={t})")
        if tag == "Z" and math.gcd(t, u) != 1:
            raise InvalidParams(f"class Z needs gcd(t, u) = 1 (got gcd({t}, {u}) = {math.gcd(t, u)})")


def zn_groupoid(n: int | ZnParams, t: int | None = None, u: int | None = None, class_tag: str = "Z") -> Magma:
    """``Z_n(t, u)`` with elements ``0..n-1``."""
    p = n if isinstance(n, ZnParams) else ZnParams(int(n), int(t), int(u), class_tag)  # type: ignore[arg-type]
    a = np.arange(p.n)
    table = (p.t * a[:, None] + p.u * a[None, :]) % p.n
    return Magma([str(i) for i in range(p.n)], table)


def _admissible(n: int, t: int, u: int, tag: str) -> bool:
    try:
        ZnParams(n, t, u, tag)
    except InvalidParams:
        return False
    return True


def zn_class_enumerate(n: int, class_tag: str) -> list[tuple[int, int, Magma]]:
    """Every admissible ``(t, u)`` for the class, in lexicographic order."""
    if class_tag not in ZN_CLASSES:
        raise InvalidParams(f"unknown class tag {class_tag!r}")
    if n < 3:
        raise InvalidParams(f"n must be at least 3 (got {n})")
    return [
        (t, u, zn_groupoid(n, t, u, class_tag))
        for t in range(n)
        for u in range(n)
        if _admissible(n, t, u, class_tag)
    ]


# ---------------------------------------------------------------------------
# Standard families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    family: str
    size: int
    prefix: str = ""


def _perm_name(p: tuple[int, ...]) -> str:
    sep = "" if len(p) < 10 else "."
    return sep.join(str(x + 1) for x in p)


def _compose_table(maps: list[tuple[int, ...]]) -> np.ndarray:
    index = {p: i for i, p in enumerate(maps)}
    n = len(maps)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(maps):
        for j, q in enumerate(maps):
            table[i, j] = index[tuple(p[q[x]] for x in range(len(q)))]
    return table


def _parity(p: tuple[int, ...]) -> int:
    seen = [False] * len(p)
    swaps = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        swaps += length - 1
    return swaps % 2


def cyclic(k: int) -> Magma:
    """``<g | g^k = 1>`` with elements ``e, g, g^2, ...``."""
    if k < 1:
        raise InvalidN("cyclic group needs k >= 1")
    names = ["e"] + ["g" if i == 1 else f"g^{i}" for i in range(1, k)]
    a = np.arange(k)
    return Magma(names, (a[:, None] + a[None, :]) % k)


def dihedral(k: int) -> Magma:
    """``<a, b | a^2 = b^k = 1, bab = a>`` of order ``2k``, normal form ``a^i b^j``."""
    if k < 1:
        raise InvalidN("dihedral group needs k >= 1")

    def nm(i: int, j: int) -> str:
        bj = "" if j == 0 else ("b" if j == 1 else f"b^{j}")
        s = ("a" if i else "") + bj
        return s or "e"

    pairs = [(i, j) for i in range(2) for j in range(k)]
    index = {p: x for x, p in enumerate(pairs)}

    def mul(x: int, y: int) -> int:
        i, j = pairs[x]
        k2, l2 = pairs[y]
        # b^j a = a b^(-j)
        jj = (-j if k2 else j) + l2
        return index[((i + k2) % 2, jj % k)]

    return Magma.from_function([nm(*p) for p in pairs], mul)


def symmetric_group(k: int, cap: int | None = None) -> Magma:
    cap = _cap("MAGMA_MAX_SYMMETRIC", SYMMETRIC_CAP) if cap is None else cap
    if k < 1:
        raise InvalidN("symmetric group needs k >= 1")
    if k > cap:
        raise CapExceeded(f"symmetric_group({k}) exceeds the cap k <= {cap}")
    maps = list(itertools.permutations(range(k)))
    return Magma([_perm_name(p) for p in maps], _compose_table(maps))


def alternating(k: int, cap: int | None = None) -> Magma:
    cap = _cap("MAGMA_MAX_SYMMETRIC", SYMMETRIC_CAP) if cap is None else cap
    if k < 1:
        raise InvalidN("alternating group needs k >= 1")
    if k > cap:
        raise CapExceeded(f"alternating({k}) exceeds the cap k <= {cap}")
    maps = [p for p in itertools.permutations(range(k)) if _parity(p) == 0]
    return Magma([_perm_name(p) for p in maps], _compose_table(maps))


def full_transformation(k: int, cap: int | None = None) -> Magma:
    """``S(k)``: all ``k^k`` self-maps of ``{1..k}`` under composition."""
    cap = _cap("MAGMA_MAX_TRANSFORMATION", TRANSFORMATION_CAP) if cap is None else cap
    if k < 1:
        raise InvalidN("full transformation semigroup needs k >= 1")
    if k > cap:
        raise CapExceeded(f"full_transformation({k}) exceeds the cap k <= {cap}")
    maps = list(itertools.product(range(k), repeat=k))
    return Magma([_perm_name(p) for p in maps], _compose_table(maps))


def zn_add(k: int) -> Magma:
    if k < 1:
        raise InvalidN("Z_k needs k >= 1")
    a = np.arange(k)
    return Magma([str(i) for i in range(k)], (a[:, None] + a[None, :]) % k)


def zn_mul(k: int) -> Magma:
    if k < 1:
        raise InvalidN("Z_k needs k >= 1")
    a = np.arange(k)
    return Magma([str(i) for i in range(k)], (a[:, None] * a[None, :]) % k)


_BUILDERS = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric_group": symmetric_group,
    "alternating": alternating,
    "zn_add": zn_add,
    "zn_mul": zn_mul,
    "full_transformation": full_transformation,
}


def standard(spec: FamilySpec | str, size: int | None = None, prefix: str = "") -> Magma:
    """Build a standard family member, optionally prefixing every name."""
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec(spec, int(size), prefix)  # type: ignore[arg-type]
    try:
        build = _BUILDERS[spec.family]
    except KeyError:
        raise InvalidParams(f"unknown family {spec.family!r}; expected one of {FAMILIES}") from None
    m = build(spec.size)
    return m.with_prefix(spec.prefix) if spec.prefix else m


# ---------------------------------------------------------------------------
# Regular representation
# ---------------------------------------------------------------------------


def regular_representation(g: Magma) -> tuple[Magma, dict[str, str]]:
    """Image of ``g`` under left translations ``x -> (y -> x∘y)``.

    Returns the permutation group (on ``{1..n}``, one-line names, composed
    right-to-left) and the embedding ``name in g -> name in image``.
    """
    if not g.kind.is_group:
        raise NotAGroup("regular representation needs a group table")
    perms = [tuple(int(v) for v in g.table[x]) for x in range(g.n)]
    image = Magma([_perm_name(p) for p in perms], _compose_table(perms))
    return image, {g.elements[x]: image.elements[x] for x in range(g.n)}


def transport_is_isomorphism(src: Magma, dst: Magma, mapping: dict[str, str]) -> bool:
    """True iff ``mapping`` is a bijective homomorphism ``src -> dst``."""
    if len(set(mapping.values())) != src.n or dst.n != src.n:
        return False
    f = np.array([dst.index(mapping[x]) for x in src.elements])
    return bool(np.array_equal(f[src.table], dst.table[np.ix_(f, f)]))


def quaternion_group() -> Magma:
    """The quaternion group ``{±1, ±i, ±j, ±k}`` (a fixture, not a family)."""
    units = ["1", "i", "j", "k"]
    mult = {
        ("1", x): (1, x) for x in units
    }
    mult.update({(x, "1"): (1, x) for x in units})
    for x in ("i", "j", "k"):
        mult[(x, x)] = (-1, "1")
    mult.update({("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j")})
    mult.update({("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in units]
    names = [("" if s == 1 else "-") + u for s, u in elems]

    def op(a: int, b: int) -> int:
        s1, u1 = elems[a]
        s2, u2 = elems[b]
        s3, u3 = mult[(u1, u2)]
        return elems.index((s1 * s2 * s3, u3))

    return Magma.from_function(names, op)


def family_names() -> Iterable[str]:
    return FAMILIES
