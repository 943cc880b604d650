"""Line-oriented text formats: Cayley tables, N-structure manifests, reports.

Cayley file::

    # comment
    e a b          <- element names (header)
    e a b          <- row for e: e∘e e∘a e∘b
    a b e
    b e a

Manifest file::

    component G1 gen=cyclic:5 prefix=c
    component G2 file=tables/l52.cay
    expect kind=n_loop

Report::

    fact: order=34 kind=n_group components=4
    fact: lagrange=weakly_lagrange witness_order=17 total=34 divides=true ...
    summary: facts=2 status=ok

Values in reports are plain tokens, ``true``/``false``/``none``, integers, or
compact JSON for lists.  A string that would not read back as itself when
written bare (whitespace, a leading ``[`` or ``"``, a keyword or an integer
look-alike) is written as a JSON string; spaces inside JSON are escaped so
every value is a single token.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .catalog import FAMILIES, ZN_CLASSES, ln_loop, standard, zn_groupoid
from .errors import FormatError, InvalidMagma
from .magma import Magma

# ---------------------------------------------------------------------------
# Cayley files
# ---------------------------------------------------------------------------


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            out.append((no, raw))
    return out


def _tokens(line: str) -> list[tuple[int, str]]:
    """Tokens with their 1-based column."""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def parse_cayley(text: str) -> Magma:
    """Parse a Cayley file; errors carry the line and column."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty Cayley file: expected a header of element names", line=1)
    hno, header = lines[0]
    htoks = _tokens(header)
    names = [t for _, t in htoks]
    seen: dict[str, int] = {}
    for col, t in htoks:
        if t in seen:
            raise FormatError(f"duplicate element name {t!r} in header", line=hno, column=col)
        seen[t] = len(seen)
    n = len(names)
    rows = lines[1:]
    if len(rows) != n:
        where = rows[n][0] if len(rows) > n else (rows[-1][0] + 1 if rows else hno + 1)
        raise FormatError(f"expected {n} table rows, found {len(rows)}", line=where)
    table = []
    for no, raw in rows:
        toks = _tokens(raw)
        if len(toks) != n:
            col = toks[n][0] if len(toks) > n else len(raw.rstrip()) + 1
            raise FormatError(f"expected {n} entries, found {len(toks)}", line=no, column=col)
        row = []
        for col, t in toks:
            if t not in seen:
                raise FormatError(f"{t!r} is not a declared element", line=no, column=col)
            row.append(seen[t])
        table.append(row)
    try:
        return Magma(names, table)
    except InvalidMagma as exc:
        raise FormatError(str(exc), line=hno) from None


def emit_cayley(m: Magma, comment: str | None = None) -> str:
    """Canonical text: single spaces, header order preserved, trailing newline."""
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(" ".join(m.elements))
    out.extend(" ".join(r) for r in m.rows())
    return "\n".join(out) + "\n"


def read_cayley(path: str | Path) -> Magma:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_cayley(text)


# ---------------------------------------------------------------------------
# Generator specs shared by the manifest and the CLI
# ---------------------------------------------------------------------------


def build_from_spec(spec: str) -> Magma:
    """Build a magma from ``family:arg:...``.

    * ``ln:N:M`` – the loop ``L_N(M)``
    * ``zn:N:T:U[:CLASS]`` – ``Z_N(T, U)`` (class ``z``, ``zstar``, ``zstarstar``, ``zzero``)
    * ``<family>:K`` – a standard family (``cyclic``, ``dihedral``, ``zn_mul``, ...)
    """
    fam, *args = spec.split(":")
    arity = {"ln": (2,), "ln-loop": (2,), "zn": (3, 4)}.get(fam, (1,) if fam in FAMILIES else None)
    if arity is None:
        raise FormatError(f"unknown generator family {fam!r} in {spec!r}")
    if len(args) not in arity:
        raise FormatError(f"generator {fam!r} takes {' or '.join(map(str, arity))} arguments in {spec!r}")
    try:
        nums = [int(a) for a in args[:3]]
    except ValueError:
        raise FormatError(f"non-integer argument in generator spec {spec!r}") from None
    if fam in ("ln", "ln-loop"):
        return ln_loop(*nums)
    if fam == "zn":
        return zn_groupoid(*nums, class_tag(args[3]) if len(args) == 4 else "Z")
    return standard(fam, nums[0])


_CLASS_ALIASES = {"z": "Z", "zstar": "Zstar", "zstarstar": "Zstarstar", "zzero": "Zzero"}


def class_tag(text: str) -> str:
    tag = _CLASS_ALIASES.get(text.lower(), text)
    if tag not in ZN_CLASSES:
        raise FormatError(f"unknown class {text!r}; use z, zstar, zstarstar or zzero")
    return tag


# ---------------------------------------------------------------------------
# Manifests
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ManifestEntry:
    label: str
    source: str  # "file" or "gen"
    value: str
    prefix: str = ""
    line: int = 0


@dataclass(frozen=True)
class Manifest:
    entries: tuple[ManifestEntry, ...]
    expect: str | None = None
    base: Path = field(default=Path("."), compare=False)

    def components(self) -> list[tuple[str, Magma]]:
        out = []
        for e in self.entries:
            try:
                if e.source == "file":
                    p = Path(e.value)
                    m = read_cayley(p if p.is_absolute() else self.base / p)
                else:
                    m = build_from_spec(e.value)
            except FormatError as exc:
                raise FormatError(f"component {e.label}: {exc}", line=e.line) from None
            out.append((e.label, m.with_prefix(e.prefix) if e.prefix else m))
        return out


def parse_manifest(text: str, base: str | Path = ".") -> Manifest:
    entries: list[ManifestEntry] = []
    expect = None
    for no, raw in _content_lines(text):
        toks = _tokens(raw)
        word = toks[0][1]
        if word == "component":
            if len(toks) < 3:
                raise FormatError("expected 'component <label> file=<path>|gen=<spec>'", line=no)
            label = toks[1][1]
            kv: dict[str, str] = {}
            for col, t in toks[2:]:
                if "=" not in t:
                    raise FormatError(f"expected key=value, got {t!r}", line=no, column=col)
                k, v = t.split("=", 1)
                if k not in ("file", "gen", "prefix"):
                    raise FormatError(f"unknown key {k!r}", line=no, column=col)
                kv[k] = v
            if ("file" in kv) == ("gen" in kv):
                raise FormatError("give exactly one of file= or gen=", line=no)
            if any(e.label == label for e in entries):
                raise FormatError(f"duplicate component label {label!r}", line=no, column=toks[1][0])
            src = "file" if "file" in kv else "gen"
            entries.append(ManifestEntry(label, src, kv[src], kv.get("prefix", ""), no))
        elif word == "expect":
            if len(toks) != 2 or not toks[1][1].startswith("kind="):
                raise FormatError("expected 'expect kind=<label>'", line=no)
            expect = toks[1][1].split("=", 1)[1]
        else:
            raise FormatError(f"unknown directive {word!r}", line=no, column=toks[0][0])
    if len(entries) < 2:
        raise FormatError(f"a manifest needs at least 2 components (found {len(entries)})")
    return Manifest(tuple(entries), expect, Path(base))


def read_manifest(path: str | Path) -> Manifest:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_manifest(text, p.parent)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _json_token(v: Any) -> str:
    # compact separators and ASCII escapes leave the plain space as the only
    # possible whitespace; escape it so the value stays a single token
    return json.dumps(v, separators=(",", ":")).replace(" ", "\\u0020")


def _is_plain(s: str) -> bool:
    """Whether ``s`` reads back as itself when written bare."""
    return (
        bool(s)
        and not any(c.isspace() for c in s)
        and s[0] not in "[\""
        and s not in ("true", "false", "none")
        and not re.fullmatch(r"-?\d+", s)
    )


def format_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return _json_token(list(v))
    s = str(v)
    if isinstance(v, int) or _is_plain(s):
        return s
    return _json_token(s)


def fact(head: str, value: Any, **kv: Any) -> str:
    """``fact: head=value k=v ...`` with keys in the given order."""
    parts = [f"{head}={format_value(value)}"]
    parts.extend(f"{k}={format_value(v)}" for k, v in kv.items())
    return "fact: " + " ".join(parts)


def summary(facts: int, status: str, **kv: Any) -> str:
    parts = [f"facts={facts}", f"status={status}"]
    parts.extend(f"{k}={format_value(v)}" for k, v in kv.items())
    return "summary: " + " ".join(parts)


def _parse_value(s: str) -> Any:
    if s in ("true", "false"):
        return s == "true"
    if s == "none":
        return None
    if re.fullmatch(r"-?\d+", s):
        return int(s)
    if s[:1] in "[\"":
        return json.loads(s)
    return s


@dataclass
class Report:
    facts: list[dict[str, Any]]
    summary: dict[str, Any]

    def find(self, head: str, **match: Any) -> list[dict[str, Any]]:
        return [
            f for f in self.facts if head in f and all(f.get(k) == v for k, v in match.items())
        ]


_PAIR = re.compile(r'([^\s=]+)=("(?:[^"\\]|\\.)*"|\S+)(?=\s|$)')


def parse_report(text: str) -> Report:
    facts: list[dict[str, Any]] = []
    summ: dict[str, Any] | None = None
    for no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        kind, _, rest = raw.partition(": ")
        if kind not in ("fact", "summary"):
            raise FormatError(f"expected 'fact:' or 'summary:' line, got {raw[:20]!r}", line=no)
        row: dict[str, Any] = {}
        pos = 0
        while pos < len(rest):
            if rest[pos].isspace():
                pos += 1
                continue
            m = _PAIR.match(rest, pos)
            if m is None:
                tok = rest[pos:].split()[0]
                raise FormatError(f"expected key=value, got {tok!r}", line=no, column=len(kind) + 3 + pos)
            row[m.group(1)] = _parse_value(m.group(2))
            pos = m.end()
        if kind == "fact":
            facts.append(row)
        else:
            summ = row
    if summ is None:
        raise FormatError("report has no summary line")
    return Report(facts, summ)


def names_value(names: Iterable[str] | None) -> list[str] | None:
    return None if names is None else list(names)
