"""Command-line front end: ``magmakit <command> ...``.

Exit status: 0 the checked property holds (or the command succeeded),
1 the property fails, 2 bad input, 3 a resource cap was hit.
Reports are ``fact:`` lines followed by one ``summary:`` line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import formats
from .catalog import FAMILIES, ln_loop, standard, zn_groupoid
from .errors import CapExceeded, MagmaError
from .formats import fact, summary
from .identities import IDENTITY_NAMES, check_identity
from .magma import Magma
from .nstructure import (
    NKINDS,
    REPORT_SECTIONS,
    NStructure,
    SubNStructure,
    assemble,
    cauchy_analysis,
    coset,
    is_normal_sub,
    lagrange_analysis,
    parse_requirement,
    smarandache_n_analysis,
    sub_from_names,
    sylow_analysis,
    verify_sub,
)
from .substructure import ROLE_FILTERS, enumerate_submagmas, s_analysis
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
MAX_WITNESSES = 20


class _Out:
    """Collects fact lines and writes them with a closing summary."""

    def __init__(self, stream: TextIO):
        self.stream = stream
        self.count = 0

    def fact(self, head: str, value, **kv) -> None:
        print(fact(head, value, **kv), file=self.stream)
        self.count += 1

    def close(self, status: str, **kv) -> None:
        print(summary(self.count, status, **kv), file=self.stream)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace, o: _Out) -> int:
    if args.family_kind == "ln-loop":
        m = ln_loop(args.n, args.m)
        note = f"L_{args.n}({args.m})"
    elif args.family_kind == "zn":
        tag = formats.class_tag(args.cls)
        m = zn_groupoid(args.n, args.t, args.u, tag)
        note = f"Z_{args.n}({args.t},{args.u}) class {tag}"
    else:
        m = standard(args.family, args.size, args.prefix or "")
        note = f"{args.family} size {args.size}"
    text = formats.emit_cayley(m, comment=note)
    if args.output:
        Path(args.output).write_text(text)
    else:
        o.stream.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# single-table commands
# ---------------------------------------------------------------------------


def _names(m: Magma, ids) -> list[str]:
    return m.names(ids)


def cmd_classify(args: argparse.Namespace, o: _Out) -> int:
    m = formats.read_cayley(args.file)
    k = m.kind
    o.fact(
        "label", k.label, coarse=k.coarse, n=m.n, associative=k.associative, commutative=k.commutative,
        latin_square=k.latin_square, identity=None if k.identity is None else m.elements[k.identity],
        has_inverses=k.has_inverses,
        left_identities=_names(m, k.left_identities), right_identities=_names(m, k.right_identities),
    )
    o.close("ok")
    return EXIT_OK


def cmd_check(args: argparse.Namespace, o: _Out) -> int:
    m = formats.read_cayley(args.file)
    r = check_identity(m, args.identity)
    ce = None if r.counterexample is None else _names(m, r.counterexample)
    o.fact("identity", args.identity, holds=r.holds, counterexample=ce)
    o.close("holds" if r.holds else "fails")
    return EXIT_OK if r.holds else EXIT_FALSE


def cmd_subs(args: argparse.Namespace, o: _Out) -> int:
    m = formats.read_cayley(args.file)
    subs = enumerate_submagmas(m, args.kind, args.mode)
    proper = 0
    for s in subs:
        proper += s.proper
        o.fact("sub", args.kind, size=s.size, proper=s.proper, label=s.kind.label,
               elements=s.names(), roles=sorted(s.roles))
    o.close("holds" if proper else "fails", proper=proper, complete=subs.complete)
    return EXIT_OK if proper else EXIT_FALSE


def cmd_smarandache(args: argparse.Namespace, o: _Out) -> int:
    m = formats.read_cayley(args.file)
    sa = s_analysis(m, args.mode)
    for v in sa.as_list():
        wit = [w.names() for w in v.witnesses[:MAX_WITNESSES]]
        o.fact(v.name, v.verdict, permissive=v.permissive, witness_count=len(v.witnesses), witnesses=wit)
    if args.property:
        if args.property not in sa.verdicts:
            raise MagmaError(f"unknown property {args.property!r}; expected one of {sorted(sa.verdicts)}")
        holds = sa[args.property].verdict
        o.close("holds" if holds else "fails", property=args.property, complete=sa.complete)
        return EXIT_OK if holds else EXIT_FALSE
    o.close("ok", complete=sa.complete)
    return EXIT_OK


# ---------------------------------------------------------------------------
# nanalyze
# ---------------------------------------------------------------------------


def _witness(h: SubNStructure) -> list[list[str] | None]:
    return h.names()


def _load_ns(path: str) -> NStructure:
    man = formats.read_manifest(path)
    return assemble(man.components(), man.expect)


def _parse_sub(ns: NStructure, text: str, requirement) -> SubNStructure:
    try:
        slots = json.loads(text)
    except json.JSONDecodeError as exc:
        raise formats.FormatError(f"--sub must be a JSON list of name lists: {exc.msg}", column=exc.pos + 1) from None
    if not isinstance(slots, list) or not all(s is None or isinstance(s, list) for s in slots):
        raise formats.FormatError("--sub must be a JSON list whose entries are name lists or null")
    req = requirement if requirement is not None else None
    return sub_from_names(ns, slots, req)


def cmd_nanalyze(args: argparse.Namespace, o: _Out) -> int:
    ns = _load_ns(args.manifest)
    sections = [s.strip() for s in args.report.split(",") if s.strip()]
    unknown = set(sections) - set(REPORT_SECTIONS) - {"cosets"}
    if unknown:
        raise MagmaError(f"unknown report sections {sorted(unknown)}")
    req = parse_requirement(ns, args.require)
    h = _parse_sub(ns, args.sub, args.require) if args.sub else None
    o.fact("order", ns.order, kind=ns.nkind, components=ns.n, labels=list(ns.labels),
           component_orders=list(ns.component_orders), disjoint=ns.disjoint, requirement=list(req))
    status = "ok"
    if "lagrange" in sections:
        rep = lagrange_analysis(ns, req, args.mode)
        o.fact("lagrange", rep.verdict, total=ns.order, dividing=rep.dividing_orders,
               non_dividing=rep.non_dividing_orders)
        for w in rep.witnesses:
            o.fact("lagrange", rep.verdict, witness_order=w.order, total=ns.order, divides=w.divides,
                   n_order=w.sub.n_order, count=w.count, pseudo_divides=w.sub.pseudo_divides(),
                   witness=_witness(w.sub))
    if "sylow" in sections:
        for f in sylow_analysis(ns, req, args.mode):
            if f.status == "none" and f.alpha == 0:
                continue
            o.fact("sylow", f.status, p=f.p, alpha=f.alpha, exponents=list(f.exponents),
                   exact=f.exact, witness_orders=[w.order for w in f.witnesses],
                   witness=_witness(f.witnesses[-1].sub) if f.witnesses else None)
    if "cauchy" in sections:
        rep = cauchy_analysis(ns)
        eligible = [c for c in rep.elements if c.eligible]
        o.fact("cauchy", rep.verdict, total=ns.order, eligible=len(eligible),
               cauchy_elements=sum(c.cauchy for c in eligible))
        for c in eligible:
            o.fact("cauchy_element", c.cauchy, component=c.component, element=c.name, t=c.t,
                   divides_total=c.cauchy, s_cauchy=c.s_cauchy)
    if "smarandache" in sections:
        rep = smarandache_n_analysis(ns, args.mode)
        o.fact("slot_roles", list(rep.slot_roles))
        for v in rep.verdicts.values():
            o.fact(v.name, v.holds, witness=None if v.witness is None else _witness(v.witness))
        o.fact("s_inverse_pairs", len(rep.inverse_pairs),
               first=None if not rep.inverse_pairs else [rep.inverse_pairs[0].component, rep.inverse_pairs[0].x, rep.inverse_pairs[0].y])
        o.fact("s_conjugate_pairs", len(rep.conjugate_pairs),
               first=None if not rep.conjugate_pairs else [rep.conjugate_pairs[0].component, rep.conjugate_pairs[0].x, rep.conjugate_pairs[0].y])
    if h is not None:
        ok = verify_sub(h)
        normal = is_normal_sub(ns, h) if ok and h.full and ns.nkind == "n_group" else None
        o.fact("sub", ok, order=h.order, n_order=h.n_order, total=ns.order,
               divides=ns.order % h.order == 0 if h.order else None,
               pseudo_divides=h.pseudo_divides(), normal=normal, witness=_witness(h))
        if not ok:
            status = "invalid_sub"
    if "cosets" in sections:
        if h is None:
            o.fact("cosets", "skipped", reason="needs_--sub")
        else:
            elements = args.element or list(ns.elements)
            for a in elements:
                c = coset(ns, h, a, args.side)
                o.fact("coset", c.smarandache, element=a, side=c.side, translated=list(c.translated),
                       slots=[list(s) for s in c.slots], other_side=[list(s) for s in c.other_side])
    o.close(status)
    return EXIT_OK if status == "ok" else EXIT_FALSE


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace, o: _Out) -> int:
    checks = run_suite(args.suite, args.max_n)
    for c in checks:
        extra = {}
        if c.expected_mismatch:
            extra = {"stated": c.stated, "recomputed": c.recomputed}
        o.fact("theorem", c.id, status=c.status, range=c.checked_range or None, detail=c.detail or None, **extra)
    failed = [c.id for c in checks if c.status == "fail"]
    o.close("ok" if not failed else "fail", suite=args.suite, passed=sum(c.status == "pass" for c in checks),
            expected_mismatch=sum(c.status == "expected_mismatch" for c in checks), failed=failed)
    if failed:
        print("failing theorems: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FALSE
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="magmakit",
        description="Finite magmas, loops, groupoids and N-structures.",
        epilog="Exit status: 0 holds/ok, 1 property false, 2 input error, 3 resource cap "
        "(exhaustive enumeration cap: env MAGMA_MAX_EXHAUSTIVE).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="emit a Cayley table")
    gs = g.add_subparsers(dest="family_kind", required=True)
    a = gs.add_parser("ln-loop", help="the loop L_n(m)")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--m", type=int, required=True)
    a = gs.add_parser("zn", help="the groupoid Z_n(t,u): a*b = ta + ub mod n")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--t", type=int, required=True)
    a.add_argument("--u", type=int, required=True)
    a.add_argument("--class", dest="cls", default="z", help="z | zstar | zstarstar | zzero (default z)")
    a = gs.add_parser("std", help="a standard family member")
    a.add_argument("--family", required=True, choices=FAMILIES)
    a.add_argument("--size", type=int, required=True)
    a.add_argument("--prefix", default="")
    for q in gs.choices.values():
        q.add_argument("-o", "--output", help="write to this file instead of stdout")

    a = sub.add_parser("classify", help="classify a Cayley table")
    a.add_argument("file")
    a = sub.add_parser("check", help="check a named identity (exit 0 holds, 1 fails)")
    a.add_argument("--identity", required=True, choices=IDENTITY_NAMES)
    a.add_argument("file")
    a = sub.add_parser("subs", help="list closed subsets of a kind (exit 0 if a proper one exists)")
    a.add_argument("--kind", required=True, choices=ROLE_FILTERS)
    a.add_argument("--mode", default="exhaustive", help="exhaustive | gen:K")
    a.add_argument("file")
    a = sub.add_parser("smarandache", help="single-structure Smarandache verdicts")
    a.add_argument("--property", help="exit 0/1 on this verdict")
    a.add_argument("--mode", default="exhaustive", help="exhaustive | gen:K")
    a.add_argument("file")

    a = sub.add_parser("nanalyze", help="analyse an N-structure manifest")
    a.add_argument("manifest")
    a.add_argument("--report", default="lagrange,sylow,cauchy,smarandache",
                   help="comma list of lagrange, sylow, cauchy, smarandache, cosets")
    a.add_argument("--require", help="per-slot kinds, e.g. g,l,s,gr (- marks an absent slot)")
    a.add_argument("--mode", default="exhaustive", help="exhaustive | gen:K")
    a.add_argument("--sub", help='a selection as JSON, e.g. \'[["a","b"],["c"]]\'; rechecked and used for cosets')
    a.add_argument("--element", action="append", help="coset element (repeatable; default: all)")
    a.add_argument("--side", default="right", choices=("left", "right"))

    a = sub.add_parser("verify", help="run a theorem or worked-example suite")
    a.add_argument("--suite", required=True, choices=SUITES)
    a.add_argument("--max-n", type=int, default=None)
    return p


_COMMANDS = {
    "gen": cmd_gen,
    "classify": cmd_classify,
    "check": cmd_check,
    "subs": cmd_subs,
    "smarandache": cmd_smarandache,
    "nanalyze": cmd_nanalyze,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    o = _Out(out if out is not None else sys.stdout)
    try:
        return _COMMANDS[args.command](args, o)
    except CapExceeded as exc:
        where = f" in component {exc.component}" if exc.component else ""
        print(f"error: resource cap exceeded{where}: {exc}", file=sys.stderr)
        if args.command != "gen":
            o.close("cap_exceeded", component=exc.component)
        return EXIT_CAP
    except (MagmaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.command != "gen":
            o.close("input_error", error=type(exc).__name__)
        return EXIT_INPUT
    except BrokenPipeError:
        # the reader went away (e.g. `| head`); silence the interpreter's flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

__all__ = ["NKINDS", "build_parser", "main"]
