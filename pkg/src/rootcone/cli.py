"""Command-line front end: ``rootcone {roots,check,relations,census,symmetry}``.

Exit codes: 0 success, 2 parse or validation error, 3 E8 classification
refused without ``--assume-conjecture``, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .census import (
    LARGE_TYPES,
    CensusError,
    CensusOptions,
    CensusSummary,
    ClassificationRecord,
    SCHEMA_VERSION,
    enumerate_reductive_subalgebras,
    record_to_json,
    run_census,
    summarize,
)
from .conditions import (
    ConeFails,
    ConeHolds,
    ConjecturalError,
    ExtensionNeeded,
    Relation,
    StrictlyInfinite,
    centralizer_condition,
    certificate_kind,
    classify,
    compute_S,
    cone_condition,
    find_certificate,
    minimal_relations,
    verify_certificate,
)
from .exact import CertificateError
from .rootsystem import (
    RootSystem,
    RootSystemError,
    build,
    closure,
    dynkin_type_of,
    format_root,
    parse_root,
    subsystem_simple_roots,
)
from .subalgebra import SubalgebraError, centralizer_of, make_subalgebra, singular_weights
from .symmetry import SymmetryError, restricted_symmetry_group

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REFUSED = 3
EXIT_INTERNAL = 4


class CliError(ValueError):
    """Bad command-line input; reported with exit code 2."""


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_root_spec(text: str, ambient: RootSystem) -> int:
    """Root index for ``2e1``, ``e1-e2``, ``a1+2a2``, ``g1+3g2`` or ``[1,0,1]``."""
    try:
        return parse_root(ambient, text)
    except RootSystemError as exc:
        raise CliError(str(exc)) from None


def split_root_list(text: str) -> List[str]:
    """Split on commas or semicolons outside brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch in ",;" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


def parse_root_list(text: Optional[str], ambient: RootSystem) -> List[int]:
    return [parse_root_spec(s, ambient) for s in split_root_list(text or "")]


# ---------------------------------------------------------------------------
# Presentation helpers
# ---------------------------------------------------------------------------


def k_components(rs: RootSystem, k: Sequence[int]) -> List[Tuple[str, frozenset]]:
    """Simple components of ``k`` as (label, roots); repeated types get a ``[j]`` suffix."""
    simple = subsystem_simple_roots(rs, k)
    ip = rs.inner_table
    comps: List[List[int]] = []
    seen = set()
    for s in simple:
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in simple:
                if y not in seen and ip[x, y] != 0:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        roots = closure(rs, comp + [int(rs.neg[i]) for i in comp])
        out.append((str(dynkin_type_of(rs, roots)), roots))
    counts: Dict[str, int] = {}
    for label, _ in out:
        counts[label] = counts.get(label, 0) + 1
    numbered, used = [], {}
    for label, roots in out:
        if counts[label] > 1:
            used[label] = used.get(label, 0) + 1
            label = f"{label}[{used[label]}]"
        numbered.append((label, roots))
    return numbered


def linked_components(rs: RootSystem, comps, root: int) -> str:
    """Components of ``k`` containing a root not orthogonal to ``root``."""
    ip = rs.inner_table
    names = [label for label, roots in comps if any(ip[root, r] != 0 for r in roots)]
    return "+".join(names) if names else "-"


def _scalar(rs: RootSystem, a: int, b: int) -> int:
    # the Gram normalization: epsilon form for classical types, long roots of F4 have norm 4
    return int(rs.inner_table[a, b])


def relation_details(rs: RootSystem, k: Sequence[int], rel: Relation) -> dict:
    """Linked components, generated subsystem types and nonzero scalar products of a relation."""
    comps = k_components(rs, k)
    alphas = [r for r, m in rel.alphas for _ in range(m)]
    betas = [r for r, m in rel.betas for _ in range(m)]
    roots = sorted(set(alphas + betas))
    gen = closure(rs, roots + [int(rs.neg[r]) for r in roots])
    with_k = closure(rs, list(gen) + list(k))
    names = [(f"a{i + 1}", r) for i, r in enumerate(alphas)] + [(f"b{j + 1}", r) for j, r in enumerate(betas)]
    products = []
    for i, (na, ra) in enumerate(names):
        for nb, rb in names[i + 1:]:
            v = _scalar(rs, ra, rb)
            if v != 0 and ra != rb:
                products.append(f"<{na},{nb}>={v}")
    return {
        "alpha_links": [linked_components(rs, comps, r) for r in alphas],
        "beta_links": [linked_components(rs, comps, r) for r in betas],
        "generate": str(dynkin_type_of(rs, gen)),
        "with_k_generate": str(dynkin_type_of(rs, with_k)),
        "scalar_products": products,
    }


def _links(links: Sequence[str], prefix: str) -> str:
    return ", ".join(f"{prefix}{i + 1}: {x if x != '-' else 'none'}" for i, x in enumerate(links))


def _relation_lines(rs: RootSystem, k: Sequence[int], rel: Relation, indent: str = "    ") -> List[str]:
    d = relation_details(rs, k, rel)
    return [
        f"{indent}relation: {rel.format(rs)}",
        f"{indent}  linked k-components: {_links(d['alpha_links'], 'a')}; {_links(d['beta_links'], 'b')}",
        f"{indent}  roots of the relation generate {d['generate']}; adding k generates {d['with_k_generate']}",
        f"{indent}  nonzero scalar products: {', '.join(d['scalar_products']) or 'none'}",
    ]


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in v) + ")"


def _roots_text(rs: RootSystem, idx) -> str:
    return "{" + ", ".join(format_root(rs, i) for i in sorted(idx)) + "}"


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


CSV_FIELDS = ["type", "k_type", "k", "n", "cone", "centralizer", "levi_type", "verdict",
              "certificate", "relation", "W3", "W2", "W1", "weyl_classes"]


def _summary_lines(s: CensusSummary) -> List[str]:
    opts = s.options or {}
    filt = "on" if opts.get("parabolic_filter", True) else "off"
    kind = "root" if opts.get("include_solvable") else "non-solvable root"
    return [
        f"{s.type}: {s.total} {kind} subalgebras up to automorphism (parabolic filter {filt})",
        f"cone condition: {s.cone_holds} satisfy, {s.cone_fails} do not",
        f"verdict: {s.finite} finite type, {s.infinite} infinite type",
        f"extension needed: {s.extension_needed}",
        f"classes up to the Weyl group: {s.weyl_classes}",
    ]


def _record_lines(rec: ClassificationRecord) -> List[str]:
    rs = build(rec.ambient)
    k_pos = [i for i in rec.k_roots if rs.positive[i]]
    lines = [
        f"  Delta(k) = +-{_roots_text(rs, k_pos)}",
        f"  Delta(n) = {_roots_text(rs, rec.n_roots)}",
        f"    cone: {'holds' if rec.cone_holds else 'fails'}; centralizer: "
        f"{'holds' if rec.centralizer_holds else 'fails'} (levi {rec.levi_type}); verdict: {rec.verdict}",
    ]
    cert = rec.certificate
    if isinstance(cert, StrictlyInfinite):
        lines += _relation_lines(rs, rec.k_roots, cert.relation)
        dec = " + ".join((f"{c}" if c > 1 else "") + f"({format_root(rs, b)})" for b, c in zip(cert.basis, cert.coeffs))
        lines.append(f"      strongly orthogonal decomposition: {dec}")
    elif isinstance(cert, ConeFails):
        lines += _relation_lines(rs, rec.k_roots, cert.relation)
    elif isinstance(cert, ExtensionNeeded):
        lines.append(f"    no strongly orthogonal decomposition up to {cert.cutoff} summands (extension needed)")
    return lines


def emit_table(records: Sequence[ClassificationRecord], summary: CensusSummary, fmt: str = "text") -> str:
    """Render census records as text (per-k blocks), JSON (census file schema) or CSV."""
    if fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, "summary": asdict(summary),
                   "records": [record_to_json(r) for r in records]}
        return json.dumps(payload, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in records:
            d = record_to_json(r)
            cert = d["certificate"]
            rel = ""
            if isinstance(r.certificate, (StrictlyInfinite, ConeFails)):
                rel = r.certificate.relation.format(build(r.ambient))
            w.writerow({
                "type": d["type"], "k_type": d["k_type"], "k": " ".join(d["k"]), "n": " ".join(d["n"]),
                "cone": d["cone"], "centralizer": d["centralizer"], "levi_type": d["levi_type"],
                "verdict": d["verdict"], "certificate": cert["verdict"], "relation": rel,
                "W3": r.symmetry[0], "W2": r.symmetry[1], "W1": r.symmetry[2], "weyl_classes": r.weyl_classes,
            })
        return buf.getvalue()
    if fmt != "text":
        raise CliError(f"unknown format {fmt!r}")
    lines = _summary_lines(summary)
    current = None
    for r in records:
        if r.k_type != current:
            current = r.k_type
            w3, w2, w1 = r.symmetry
            lines.append("")
            lines.append(f"k-semisimple type: {r.k_type}   #W'''={w3} #W''={w2} #W'={w1}")
        lines += _record_lines(r)
    return "\n".join(lines) + "\n"


def _emit_rows(rows: List[dict], fmt: str, header: Sequence[str]) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({h: row[h] for h in header})
        return buf.getvalue()
    widths = [max([len(h)] + [len(str(r[h])) for r in rows]) for h in header]
    out = ["  ".join(h.ljust(wd) for h, wd in zip(header, widths))]
    for r in rows:
        out.append("  ".join(str(r[h]).ljust(wd) for h, wd in zip(header, widths)).rstrip())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_roots(args) -> str:
    rs = build(args.type)
    rows = []
    for i in range(rs.size):
        rows.append({
            "index": i,
            "root": format_root(rs, i),
            "simple": "[" + ",".join(str(int(x)) for x in rs.roots[i]) + "]",
            "norm": int(rs.norms[i]),
            "positive": bool(rs.positive[i]),
        })
    return _emit_rows(rows, args.emit, ["index", "root", "simple", "norm", "positive"])


def _subalgebra(args):
    rs = build(args.type)
    k = parse_root_list(args.k, rs)
    n = parse_root_list(args.n, rs)
    try:
        return make_subalgebra(rs, k, n)
    except SubalgebraError as exc:
        raise CliError(str(exc)) from None


def cmd_check(args) -> str:
    l = _subalgebra(args)
    rs = l.ambient
    verdict = classify(l, assume_conjecture=args.assume_conjecture)
    cone = cone_condition(l)
    ok, levi = centralizer_condition(l)
    cert = cone if isinstance(cone, ConeHolds) else find_certificate(l)
    verify_certificate(l, cert)
    data = {
        "type": str(rs.type),
        "k_type": str(l.k_type),
        "k": [format_root(rs, i) for i in l.k_positive],
        "n": [format_root(rs, i) for i in sorted(l.n)],
        "singular_weights": [format_root(rs, i) for i in sorted(singular_weights(l))],
        "S": [format_root(rs, i) for i in sorted(compute_S(l))],
        "cone": "holds" if isinstance(cone, ConeHolds) else "fails",
        "centralizer": "holds" if ok else "fails",
        "levi_type": str(levi),
        "verdict": str(verdict),
        "certificate": certificate_kind(cert),
    }
    if isinstance(cone, ConeHolds):
        data["separator"] = [str(Fraction(x)) for x in cone.separator]
    else:
        data["relation"] = cone.relation.format(rs)
    if isinstance(cert, StrictlyInfinite):
        data["infinite_relation"] = cert.relation.format(rs)
        data["orth_decomposition"] = [[format_root(rs, b), c] for b, c in zip(cert.basis, cert.coeffs)]
    if args.emit == "json":
        return json.dumps(data, indent=1) + "\n"
    if args.emit == "csv":
        flat = {key: (" ".join(map(str, v)) if isinstance(v, list) else v) for key, v in data.items()}
        return _emit_rows([flat], "csv", list(flat))
    lines = [
        f"{data['type']}: k of type {data['k_type']}, Delta(k) = +-{_roots_text(rs, l.k_positive)}",
        f"Delta(n) = {_roots_text(rs, l.n)}",
        f"singular weights: {_roots_text(rs, singular_weights(l))}",
        f"cone condition: {data['cone']}",
    ]
    if isinstance(cone, ConeHolds):
        lines.append(f"  separator h = {_fmt_vec(cone.separator)} (simple-root pairing)")
    else:
        lines += _relation_lines(rs, sorted(l.k), cone.relation, indent="  ")
    lines.append(f"centralizer condition: {data['centralizer']} (levi type {levi})")
    lines.append(f"verdict: {verdict} type")
    if isinstance(cert, StrictlyInfinite):
        lines.append("certificate: l-strictly infinite weight")
        lines += _relation_lines(rs, sorted(l.k), cert.relation, indent="  ")
        dec = " + ".join((f"{c}" if c > 1 else "") + f"({format_root(rs, b)})" for b, c in zip(cert.basis, cert.coeffs))
        lines.append(f"  strongly orthogonal decomposition: {dec}")
    elif isinstance(cert, ExtensionNeeded):
        lines.append(f"certificate: none up to {cert.cutoff} summands (extension needed)")
    return "\n".join(lines) + "\n"


def cmd_relations(args) -> str:
    l = _subalgebra(args)
    rs = l.ambient
    if isinstance(cone_condition(l), ConeHolds):
        raise CliError("the cone condition holds; there are no relations")
    rels = minimal_relations(l)
    rows = []
    for r in rels:
        d = relation_details(rs, sorted(l.k), r)
        rows.append({
            "relation": r.format(rs),
            "length": r.length,
            "two_sided": r.two_sided,
            "alpha_links": " ".join(d["alpha_links"]),
            "beta_links": " ".join(d["beta_links"]),
            "generate": d["generate"],
            "with_k_generate": d["with_k_generate"],
            "scalar_products": " ".join(d["scalar_products"]),
        })
    if args.emit == "text":
        lines = [f"{len(rels)} minimal relation(s) of length {rels[0].length}"]
        for r in rels:
            lines += _relation_lines(rs, sorted(l.k), r, indent="  ")
            lines.append(f"    two-sided: {'yes' if r.two_sided else 'no'}")
        return "\n".join(lines) + "\n"
    return _emit_rows(rows, args.emit, list(rows[0]))


def cmd_census(args) -> str:
    options = CensusOptions(
        include_solvable=args.include_solvable,
        parabolic_filter=not args.no_parabolic_filter,
        large=args.large,
        threads=args.threads,
        seed_order=args.seed_order,
        assume_conjecture=args.assume_conjecture,
    )
    records, summary = run_census(args.type, options)
    return emit_table(records, summary, args.emit)


def cmd_symmetry(args) -> str:
    rs = build(args.type)
    if args.k is not None:
        k = make_subalgebra(rs, parse_root_list(args.k, rs)).k
        ks = [(tuple(sorted(k)), dynkin_type_of(rs, k))]
    else:
        if str(rs.type) in LARGE_TYPES and not args.large:
            raise CliError(f"listing every reductive class of {rs.type} is long-running; pass --large")
        ks = enumerate_reductive_subalgebras(rs)
    rows = []
    for k, ty in ks:
        c = centralizer_of(rs, k)
        w3, w2, w1 = restricted_symmetry_group(rs, k, c).orders
        rows.append({"k_ss": str(ty) if k else "-", "C(k_ss)_ss": str(dynkin_type_of(rs, c)) if c else "-",
                     "W''": w2, "W'''": w3, "W'": w1})
    return _emit_rows(rows, args.emit, ["k_ss", "C(k_ss)_ss", "W''", "W'''", "W'"])


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, help="ambient type, e.g. C3, F4, E6")
    common.add_argument("--emit", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write the output to this file instead of stdout")

    sub_spec = argparse.ArgumentParser(add_help=False)
    sub_spec.add_argument("--k", default="", help="comma-separated roots generating k")
    sub_spec.add_argument("--n", default="", help="comma-separated roots generating n")

    p = argparse.ArgumentParser(prog="rootcone", description="Cone and centralizer conditions for root subalgebras.")
    sp = p.add_subparsers(dest="command", required=True)
    sp.add_parser("roots", parents=[common], help="list the roots")
    c = sp.add_parser("check", parents=[common, sub_spec], help="classify one subalgebra")
    c.add_argument("--assume-conjecture", action="store_true")
    sp.add_parser("relations", parents=[common, sub_spec], help="minimal cone relations")
    cs = sp.add_parser("census", parents=[common], help="enumerate and classify all subalgebras")
    cs.add_argument("--no-parabolic-filter", action="store_true")
    cs.add_argument("--include-solvable", action="store_true")
    cs.add_argument("--large", action="store_true", help="allow E7 and E8")
    cs.add_argument("--assume-conjecture", action="store_true")
    cs.add_argument("--threads", type=int, default=1)
    cs.add_argument("--seed-order", type=int, default=None, help="random total order used for deduplication")
    sy = sp.add_parser("symmetry", parents=[common], help="orders of the groups W''', W'', W'")
    sy.add_argument("--k", default=None, help="one k (default: every reductive class)")
    sy.add_argument("--large", action="store_true", help="allow listing E7 and E8")
    return p


COMMANDS = {"roots": cmd_roots, "check": cmd_check, "relations": cmd_relations,
            "census": cmd_census, "symmetry": cmd_symmetry}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        text = COMMANDS[args.command](args)
    except ConjecturalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (CertificateError, SymmetryError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CliError, RootSystemError, SubalgebraError, CensusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            sys.stdout = open(os.devnull, "w")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
