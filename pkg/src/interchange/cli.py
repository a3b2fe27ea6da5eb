"""Command-line interface.

Subcommands cover the whole pipeline: Schröder counts, association-type
listings, the normalized consequence set, graph dumps, component censuses,
monodromy analysis, identity extraction with proofs, proof replay, the
degree-16 derivation check, and free-monomial counts.  Exit status is 0 on
success, 1 when a verification fails, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional

from . import cycles, graph as graph_mod, rewrite, terms, witness


class CliError(Exception):
    """Usage-level failure (exit status 2)."""


def _resolve_cache_dir(args) -> "Optional[str]":
    if getattr(args, "no_cache", False):
        return None
    if getattr(args, "cache_dir", None):
        return args.cache_dir
    return graph_mod.default_cache_dir()


def _load_graph(args) -> graph_mod.QuotientGraph:
    return graph_mod.build_quotient_graph(
        args.degree, workers=args.workers, cache_dir=_resolve_cache_dir(args)
    )


def _out_stream(args):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="utf-8", newline="")
    return None


def _emit(args, text: str) -> None:
    stream = _out_stream(args)
    if stream is None:
        sys.stdout.write(text)
    else:
        with stream:
            stream.write(text)


def _require_degree(args, low: int, high: "Optional[int]" = None) -> int:
    degree = args.degree
    if degree is None:
        raise CliError("--degree is required")
    if degree < low or (high is not None and degree > high):
        bound = f"{low}..{high}" if high is not None else f">= {low}"
        raise CliError(f"degree {degree} out of range ({bound})")
    return degree


def _json_dumps(value) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Command handlers


def cmd_schroeder(args) -> int:
    degree = _require_degree(args, 1)
    counts = terms.schroeder_large(degree)
    if args.format == "json":
        _emit(args, _json_dumps({"degree": degree, "counts": counts}) + "\n")
    else:
        _emit(args, "".join(f"{n}\t{count}\n" for n, count in enumerate(counts, start=1)))
    return 0


def cmd_types(args) -> int:
    degree = _require_degree(args, 1)
    table = terms.shape_table(degree)
    if args.format == "json":
        rows = [
            {"index": i, "type": terms.format_shape(shape)}
            for i, shape in enumerate(table, start=1)
        ]
        _emit(args, _json_dumps(rows) + "\n")
    else:
        _emit(
            args,
            "".join(
                f"{i}: {terms.format_shape(shape)}\n"
                for i, shape in enumerate(table, start=1)
            ),
        )
    return 0


def cmd_relations(args) -> int:
    degree = _require_degree(args, 2)
    relations = rewrite.generate_relations(degree, workers=args.workers)
    if args.format == "json":
        lines = "".join(
            _json_dumps({"left": r.left, "right": r.right, "perm": list(r.sigma)}) + "\n"
            for r in relations
        )
        _emit(args, lines)
        if args.out:
            table = terms.shape_table(degree)
            sidecar = args.out + ".types.json"
            with open(sidecar, "w", encoding="utf-8") as handle:
                for i, shape in enumerate(table, start=1):
                    handle.write(
                        _json_dumps({"index": i, "type": terms.format_shape(shape)}) + "\n"
                    )
    else:
        _emit(
            args,
            "".join(
                f"{r.left}\t{r.right}\t{terms.format_perm(r.sigma)}\n" for r in relations
            ),
        )
    print(f"{len(relations)} relations in degree {degree}", file=sys.stderr)
    return 0


def cmd_graph(args) -> int:
    degree = _require_degree(args, 2)
    graph = _load_graph(args)
    if args.format == "dot":
        _emit(args, graph_mod.graph_to_dot(graph))
    elif args.format == "json":
        _emit(args, _json_dumps(graph_mod.graph_to_json(graph)) + "\n")
    else:
        raise CliError("graph supports --format json|dot")
    return 0


def cmd_components(args) -> int:
    degree = _require_degree(args, 2)
    graph = _load_graph(args)
    size_hist, rank_hist = graph_mod.component_summary(graph)
    components = graph_mod.connected_components(graph)
    if args.format == "json":
        payload = {
            "degree": degree,
            "vertices": graph.vertex_count,
            "edge_pairs": graph.edge_pair_count,
            "isolated": graph.isolated_count,
            "component_count": len(components),
            "size_histogram": {str(k): v for k, v in size_hist.items()},
            "rank_histogram": {str(k): v for k, v in rank_hist.items()},
        }
        _emit(args, _json_dumps(payload) + "\n")
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["kind", "key", "count"])
        for size, count in size_hist.items():
            writer.writerow(["size", size, count])
        for rank, count in rank_hist.items():
            writer.writerow(["rank", rank, count])
        _emit(args, buffer.getvalue())
    else:
        lines = [
            f"degree {degree}: {graph.vertex_count} vertices, "
            f"{graph.edge_pair_count} edge pairs, {graph.isolated_count} isolated, "
            f"{len(components)} components",
            "size histogram: "
            + ", ".join(f"{k}:{v}" for k, v in size_hist.items()),
            "rank histogram: "
            + ", ".join(f"{k}:{v}" for k, v in rank_hist.items()),
        ]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _analysis_rows(graph) -> "list[dict]":
    rows = []
    for report in cycles.monodromy_reports(graph):
        comp = graph_mod.connected_components(graph)[report.component_id - 1]
        rows.append(
            {
                "id": report.component_id,
                "v": comp.size,
                "e": comp.edge_pairs,
                "r": comp.circuit_rank,
                "base": report.base,
                "group_order": report.group_order,
                "nontrivial": report.nontrivial,
                "sample_perm": list(report.sample) if report.sample else None,
            }
        )
    return rows


def cmd_analyze(args) -> int:
    degree = _require_degree(args, 2)
    graph = _load_graph(args)
    rows = _analysis_rows(graph)
    nontrivial = cycles.find_nontrivial_components(graph)
    if args.format == "json":
        payload = {"degree": degree, "components": rows}
        _emit(args, _json_dumps(payload) + "\n")
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["id", "v", "e", "r", "base", "group_order", "nontrivial", "sample_perm"])
        for row in rows:
            sample = (
                terms.format_perm(tuple(row["sample_perm"])) if row["sample_perm"] else ""
            )
            writer.writerow(
                [row["id"], row["v"], row["e"], row["r"], row["base"],
                 row["group_order"], int(row["nontrivial"]), sample]
            )
        _emit(args, buffer.getvalue())
    else:
        lines = [
            f"degree {degree}: {len(rows)} components, {len(nontrivial)} nontrivial"
        ]
        for entry in nontrivial:
            lines.append(
                f"{entry.component_id}\t{entry.vertices}\t{entry.edge_pairs}\t"
                f"{entry.circuit_rank}\t{entry.min_vertex}\t{entry.min_type}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_identity(args) -> int:
    degree = _require_degree(args, 2)
    if args.component is None:
        raise CliError("--component is required")
    graph = _load_graph(args)
    components = graph_mod.connected_components(graph)
    if not 1 <= args.component <= len(components):
        raise CliError(f"component {args.component} out of range")
    comp = components[args.component - 1]
    vertex = args.vertex if args.vertex is not None else comp.min_vertex
    try:
        identity, proof = witness.extract_identity(graph, comp, vertex)
    except ValueError as exc:
        raise CliError(str(exc))
    if args.proof_out:
        with open(args.proof_out, "w", encoding="utf-8") as handle:
            json.dump(witness.proof_to_json(proof), handle, ensure_ascii=False, indent=1)
            handle.write("\n")
    if args.format == "json":
        _emit(args, _json_dumps(witness.identity_to_json(identity)) + "\n")
    else:
        _emit(
            args,
            f"{terms.format_monomial(identity.left)} == "
            f"{terms.format_monomial(identity.right)}\n"
            f"pi = {terms.format_perm(identity.pi)}  ({len(proof)} proof steps)\n",
        )
    return 0


def cmd_verify(args) -> int:
    status = 0
    reports = []
    for path in args.proofs:
        try:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
            proof = witness.proof_from_json(data)
        except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
            raise CliError(f"unreadable proof file {path}: {exc}")
        outcome = witness.verify_proof(proof)
        if outcome.valid:
            reports.append(f"{path}: valid ({len(proof)} steps)")
        else:
            status = 1
            reports.append(
                f"{path}: INVALID at step {outcome.failed_step}: {outcome.reason}"
            )
    _emit(args, "".join(line + "\n" for line in reports))
    return status


def cmd_kock(args) -> int:
    report = witness.kock_derivation_check()
    lines = [
        f"derived: {terms.format_monomial(report.derived.left)} == "
        f"{terms.format_monomial(report.derived.right)}",
        f"status: {'ok' if report.ok else 'FAILED'} ({report.reason})",
    ]
    if report.renaming:
        renaming = " ".join(f"{k}->{v}" for k, v in sorted(report.renaming.items()))
        lines.append(f"renaming: {renaming}")
    if args.format == "json":
        payload = {
            "ok": report.ok,
            "renaming": report.renaming,
            "reason": report.reason,
            "left": terms.format_monomial(report.derived.left),
            "right": terms.format_monomial(report.derived.right),
        }
        _emit(args, _json_dumps(payload) + "\n")
    else:
        _emit(args, "\n".join(lines) + "\n")
    return 0 if report.ok else 1


def cmd_count_monomials(args) -> int:
    degree = _require_degree(args, 2)
    graph = _load_graph(args)
    total = graph_mod.count_free_monomials(graph)
    components = len(graph_mod.connected_components(graph))
    if args.format == "json":
        payload = {
            "degree": degree,
            "free_monomials": total,
            "isolated": graph.isolated_count,
            "components": components,
        }
        _emit(args, _json_dumps(payload) + "\n")
    else:
        _emit(args, f"{total}\n")
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interchange",
        description="Interchange-law analysis for double semigroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--degree", type=int, default=None)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--cache-dir", default=None,
                       help="graph cache directory (default: INTERCHANGE_CACHE_DIR or the user cache)")
        p.add_argument("--no-cache", action="store_true", help="never read or write the cache")
        p.add_argument("--workers", type=int, default=1)
        return p

    common(sub.add_parser("schroeder", help="large Schröder numbers T(1..n)"))
    common(sub.add_parser("types", help="association types of one degree"))
    common(sub.add_parser("relations", help="normalized consequence set (JSON lines with --format json)"))
    common(sub.add_parser("graph", help="full graph dump"), formats=("json", "dot"))
    common(sub.add_parser("components", help="component censuses"), formats=("text", "json", "csv"))
    common(sub.add_parser("analyze", help="monodromy reports and nontrivial components"),
           formats=("text", "json", "csv"))

    identity = common(sub.add_parser("identity", help="extract a commutativity identity with proof"))
    identity.add_argument("--component", type=int, default=None)
    identity.add_argument("--vertex", type=int, default=None)
    identity.add_argument("--proof-out", default=None)

    verify = sub.add_parser("verify", help="replay proof files")
    verify.add_argument("proofs", nargs="+")
    verify.add_argument("--out", default=None)

    common(sub.add_parser("kock", help="derive the degree-16 identity from degree 9"))
    common(sub.add_parser("count-monomials", help="free monomials: isolated plus components"))

    handlers = {
        "schroeder": cmd_schroeder,
        "types": cmd_types,
        "relations": cmd_relations,
        "graph": cmd_graph,
        "components": cmd_components,
        "analyze": cmd_analyze,
        "identity": cmd_identity,
        "verify": cmd_verify,
        "kock": cmd_kock,
        "count-monomials": cmd_count_monomials,
    }
    parser.set_defaults(handlers=handlers)
    return parser


def main(argv: "Optional[list[str]]" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = args.handlers[args.command]
    try:
        return handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
