"""Command-line front end.

Exit codes: 0 success / expectations matched, 1 expectation mismatch,
2 input error (bad records, bad arguments, missing files).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .campaign import (
    ClassReport,
    classify_stream,
    planar_filter,
    preset_names,
    run_preset,
    verify_chasing,
    verify_transitivity,
)
from .generate import GenSpec, generate, iter_graphs
from .graph import GraphError, parse_graph6, write_graph6
from .merge import MergeConfig, run_merge
from .named import named_graph
from .reductions import classify
from .canon import canonical_form

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _read_lines(spec: str):
    if spec == "-":
        for line in sys.stdin:
            if line.strip():
                yield line.strip()
        return
    path = Path(spec)
    if not path.exists():
        raise GraphError(f"no such file: {spec}")
    for line in path.read_text().splitlines():
        if line.strip():
            yield line.strip()


def _cmd_copnum(args) -> int:
    for line in _read_lines(args.source):
        g = parse_graph6(line)
        res = classify(g, args.kmax) if not args.no_reductions else None
        if args.no_reductions:
            from .reductions import classify_engine_only

            res = classify_engine_only(g, args.kmax)
        print(f"{line}\t{res.bucket()}")
    return EXIT_OK


def _cmd_generate(args) -> int:
    spec = GenSpec(
        n=args.n,
        min_degree=args.min_deg,
        max_degree=args.max_deg,
        connected_only=not args.disconnected,
    )
    if args.out is None:
        count = generate(spec, lambda g: print(write_graph6(g)))
        print(f"# {count} graphs", file=sys.stderr)
        return EXIT_OK
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.chunk is None:
        with open(out, "w") as fh:
            count = generate(spec, lambda g: fh.write(write_graph6(g) + "\n"))
        print(f"{count} graphs -> {out}")
        return EXIT_OK
    # sharded output for resumable downstream consumption
    state = {"fh": None, "index": 0, "in_chunk": 0, "count": 0}

    def sink(g) -> None:
        if state["fh"] is None or state["in_chunk"] >= args.chunk:
            if state["fh"] is not None:
                state["fh"].close()
            chunk_path = out.with_suffix(f".{state['index']:04d}{out.suffix or '.g6'}")
            state["fh"] = open(chunk_path, "w")
            state["index"] += 1
            state["in_chunk"] = 0
        state["fh"].write(write_graph6(g) + "\n")
        state["in_chunk"] += 1
        state["count"] += 1

    generate(spec, sink)
    if state["fh"] is not None:
        state["fh"].close()
    print(f"{state['count']} graphs -> {state['index']} chunks at {out}")
    return EXIT_OK


def _parse_spec_string(text: str) -> GenSpec:
    fields = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, _, val = part.partition("=")
        fields[key.strip()] = val.strip()
    try:
        return GenSpec(
            n=int(fields["n"]),
            min_degree=int(fields.get("min_deg", 0)),
            max_degree=int(fields["max_deg"]) if "max_deg" in fields else None,
            connected_only=fields.get("connected", "1") not in ("0", "false"),
        )
    except KeyError as exc:
        raise GraphError(f"spec string needs {exc.args[0]}") from exc


def _cmd_classify(args) -> int:
    if args.input is not None:
        source = _read_lines(args.input)
        echo = {"input": args.input}
    elif args.spec is not None:
        spec = _parse_spec_string(args.spec)
        source = iter_graphs(spec)
        echo = {
            "n": spec.n,
            "min_degree": spec.min_degree,
            "max_degree": spec.cap(),
            "connected": spec.connected_only,
        }
    else:
        raise GraphError("classify needs --spec or --input")
    report = classify_stream(
        source,
        k_max=args.kmax,
        reductions_on=not args.no_reductions,
        witness_bucket=args.witness_bucket,
        shard_size=args.shard_size,
        checkpoint_path=args.checkpoint,
        spec_echo=echo,
    )
    print(json.dumps(report.result_dict()["totals"]))
    if args.report:
        from .report import save_class_report

        save_class_report(report, args.report, figure=not args.no_figure)
        print(f"report -> {args.report}")
    return EXIT_OK


def _graph_list_from_config(value) -> tuple:
    if isinstance(value, str):
        if value.startswith("named:"):
            return (named_graph(value[len("named:"):]),)
        return tuple(parse_graph6(l) for l in _read_lines(value))
    return tuple(
        named_graph(item[len("named:"):]) if item.startswith("named:") else parse_graph6(item)
        for item in value
    )


def _cmd_merge(args) -> int:
    cfg_data = json.loads(Path(args.config).read_text())
    cfg = MergeConfig(
        n=cfg_data["n"],
        deg_v1=cfg_data["deg_v1"],
        deg_v2=cfg_data["deg_v2"],
        delta=cfg_data["delta"],
        list1=_graph_list_from_config(cfg_data["list1"]),
        list2=_graph_list_from_config(cfg_data["list2"]),
    )
    finals_fh = meta_fh = None
    if args.finals:
        fdir = Path(args.finals)
        fdir.mkdir(parents=True, exist_ok=True)
        finals_fh = open(fdir / "finals.g6", "w")
    base_sink = None
    if args.bases:
        bdir = Path(args.bases)
        bdir.mkdir(parents=True, exist_ok=True)
        bases_fh = open(bdir / "bases.g6", "w")
        meta_fh = open(bdir / "bases.meta", "w")
        counter = {"i": 0}

        def base_sink(pg) -> None:
            bases_fh.write(write_graph6(pg.graph) + "\n")
            cells = ",".join(str(c.bit_count()) for c in pg.cells.cells)
            prov = ",".join(str(x) for x in pg.provenance)
            meta_fh.write(
                f"index={counter['i']} provenance={prov} cells={cells} "
                f"restricted={pg.restricted_mask:#x}\n"
            )
            counter["i"] += 1

    classifier = None
    if args.classify is not None:
        classifier = lambda g: classify(g, args.classify).bucket()
    sink = None
    if finals_fh is not None:
        sink = lambda g: finals_fh.write(write_graph6(g) + "\n")
    report = run_merge(cfg, sink, classifier=classifier, base_sink=base_sink)
    if finals_fh:
        finals_fh.close()
    if args.bases:
        bases_fh.close()
        meta_fh.close()
    print(f"bases={report.base_count} finals={report.final_count}")
    if args.report:
        from .report import save_merge_report

        save_merge_report(report, args.report, figure=not args.no_figure)
        print(f"report -> {args.report}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.what == "transitivity":
        counts = verify_transitivity()
        print(json.dumps(counts))
        return EXIT_OK if counts["ok"] else EXIT_MISMATCH
    if args.what == "lemmas":
        which = ["lemma1", "lemma3"] if args.which == "both" else [args.which]
        variants = range(7) if args.graph == "all" else [int(args.graph)]
        ok = True
        for w in which:
            for i in variants:
                results = verify_chasing(w, i)
                good = all(results)
                ok = ok and good
                print(f"{w} P_{i}: {sum(results)}/{len(results)} positions forced")
        return EXIT_OK if ok else EXIT_MISMATCH
    if args.what == "table":
        if args.name is None:
            raise GraphError("verify table needs a name")
        res = run_preset(args.name, lists_dir=args.lists_dir)
        print(json.dumps(res.summary, default=str))
        for msg in res.mismatches:
            print(f"MISMATCH {msg}", file=sys.stderr)
        return EXIT_OK if res.ok else EXIT_MISMATCH
    raise GraphError(f"unknown verify target {args.what!r}")


def _cmd_planar(args) -> int:
    for line in planar_filter(_read_lines(args.source)):
        print(line)
    return EXIT_OK


def _cmd_preset(args) -> int:
    res = run_preset(
        args.name,
        lists_dir=args.lists_dir,
        checkpoint_path=args.checkpoint,
        shard_size=args.shard_size,
    )
    print(json.dumps(res.summary, default=str))
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        if res.class_report is not None:
            from .report import save_class_report

            save_class_report(res.class_report, out / f"{args.name}.json")
        if res.merge_report is not None:
            from .report import save_merge_report

            save_merge_report(res.merge_report, out / f"{args.name}.jsonl")
        if res.witnesses:
            wpath = out / (
                f"threecop-n{res.class_report.spec['n']}-d{res.class_report.spec['max_degree']}.g6"
                if res.class_report is not None
                else f"{args.name}-finals.g6"
            )
            wpath.write_text("\n".join(_witness_g6(res.witnesses)) + "\n")
            print(f"witnesses -> {wpath}")
    for msg in res.mismatches:
        print(f"MISMATCH {msg}", file=sys.stderr)
    return EXIT_OK if res.ok else EXIT_MISMATCH


def _witness_g6(witnesses: list[str]) -> list[str]:
    # witness lists hold canonical forms, i.e. plain graph6 records already
    return [w.split("|")[0] for w in sorted(witnesses)]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="copwin",
        description="Cops-and-robbers verification: cop numbers, generation, merging campaigns.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("copnum", help="classify graph6 records by cop number")
    p.add_argument("source", help="graph6 file or - for stdin")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--no-reductions", action="store_true")
    p.set_defaults(func=_cmd_copnum)

    p = sub.add_parser("generate", help="enumerate connected graphs with degree bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min-deg", type=int, default=0)
    p.add_argument("--max-deg", type=int, default=None)
    p.add_argument("--disconnected", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--chunk", type=int, default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("classify", help="classify a generated family or a file")
    p.add_argument("--spec", default=None, help="e.g. n=14,min_deg=2,max_deg=3")
    p.add_argument("--input", default=None, help="graph6 file instead of --spec")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--no-reductions", action="store_true")
    p.add_argument("--witness-bucket", default=None)
    p.add_argument("--report", default=None)
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--shard-size", type=int, default=100_000)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("merge", help="run the merging campaign from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--bases", default=None, help="directory for base graphs + sidecar")
    p.add_argument("--finals", default=None, help="directory for final graphs")
    p.add_argument("--report", default=None)
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("--classify", type=int, default=None, metavar="KMAX")
    p.set_defaults(func=_cmd_merge)

    p = sub.add_parser("verify", help="run the built-in verifiers")
    p.add_argument("what", choices=["lemmas", "transitivity", "table"])
    p.add_argument("name", nargs="?", default=None, help="table name for 'table'")
    p.add_argument("--which", choices=["lemma1", "lemma3", "both"], default="both")
    p.add_argument("--graph", default="all", help="cornered variant 0..6 or 'all'")
    p.add_argument("--lists-dir", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("planar", help="keep only planar graph6 records")
    p.add_argument("source")
    p.set_defaults(func=_cmd_planar)

    p = sub.add_parser("preset", help="run a named campaign with published expectations")
    p.add_argument("name", help=f"one of: {', '.join(preset_names())}")
    p.add_argument("--lists-dir", default=None)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--shard-size", type=int, default=100_000)
    p.set_defaults(func=_cmd_preset)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
