"""Command-line front end.

Subcommands: normalize, seh, ceh, gen, oracle, verify, exi, cograph, report.
Certificates and traces go to standard output (or --output); diagnostics go
to standard error.  Exit codes: 0 success, 2 input error, 3 verification
failure, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from . import ceh as ceh_mod
from . import cograph as cograph_mod
from . import extremal, fileio, oracle, report, seh as seh_mod
from .core import (
    Graph,
    InputError,
    InternalInvariantError,
    IntervalFamily,
    Partition,
    SubtreeFamily,
    verify_certificate,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVALID = 3
EXIT_INTERNAL = 4


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_instance(path: str):
    text = _read(path)
    kind = fileio.sniff_format(text)
    if kind == "interval":
        return fileio.parse_interval_family(text), None
    if kind == "subtree":
        return fileio.parse_subtree_family(text), None
    if kind == "graph":
        return fileio.parse_edge_list(text), fileio.parse_partition_lines(text)
    return cograph_mod.parse_cotree(text), fileio.parse_partition_lines(text)


def _partition_for(instance, inline, parts_path: str | None):
    if parts_path:
        return fileio.parse_partition_lines(_read(parts_path))
    if inline is not None:
        return inline
    if isinstance(instance, (SubtreeFamily, IntervalFamily)) and instance.has_parts():
        return Partition.from_family(instance)
    return None


def _trace_lines(trace: dict) -> str:
    out = []
    for key, value in trace.items():
        if key == "decomposition":
            d = value
            out.append(f"# trace center={d.center}")
            out.append(f"# trace F_v={len(d.f_center)}")
            for i in range(3):
                out.append(
                    f"# trace branch{i + 1}: F_i={len(d.f_comp[i])} w={d.branch_vertices[i]}"
                    f" gamma_plus={len(d.gamma_plus[i])} G={len(d.g_families[i])}"
                    f" H={len(d.h_families[i])} F2w={len(d.f2_at_w[i])} F3w={len(d.f3_at_w[i])}"
                )
            out.append(
                f"# trace X_empty={len(d.x_empty)} X_i="
                + ",".join(str(len(x)) for x in d.x_single)
                + " Y_pairs="
                + ",".join(str(len(y)) for y in d.y_pairs)
            )
        else:
            out.append(f"# trace {key}={value}")
    return "\n".join(out) + "\n" if out else ""


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_normalize(args) -> int:
    text = _read(args.input)
    if args.klass == "subtree":
        fam = fileio.parse_subtree_family(text)
        from .normalize import normalize_subtrees

        _emit(fileio.format_subtree_family(normalize_subtrees(fam)), args.output)
    else:
        fam = fileio.parse_interval_family(text)
        from .normalize import perturb_intervals

        _emit(fileio.format_interval_family(perturb_intervals(fam)), args.output)
    return EXIT_OK


def _cmd_seh(args) -> int:
    instance, _ = _load_instance(args.input)
    trace: dict = {}
    if args.klass == "interval":
        if not isinstance(instance, IntervalFamily):
            raise InputError("seh --class interval needs an interval file")
        cert = seh_mod.seh_interval(instance, trace=trace)
    elif args.klass == "cograph":
        if not isinstance(instance, cograph_mod.Cotree):
            raise InputError("seh --class cograph needs a cotree file")
        cert = seh_mod.seh_cograph(instance, trace=trace)
    else:
        if not isinstance(instance, SubtreeFamily):
            raise InputError("seh --class chordal needs a subtree file")
        cert = seh_mod.seh_chordal(instance, trace=trace)
    text = fileio.format_certificate(cert)
    if args.emit_trace:
        text += _trace_lines(trace)
    _emit(text, args.output)
    return EXIT_OK


def _cmd_ceh(args) -> int:
    instance, inline = _load_instance(args.input)
    partition = _partition_for(instance, inline, args.parts)
    trace: dict = {}
    if args.klass == "interval":
        if not isinstance(instance, IntervalFamily):
            raise InputError("ceh --class interval needs an interval file")
        cert = ceh_mod.ceh_interval(instance, args.allow_unbalanced, trace=trace)
    elif args.klass == "cograph":
        if not isinstance(instance, cograph_mod.Cotree):
            raise InputError("ceh --class cograph needs a cotree file")
        if partition is None:
            raise InputError("ceh --class cograph needs partition lines or --parts")
        cert = ceh_mod.ceh_cograph(instance, partition, args.allow_unbalanced, trace=trace)
    else:
        if not isinstance(instance, SubtreeFamily):
            raise InputError(f"ceh --class {args.klass} needs a subtree file")
        if args.klass == "tk":
            cert = ceh_mod.ceh_tk(instance, args.allow_unbalanced, trace=trace)
        else:
            cert = ceh_mod.ceh_tk_weak(instance, args.allow_unbalanced, trace=trace)
    text = fileio.format_certificate(cert)
    if args.emit_trace:
        simple = {k: v for k, v in trace.items() if k not in ("ladder",)}
        text += _trace_lines(simple)
    _emit(text, args.output)
    return EXIT_OK


def _cmd_gen(args) -> int:
    which = args.which
    if which == "seh-interval":
        _emit(fileio.format_interval_family(extremal.gen_seh_interval(args.k)), args.output)
    elif which == "seh-cograph":
        _emit(cograph_mod.format_cotree(extremal.gen_seh_cograph(args.k)), args.output)
    elif which == "seh-chordal":
        _emit(fileio.format_subtree_family(extremal.gen_seh_chordal(args.k)), args.output)
    elif which == "ceh-interval":
        _emit(fileio.format_interval_family(extremal.gen_ceh_interval(args.k)), args.output)
    elif which == "ceh-cograph":
        ct, partition = extremal.gen_ceh_cograph(args.k)
        text = cograph_mod.format_cotree(ct) + fileio.format_partition(partition)
        _emit(text, args.output)
    elif which == "lower-bound":
        if args.n is None:
            raise InputError("gen --which lower-bound needs --n")
        fam, a, b = extremal.gen_lower_bound(args.k, args.n, args.seed)
        header = (
            f"prng={extremal.PRNG_NAME} seed={args.seed}",
            f"k={args.k} n={args.n} a={a} b={b}",
        )
        _emit(fileio.format_subtree_family(fam, header_comments=header), args.output)
    else:
        raise InputError(f"unknown generator {which!r}")
    return EXIT_OK


def _instance_graph(instance):
    """Graph plus the member-id list its vertices stand for."""
    if isinstance(instance, Graph):
        return instance, list(range(instance.n))
    if isinstance(instance, cograph_mod.Cotree):
        return cograph_mod.cotree_to_graph(instance), list(instance.leaf_ids())
    from .core import intersection_graph

    return intersection_graph(instance), list(instance.ids())


def _cmd_oracle(args) -> int:
    instance, inline = _load_instance(args.input)
    g, ids = _instance_graph(instance)
    index_of = {ident: i for i, ident in enumerate(ids)}
    if args.partition:
        partition = _partition_for(instance, inline, args.parts)
        if partition is None:
            raise InputError("--partition needs part labels, P lines or --parts")
        partition.check_covers(ids)
        graph_partition = Partition.from_mapping(
            {index_of[ident]: partition.part_of(ident) for ident in ids}
        )
        size, cert = oracle.max_colorful_biclique(g, graph_partition, cap=args.cap)
    else:
        size, cert = oracle.max_balanced_biclique(g, cap=args.cap)
    side_a = ",".join(str(ids[v]) for v in cert.side_a) or "-"
    side_b = ",".join(str(ids[v]) for v in cert.side_b) or "-"
    _emit(f"{size} {cert.kind} {side_a} {side_b}\n", args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    instance, inline = _load_instance(args.input)
    cert = fileio.parse_certificate(_read(args.certificate))
    partition = None
    if args.respect_partition:
        partition = _partition_for(instance, inline, args.parts)
        if partition is None:
            raise InputError("--respect-partition needs part labels, P lines or --parts")
    rep = verify_certificate(instance, cert, args.min_side, partition)
    if rep.valid:
        _emit(
            f"VALID kind={rep.kind} sides={rep.side_a_size},{rep.side_b_size}"
            f" min_side={rep.min_side}\n",
            args.output,
        )
        return EXIT_OK
    _emit("INVALID\n" + "".join(f"# {p}\n" for p in rep.problems), args.output)
    return EXIT_INVALID


def _cmd_exi(args) -> int:
    exact, approx = extremal.expected_kab(args.k, args.n, args.a, args.b)
    a, b = args.a, args.b
    if a is None or b is None:
        da, db = extremal.lower_bound_dimensions(args.k, args.n)
        a = da if a is None else a
        b = db if b is None else b
    line = f"{args.k} {args.n} {a} {b} {approx!r}"
    if args.exact:
        line += f" {exact}"
    _emit(line + "\n", args.output)
    return EXIT_OK


def _cmd_cograph(args) -> int:
    if args.action == "recognize":
        g = fileio.parse_edge_list(_read(args.input))
        result = cograph_mod.recognize_cograph(g)
        if isinstance(result, cograph_mod.P4Witness):
            _emit(f"P4 {result.a} {result.b} {result.c} {result.d}\n", args.output)
            return EXIT_OK
        _emit(cograph_mod.format_cotree(result), args.output)
        return EXIT_OK
    ct = cograph_mod.parse_cotree(_read(args.input))
    try:
        u_ids = [int(tok) for tok in args.set.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"bad --set value {args.set!r}") from None
    w = cograph_mod.conforming_subset(ct, u_ids)
    _emit("W: " + " ".join(str(i) for i in w) + "\n", args.output)
    return EXIT_OK


def _cmd_report(args) -> int:
    ks = tuple(int(tok) for tok in args.ks.replace(",", " ").split())
    rows = report.run_experiment(ks=ks, n_max=args.n_max, seeds=args.seeds)
    table_path, figure_path = report.write_report(rows, args.output_dir)
    sys.stdout.write(report.format_table(rows))
    sys.stderr.write(f"wrote {table_path} and {figure_path}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicliques",
        description="Balanced bi-clique certificates for interval, cograph and chordal instances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="representation surgeries")
    p.add_argument("--class", dest="klass", choices=("subtree", "interval"), required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("seh", help="balanced bi-clique finders")
    p.add_argument("--class", dest="klass", choices=("interval", "cograph", "chordal"), required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--emit-trace", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_seh)

    p = sub.add_parser("ceh", help="partition-respecting finders")
    p.add_argument("--class", dest="klass", choices=("interval", "cograph", "tk", "tk-weak"), required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--parts", help="partition file with P <id> <part> lines")
    p.add_argument("--allow-unbalanced", action="store_true")
    p.add_argument("--emit-trace", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_ceh)

    p = sub.add_parser("gen", help="extremal and experiment instance generators")
    p.add_argument(
        "--which",
        choices=(
            "seh-interval",
            "seh-cograph",
            "seh-chordal",
            "ceh-interval",
            "ceh-cograph",
            "lower-bound",
        ),
        required=True,
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive maximum bi-clique search")
    p.add_argument("--input", required=True)
    p.add_argument("--partition", action="store_true")
    p.add_argument("--parts")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--certificate", required=True)
    p.add_argument("--min-side", type=int, required=True)
    p.add_argument("--respect-partition", action="store_true")
    p.add_argument("--parts")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("exi", help="expected K_{a,b} count in the random model")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_exi)

    p = sub.add_parser("cograph", help="recognition and conforming subsets")
    csub = p.add_subparsers(dest="action", required=True)
    pr = csub.add_parser("recognize")
    pr.add_argument("--input", required=True)
    pr.add_argument("--output")
    pr.set_defaults(func=_cmd_cograph, action="recognize")
    pc = csub.add_parser("conform")
    pc.add_argument("--input", required=True)
    pc.add_argument("--set", required=True, help="comma or space separated leaf ids")
    pc.add_argument("--output")
    pc.set_defaults(func=_cmd_cograph, action="conform")

    p = sub.add_parser("report", help="lower-bound frequency table and figure")
    p.add_argument("--ks", default="4,6")
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--output-dir", default=".")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InternalInvariantError as exc:
        sys.stderr.write(f"internal invariant violation: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
