"""Command-line front end.

Subcommands: gen, fwm, simulate, pack, unpack, bdrate. Every run writes a
JSON manifest next to its outputs; ``aqm --replay MANIFEST`` re-executes it.

Exit codes: 0 success, 1 domain or usage error, 2 golden-table mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import golden
from .corpus import DEFAULT_SEED, DEFAULT_SIZE, GENERATORS, generate
from .display import MAX_DIM, adapt_fwm, adaptive_qm, parse_geometry
from .errors import AqmError
from .experiment import SWEEP_QPS, layer_curve, parse_layers, rows_from_csv, rows_to_csv, sweep
from .fwm import FwmConfig, compute_fwm
from .image import read_pgm
from .metrics import RdCurve, bd_rate
from .qm import default_inter_qm, default_intra_qm, upsample_qm
from .scaling_list import pack, payload_from_json, payload_to_json, unpack
from .sim import QM_SOURCES, resolve_workers

EXIT_OK, EXIT_ERROR, EXIT_GOLDEN = 0, 1, 2


class UsageError(AqmError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- output helpers

def matrix_csv(values) -> str:
    arr = np.asarray(values)
    if np.issubdtype(arr.dtype, np.integer):
        lines = [",".join(str(int(v)) for v in row) for row in arr]
    else:
        lines = [",".join(f"{v:.6f}" for v in row) for row in arr]
    return "\n".join(lines) + "\n"


def matrix_json(values) -> str:
    return json.dumps(np.asarray(values).tolist()) + "\n"


def canonical_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_matrix(outdir: Path, stem: str, values, formats) -> list[str]:
    written = []
    for fmt in formats:
        path = outdir / f"{stem}.{fmt}"
        path.write_text(matrix_csv(values) if fmt == "csv" else matrix_json(values))
        written.append(str(path))
    return written


def write_manifest(path: Path, args, config: dict, outputs: list[str]):
    manifest = {
        "subcommand": args.command,
        "argv": args.argv,
        "config": config,
        "outputs": outputs,
    }
    path.write_text(canonical_json(manifest))


def _formats(args):
    return [args.format] if args.format else ["csv", "json"]


def _parse_max(text: str) -> tuple[int, int]:
    g = parse_geometry(text, 10**9, 10**9)
    return g.x, g.y


def _golden_check(name: str, actual, expected, tol: float | None) -> bool:
    actual, expected = np.asarray(actual), np.asarray(expected)
    if tol is None:
        bad = np.argwhere(actual != expected)
    else:
        bad = np.argwhere(np.abs(actual - expected) > tol)
    if len(bad):
        for i, j in bad[:10]:
            print(f"golden {name}: mismatch at ({i},{j}): {actual[i, j]} != {expected[i, j]}", file=sys.stderr)
        return False
    print(f"golden {name}: ok")
    return True


# ---------------------------------------------------------------- subcommands

def cmd_gen(args) -> int:
    x_max, y_max = _parse_max(args.max)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    spec = args.preset or args.geometry
    base_fwm = compute_fwm()

    if spec is None:
        tag = "default"
        fwm = base_fwm
        qm = default_intra_qm() if args.kind == "intra" else default_inter_qm()
        geometry = None
    else:
        geometry = parse_geometry(spec, x_max, y_max)
        tag = spec.lower()
        fwm = adapt_fwm(base_fwm, geometry)
        qm = adaptive_qm(geometry, args.kind)
    if args.size != 8:
        qm = upsample_qm(qm, args.size)

    formats = _formats(args)
    outputs = write_matrix(outdir, f"fwm_{tag}", fwm.values, formats)
    outputs += write_matrix(outdir, f"qm_{tag}_{args.kind}_{args.size}", qm.entries, formats)
    config = {
        "geometry": None if geometry is None else {
            "x": geometry.x, "y": geometry.y, "x_max": geometry.x_max, "y_max": geometry.y_max,
            "w": geometry.w,
        },
        "kind": args.kind,
        "size": args.size,
        "formats": formats,
    }
    write_manifest(outdir / "gen.manifest.json", args, config, outputs)
    for path in outputs:
        print(path)

    if not args.golden:
        return EXIT_OK
    k = args.size // 8
    rep = lambda t: np.kron(t, np.ones((k, k), dtype=t.dtype))  # noqa: E731
    if geometry is None and args.kind == "intra":
        checks = [("fwm", fwm.values, golden.FWM_DEFAULT, golden.PRINT_TOL),
                  ("qm_intra", qm.entries, rep(golden.QM_INTRA), None)]
    elif geometry is None:
        checks = [("qm_inter", qm.entries, rep(golden.QM_INTER), None)]
    elif (geometry.x, geometry.y, geometry.x_max, geometry.y_max) == (3840, 2160, MAX_DIM, MAX_DIM) \
            and args.kind == "intra":
        checks = [("fwm_4k", fwm.values, golden.FWM_4K, golden.ADAPTED_CHAIN_TOL),
                  ("aqm_intra_4k", qm.entries, rep(golden.AQM_INTRA_4K), None)]
    else:
        raise UsageError("no golden table for this geometry/kind (available: default intra/inter, 4k intra)")
    ok = all([_golden_check(*c) for c in checks])
    return EXIT_OK if ok else EXIT_GOLDEN


def cmd_fwm(args) -> int:
    config = FwmConfig(a=args.a, b=args.b, c=args.c, d=args.d, f_max=args.f_max,
                       delta=args.pitch, n=args.n, dis=args.dis, s=args.s)
    fwm = compute_fwm(config)
    tag = "fwm"
    if args.geometry:
        x_max, y_max = _parse_max(args.max)
        fwm = adapt_fwm(fwm, parse_geometry(args.geometry, x_max, y_max))
        tag = f"fwm_{args.geometry.lower()}"
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    outputs = write_matrix(outdir, tag, fwm.values, _formats(args))
    write_manifest(outdir / "fwm.manifest.json", args, {"fwm_config": vars(config)}, outputs)
    for path in outputs:
        print(path)
    if args.golden:
        if config != FwmConfig() or args.geometry:
            raise UsageError("--golden applies to the default configuration only")
        return EXIT_OK if _golden_check("fwm", fwm.values, golden.FWM_DEFAULT, golden.PRINT_TOL) else EXIT_GOLDEN
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_simulate(args) -> int:
    if args.input:
        source = read_pgm(args.input)
        source_desc = {"input": args.input}
    else:
        source = generate(args.corpus, args.size, args.seed)
        source_desc = {"corpus": args.corpus, "size": args.size, "seed": args.seed}
    try:
        specs = parse_layers(args.layers, source.width, source.height)
    except AqmError as exc:
        raise UsageError(str(exc)) from exc
    qps = _int_list(args.qps)
    sources = [s.strip() for s in args.qm_source.split(",") if s.strip()]
    for s in sources:
        if s not in QM_SOURCES:
            raise UsageError(f"unknown qm source {s!r}; choose from {QM_SOURCES}")
    workers = resolve_workers(args.workers)

    rows = sweep(source, specs, qps, sources, workers)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(rows_to_csv(rows))
    config = {
        "source": source_desc,
        "layers": [{"label": s.label, "width": s.width, "height": s.height,
                    "geometry": [s.geometry.x, s.geometry.y]} for s in specs],
        "qps": qps,
        "qm_sources": sources,
    }
    write_manifest(Path(f"{out}.manifest.json"), args, config, [str(out)])
    print(out)
    return EXIT_OK


def _standard_payload(geometries: str):
    payload = []
    for g in geometries.split(","):
        geom = parse_geometry(g)
        payload.append([adaptive_qm(geom, "intra"), adaptive_qm(geom, "inter")])
    return payload


def cmd_pack(args) -> int:
    if args.input:
        try:
            doc = json.loads(Path(args.input).read_text())
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.input}: invalid JSON: {exc}") from exc
        payload = payload_from_json(doc)
    elif args.geometries:
        payload = _standard_payload(args.geometries)
    else:
        raise UsageError("pack needs --input JSON or --geometries")
    out = Path(args.output)
    out.write_bytes(pack(payload))
    write_manifest(Path(f"{out}.manifest.json"), args,
                   {"layers": len(payload), "lists": [len(layer) for layer in payload]}, [str(out)])
    print(out)
    return EXIT_OK


def cmd_unpack(args) -> int:
    payload = unpack(Path(args.input).read_bytes())
    out = Path(args.output)
    out.write_text(canonical_json(payload_to_json(payload)))
    write_manifest(Path(f"{out}.manifest.json"), args, {"layers": len(payload)}, [str(out)])
    print(out)
    return EXIT_OK


def _load_curve(path: str, label: str | None, source: str | None, cumulative: bool) -> RdCurve:
    text = Path(path).read_text()
    header = text.splitlines()[0].split(",") if text.strip() else []
    if "rate_bits" in header:
        rows = rows_from_csv(text)
        labels = sorted({r.label for r in rows})
        sources = sorted({r.qm_source for r in rows})
        label = label or (labels[-1] if len(labels) == 1 else None)
        if label is None:
            raise UsageError(f"{path}: several layers {labels}; pick one with --label")
        if source is None:
            if len(sources) != 1:
                raise UsageError(f"{path}: several qm sources {sources}; pick with --anchor-source/--test-source")
            source = sources[0]
        return layer_curve(rows, label, source, cumulative)
    points = []
    for line in text.splitlines()[1:]:
        if line.strip():
            rate, q = line.split(",")[:2]
            points.append((float(rate), float(q)))
    return RdCurve.from_points(points)


def _gnuplot(curve: RdCurve) -> str:
    return "# rate_bits psnr_db\n" + "".join(f"{r:.3f} {q:.6f}\n" for r, q in zip(curve.rates, curve.psnrs))


def cmd_bdrate(args) -> int:
    anchor = _load_curve(args.anchor, args.label, args.anchor_source, args.cumulative)
    test = _load_curve(args.test, args.label, args.test_source, args.cumulative)
    value = bd_rate(anchor, test)
    print(f"{value:.2f}%")
    outputs = []
    if args.gnuplot:
        gdir = Path(args.gnuplot)
        gdir.mkdir(parents=True, exist_ok=True)
        for name, curve in (("anchor", anchor), ("test", test)):
            path = gdir / f"{name}.dat"
            path.write_text(_gnuplot(curve))
            outputs.append(str(path))
        write_manifest(gdir / "bdrate.manifest.json", args, {"bd_rate_percent": round(value, 6)}, outputs)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aqm", description=__doc__.splitlines()[0])
    parser.add_argument("--replay", metavar="MANIFEST", help="re-run the command recorded in a manifest")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, output_default):
        p.add_argument("--output", default=output_default)
        p.add_argument("--format", choices=("csv", "json"), help="default: write both")

    p = sub.add_parser("gen", help="default or display-adaptive QMs")
    where = p.add_mutually_exclusive_group()
    where.add_argument("--preset", help="sd, hd, fhd, 4k, 8k or max")
    where.add_argument("--geometry", help="WIDTHxHEIGHT of the target display")
    p.add_argument("--max", default=f"{MAX_DIM}x{MAX_DIM}", help="maximum display size")
    p.add_argument("--kind", choices=("intra", "inter"), default="intra")
    p.add_argument("--size", type=int, choices=(8, 16, 32), default=8)
    p.add_argument("--golden", action="store_true", help="diff against the published tables")
    common(p, ".")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fwm", help="frequency weighting matrix with optional overrides")
    defaults = FwmConfig()
    for flag, attr in (("--a", "a"), ("--b", "b"), ("--c", "c"), ("--d", "d"), ("--f-max", "f_max"),
                       ("--pitch", "delta"), ("--dis", "dis"), ("--s", "s")):
        p.add_argument(flag, type=float, default=getattr(defaults, attr))
    p.add_argument("--n", type=int, default=defaults.n)
    p.add_argument("--geometry", help="adapt to this display (WIDTHxHEIGHT or preset)")
    p.add_argument("--max", default=f"{MAX_DIM}x{MAX_DIM}")
    p.add_argument("--golden", action="store_true")
    common(p, ".")
    p.set_defaults(func=cmd_fwm)

    p = sub.add_parser("simulate", help="layered codec QP sweep")
    p.add_argument("--layers", default="bl,el1,el2")
    p.add_argument("--qps", default=",".join(map(str, SWEEP_QPS)))
    p.add_argument("--qm-source", default="default,adaptive", help=f"comma list from {QM_SOURCES}")
    p.add_argument("--corpus", choices=sorted(GENERATORS), default="zoneplate")
    p.add_argument("--input", help="8-bit binary PGM instead of a corpus image")
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, help="default: $AQM_THREADS (0 = one per CPU)")
    p.add_argument("--output", default="sim_report.csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("pack", help="JSON scaling lists -> AQMS container")
    p.add_argument("--input", help="JSON {'layers': [[{'kind', 'matrix'}, ...], ...]}")
    p.add_argument("--geometries", help="build intra+inter AQMs per layer, e.g. hd,4k,8k")
    p.add_argument("--output", default="scaling_lists.aqms")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("unpack", help="AQMS container -> JSON scaling lists")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="scaling_lists.json")
    p.set_defaults(func=cmd_unpack)

    p = sub.add_parser("bdrate", help="BD-rate between two RD curves")
    p.add_argument("anchor")
    p.add_argument("test")
    p.add_argument("--label", help="layer label when reading simulate reports")
    p.add_argument("--anchor-source")
    p.add_argument("--test-source")
    p.add_argument("--no-cumulative", dest="cumulative", action="store_false",
                   help="rate of the layer alone instead of it plus its reference layers")
    p.add_argument("--gnuplot", metavar="DIR", help="write anchor.dat/test.dat")
    p.set_defaults(func=cmd_bdrate)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.replay:
            manifest = json.loads(Path(args.replay).read_text())
            return main(manifest["argv"])
        if not args.command:
            raise UsageError("a subcommand is required")
        args.argv = argv
        return args.func(args)
    except (AqmError, OSError) as exc:
        print(f"aqm: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
