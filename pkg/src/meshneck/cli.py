"""Command-line interface.

Exit codes: 0 success (zero cuts included), 1 I/O failure, 2 validation
rejection, 3 internal invariant violation.
"""

import argparse
import json
import logging
import os
import sys

from . import kernels
from .errors import MeshError, MeshLoadError, SeparationError, ValidationFailure
from .pipeline import (
    RunConfig,
    run_oracle_compare,
    run_pipeline,
    write_stats_rows,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3

logger = logging.getLogger(__name__)


def _add_common(p):
    p.add_argument("--input", help="mesh file (OBJ, OFF or ASCII PLY)")
    p.add_argument("--format", dest="fmt", choices=("obj", "off", "ply"),
                   help="override format detection")
    p.add_argument("--synthetic", help="synthetic mesh spec, e.g. dumbbell:1,0.2,3")
    p.add_argument("--r-filter", type=int, default=20,
                   help="salient point hop-filter radius (default 20)")
    p.add_argument("--window", type=int, default=5,
                   help="local-maximum window size (default 5)")
    p.add_argument("--epsilon", type=float, default=0.15,
                   help="tolerance below the sphere-baseline threshold (default 0.15)")
    p.add_argument("--seed-vertex", type=int, default=0,
                   help="seed vertex for the diameter sweep (default 0)")
    p.add_argument("--skeleton", choices=("greedy", "prim"), default="greedy")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel workers for per-path stages (default 1)")
    p.add_argument("--out-dir", help="directory for exports")
    p.add_argument("--export", action="append", choices=("json", "obj", "csv"),
                   help="artifact kinds to write (repeatable; default json)")


def _config_from(args):
    if not args.input and not args.synthetic:
        raise MeshLoadError("need --input or --synthetic")
    return RunConfig(
        input=args.input,
        synthetic=args.synthetic,
        fmt=args.fmt,
        r_filter=args.r_filter,
        window=args.window,
        threshold_epsilon=args.epsilon,
        seed_vertex=args.seed_vertex,
        skeleton_variant=args.skeleton,
        workers=args.workers,
        out_dir=args.out_dir,
        export=tuple(args.export) if args.export else ("json",),
    )


def _cmd_run(args):
    config = _config_from(args)
    if args.oracle:
        report, result = run_oracle_compare(config, oracles=tuple(args.oracle))
        print(json.dumps(report, sort_keys=True, indent=1))
    else:
        result = run_pipeline(config)
    t = result.timing
    print(
        f"# salient={t.salient_count} cuts={len(result.cuts)} "
        f"salient_ms={t.salient_ms:.1f} cycles_ms={t.cycles_ms:.1f} "
        f"tightness_ms={t.tightness_ms:.1f} total_ms={t.total_ms:.1f} "
        f"[kernels: {kernels.backend_name}]",
        file=sys.stderr,
    )
    for cut in result.cuts:
        r = cut.record
        print(
            f"cut rank={cut.rank} path={r.cycle.base_path_id} "
            f"pos={r.cycle.position} len={r.cycle.length:.6g} "
            f"tightness={r.tightness:.6g}"
        )
    return EXIT_OK


def _cmd_dataset(args):
    rows = []
    names = sorted(
        n for n in os.listdir(args.dir)
        if os.path.splitext(n)[1].lstrip(".").lower() in ("obj", "off", "ply")
    )
    if not names:
        raise MeshLoadError(f"no mesh files in {args.dir!r}")
    for name in names:
        cfg_args = argparse.Namespace(**vars(args))
        cfg_args.input = os.path.join(args.dir, name)
        cfg_args.synthetic = None
        config = _config_from(cfg_args)
        try:
            result = run_pipeline(config)
        except ValidationFailure as exc:
            logger.warning("skipping %s: %s", name, exc)
            continue
        rows.append((name, result))
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        write_stats_rows(out, rows)
    finally:
        if args.csv:
            out.close()
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="meshneck",
        description="Find neck-like bottleneck cycles on genus-zero "
        "triangle meshes by maximizing the isoperimetric tightness ratio.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the pipeline on one mesh")
    _add_common(p_run)
    p_run.add_argument(
        "--oracle",
        action="append",
        choices=("floodfill", "brute", "collar"),
        help="also run a brute-force oracle and report diffs (repeatable)",
    )
    p_run.set_defaults(func=_cmd_run)

    p_ds = sub.add_parser("dataset", help="run a directory of meshes, emit CSV")
    _add_common(p_ds)
    p_ds.add_argument("--dir", required=True, help="directory of mesh files")
    p_ds.add_argument("--csv", help="CSV output path (default stdout)")
    p_ds.set_defaults(func=_cmd_dataset)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SeparationError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (MeshLoadError, MeshError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
