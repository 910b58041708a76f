"""End-to-end neck-cut pipeline: load/synthesize, validate, salient points,
skeleton, loop families, tightness, selection, exports.

Stage timings mirror the salient / cycles / tightness split used in the
evaluation tables; the canonical JSON artifact contains no timings so that
identical runs are byte-identical.
"""

import csv
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import meshio, synthetic
from .cycles import cycles_along_path, family_to_json
from .errors import ValidationFailure
from .mesh import validate
from .paths import approx_diameter
from .salient import SalientSet, candidate_salient, filter_salient, salient_to_json
from .skeleton import build_skeleton_greedy, build_skeleton_prim, skeleton_to_json
from .tightness import (
    cut_to_json,
    default_threshold,
    score_family,
    select_cuts,
)

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    input: str = None
    synthetic: str = None
    fmt: str = None
    r_filter: int = 20
    window: int = 5
    threshold_epsilon: float = 0.15
    seed_vertex: int = 0
    skeleton_variant: str = "greedy"  # or "prim"
    workers: int = 1
    out_dir: str = None
    export: tuple = ("json",)

    def __post_init__(self):
        if self.r_filter < 0:
            raise ValueError("r_filter must be >= 0")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if not 0.0 <= self.threshold_epsilon < 1.0:
            raise ValueError("threshold_epsilon must be in [0, 1)")
        if self.skeleton_variant not in ("greedy", "prim"):
            raise ValueError("skeleton_variant must be 'greedy' or 'prim'")

    @property
    def threshold(self):
        return default_threshold(self.threshold_epsilon)


@dataclass
class TimingReport:
    salient_ms: float = 0.0
    cycles_ms: float = 0.0
    tightness_ms: float = 0.0
    total_ms: float = 0.0
    salient_count: int = 0
    cycles_per_path: list = field(default_factory=list)


@dataclass
class PipelineResult:
    cuts: list
    timing: TimingReport
    mesh: object
    report: object
    salient: object
    skeleton: object
    families: list
    records: list  # per-family TightnessRecord lists
    strips: list
    config: RunConfig


def _load_input(config):
    if config.synthetic:
        return synthetic.synthesize(config.synthetic)
    if config.input is None:
        raise ValueError("config needs an input path or a synthetic spec")
    return meshio.load_mesh(config.input, fmt=config.fmt)


def run_pipeline(config, mesh=None):
    """Run the full pipeline; returns a :class:`PipelineResult` whose
    ``cuts`` are globally ranked :class:`NeckCut` objects.

    Raises :class:`ValidationFailure` when the input is not a closed
    genus-zero surface.
    """
    if mesh is None:
        mesh = _load_input(config)
    report = validate(mesh)
    if not report.is_genus_zero:
        raise ValidationFailure(
            "input is not a closed genus-zero surface:\n" + report.summary(),
            report=report,
        )

    t0 = time.perf_counter()
    u, v, tree_u = approx_diameter(mesh, seed=config.seed_vertex)
    cands = candidate_salient(mesh, tree_u)
    sset = filter_salient(mesh, cands, tree_u, config.r_filter)
    if config.skeleton_variant == "prim":
        terminals = [u] + [p for p in sset.points if p != u]
        skel = build_skeleton_prim(
            mesh, SalientSet(terminals, sset.source_u, sset.r_filter)
        )
    else:
        skel = build_skeleton_greedy(mesh, u, v, sset)
    t1 = time.perf_counter()

    search_paths = [
        (i, p) for i, p in enumerate(skel.paths) if len(p.vertices) >= 3
    ]
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            families = list(
                pool.map(
                    lambda ip: cycles_along_path(mesh, ip[1], path_id=ip[0]),
                    search_paths,
                )
            )
    else:
        families = [
            cycles_along_path(mesh, p, path_id=i) for i, p in search_paths
        ]
    t2 = time.perf_counter()

    scored = [f for f in families if f.cycles]
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            pairs = list(pool.map(lambda f: score_family(mesh, f), scored))
    else:
        pairs = [score_family(mesh, f) for f in scored]
    records = [p[0] for p in pairs]
    strips = [p[1] for p in pairs]
    cuts = select_cuts(records, config.threshold, config.window)
    t3 = time.perf_counter()

    timing = TimingReport(
        salient_ms=(t1 - t0) * 1e3,
        cycles_ms=(t2 - t1) * 1e3,
        tightness_ms=(t3 - t2) * 1e3,
        total_ms=(t3 - t0) * 1e3,
        salient_count=len(sset.points),
        cycles_per_path=[len(f.cycles) for f in families],
    )
    result = PipelineResult(
        cuts=cuts,
        timing=timing,
        mesh=mesh,
        report=report,
        salient=sset,
        skeleton=skel,
        families=families,
        records=records,
        strips=strips,
        config=config,
    )
    if config.out_dir:
        write_outputs(result, tree_u=tree_u)
    result.tree_u = tree_u
    return result


def result_to_json(result):
    """The canonical, deterministic JSON artifact (no timings)."""
    cfg = result.config
    return {
        "config": {
            "input": cfg.input,
            "synthetic": cfg.synthetic,
            "r_filter": cfg.r_filter,
            "window": cfg.window,
            "threshold_epsilon": cfg.threshold_epsilon,
            "seed_vertex": cfg.seed_vertex,
            "skeleton_variant": cfg.skeleton_variant,
        },
        "mesh": {
            "vertices": result.mesh.n_vertices,
            "faces": result.mesh.n_faces,
            "total_area": result.mesh.total_area,
        },
        "cuts": [cut_to_json(c) for c in result.cuts],
    }


def write_outputs(result, tree_u=None):
    cfg = result.config
    os.makedirs(cfg.out_dir, exist_ok=True)

    def path_for(name):
        return os.path.join(cfg.out_dir, name)

    if "json" in cfg.export:
        with open(path_for("cuts.json"), "w") as fh:
            json.dump(result_to_json(result), fh, sort_keys=True, indent=1)
            fh.write("\n")
        if tree_u is not None:
            with open(path_for("salient.json"), "w") as fh:
                json.dump(
                    salient_to_json(result.mesh, result.salient, tree_u),
                    fh,
                    sort_keys=True,
                    indent=1,
                )
                fh.write("\n")
        with open(path_for("skeleton.json"), "w") as fh:
            json.dump(
                skeleton_to_json(result.skeleton), fh, sort_keys=True, indent=1
            )
            fh.write("\n")
        with open(path_for("families.json"), "w") as fh:
            json.dump(
                [family_to_json(f) for f in result.families],
                fh,
                sort_keys=True,
                indent=1,
            )
            fh.write("\n")
    if "obj" in cfg.export:
        meshio.write_obj_polylines(
            path_for("cuts.obj"),
            result.mesh,
            [c.record.cycle.vertices for c in result.cuts],
        )
        meshio.write_obj_polylines(
            path_for("skeleton.obj"),
            result.mesh,
            [p.vertices for p in result.skeleton.paths],
            closed=False,
        )
        meshio.write_obj_polylines(
            path_for("families.obj"),
            result.mesh,
            [c.vertices for f in result.families for c in f.cycles],
        )
    if "csv" in cfg.export:
        with open(path_for("stats.csv"), "w", newline="") as fh:
            write_stats_rows(
                fh,
                [(cfg.input or cfg.synthetic, result)],
            )
        with open(path_for("families.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["path_id", "path_vertices", "cycles", "skipped",
                 "best_tightness", "cuts"]
            )
            cuts_by_path = {}
            for c in result.cuts:
                pid = c.record.cycle.base_path_id
                cuts_by_path[pid] = cuts_by_path.get(pid, 0) + 1
            scored = [f for f in result.families if f.cycles]
            for fam, recs in zip(scored, result.records):
                best = max((r.tightness for r in recs), default=0.0)
                writer.writerow(
                    [fam.path_id, len(fam.path.vertices), len(fam.cycles),
                     len(fam.skipped_positions), f"{best:.9g}",
                     cuts_by_path.get(fam.path_id, 0)]
                )


CSV_COLUMNS = (
    "input",
    "faces",
    "salient_count",
    "salient_ms",
    "cycles_ms",
    "tightness_ms",
    "total_ms",
    "cuts_found",
)


def write_stats_rows(fh, named_results, header=True):
    writer = csv.writer(fh)
    if header:
        writer.writerow(CSV_COLUMNS)
    for name, result in named_results:
        t = result.timing
        writer.writerow(
            [
                name,
                result.mesh.n_faces,
                t.salient_count,
                f"{t.salient_ms:.3f}",
                f"{t.cycles_ms:.3f}",
                f"{t.tightness_ms:.3f}",
                f"{t.total_ms:.3f}",
                len(result.cuts),
            ]
        )


def run_oracle_compare(config, oracles=("floodfill",), mesh=None,
                       max_cycle_edges=None, collar_budget=4):
    """Pipeline vs oracle diff report (JSON-able dict)."""
    from . import oracle as oracle_mod

    result = run_pipeline(config, mesh=mesh)
    mesh = result.mesh
    out = {
        "pipeline_best_tightness": (
            result.cuts[0].record.tightness if result.cuts else None
        ),
        "cuts_found": len(result.cuts),
    }
    if "floodfill" in oracles:
        diffs = []
        for fam_records in result.records:
            for rec in fam_records:
                u_side_face = _face_on_start_side(mesh, rec.cycle, result)
                flood = oracle_mod.side_area_of(
                    mesh, rec.cycle, u_side_face
                )
                denom = max(abs(flood), 1e-300)
                diffs.append(
                    {
                        "path_id": rec.cycle.base_path_id,
                        "position": rec.cycle.position,
                        "rel_diff": abs(flood - rec.area_side_u) / denom,
                    }
                )
        out["floodfill"] = {
            "cycles_checked": len(diffs),
            "max_rel_diff": max((d["rel_diff"] for d in diffs), default=0.0),
            "per_cycle": diffs,
        }
    if "brute" in oracles:
        edges_cap = max_cycle_edges or _default_edge_cap(mesh)
        res = oracle_mod.brute_force_best_cycle(mesh, edges_cap)
        out["brute"] = {
            "best_tightness": res.record.tightness if res.record else None,
            "complete": res.complete,
            "evaluated": res.evaluated,
        }
    if "collar" in oracles:
        res = oracle_mod.exhaustive_collar(mesh, budget=collar_budget)
        out["collar"] = {
            "best_tightness": res.record.tightness if res.record else None,
            "sleeve_verified": res.complete,
        }
    return out, result


def _default_edge_cap(mesh):
    return max(12, int(mesh.n_vertices ** 0.5) + 4)


def _face_on_start_side(mesh, cycle, result):
    """A face known to lie on the path-start side of a pipeline cycle."""
    fam = result.families[0]
    for f in result.families:
        if f.path_id == cycle.base_path_id:
            fam = f
            break
    path = fam.path.vertices
    eid = mesh.edge_id(int(path[0]), int(path[1]))
    for f in mesh.edge_faces[eid]:
        if f >= 0:
            return int(f)
    raise RuntimeError("no face flanks the first path edge")
