"""meshneck: neck-like bottleneck cycles on genus-zero triangle meshes.

The tightness of a closed surface curve is the smaller of its two bounded
areas divided by its squared length; high-tightness cycles are neck cuts.
The pipeline finds them with shortest-path searches only: a two-sweep
diameter approximation, salient feature tips, a skeleton of shortest paths,
loop generation along each path, and strip-area prefix sums for scoring.
"""

from .cycles import Cycle, CycleFamily, cycles_along_path, lasso_at
from .errors import MeshError, MeshLoadError, SeparationError, ValidationFailure
from .mesh import Mesh, ValidationReport, validate
from .meshio import load_mesh
from .paths import PathOnMesh, ShortestPathTree, approx_diameter, dijkstra, shortest_path
from .pipeline import PipelineResult, RunConfig, TimingReport, run_pipeline
from .salient import SalientSet, candidate_salient, filter_salient
from .skeleton import Skeleton, build_skeleton_greedy, build_skeleton_prim
from .synthetic import SyntheticSpec, synthesize
from .tightness import (
    NeckCut,
    TightnessRecord,
    default_threshold,
    score,
    select_cuts,
    side_areas,
    strip_areas,
)

__version__ = "0.1.0"

__all__ = [
    "Cycle",
    "CycleFamily",
    "Mesh",
    "MeshError",
    "MeshLoadError",
    "NeckCut",
    "PathOnMesh",
    "PipelineResult",
    "RunConfig",
    "SalientSet",
    "SeparationError",
    "ShortestPathTree",
    "Skeleton",
    "SyntheticSpec",
    "TightnessRecord",
    "TimingReport",
    "ValidationFailure",
    "ValidationReport",
    "approx_diameter",
    "build_skeleton_greedy",
    "build_skeleton_prim",
    "candidate_salient",
    "cycles_along_path",
    "default_threshold",
    "dijkstra",
    "filter_salient",
    "lasso_at",
    "load_mesh",
    "run_pipeline",
    "score",
    "select_cuts",
    "shortest_path",
    "side_areas",
    "strip_areas",
    "synthesize",
    "validate",
]
