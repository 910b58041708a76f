"""Compare the numba kernels against the pure-numpy fallback.

Raw kernels are timed in-process (both backends can coexist); the
end-to-end pipeline is timed in subprocesses so each run gets the backend
selected by MESHNECK_BACKEND at import.

Usage: python benchmarks/bench_backends.py [--freq N] [--reps K]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from meshneck import kernels, synthetic

NO_TARGETS = np.zeros(0, dtype=np.uint8)


def time_kernel(fn, args, reps):
    fn(*args)  # warm (JIT compile / cache touch)
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(freq, reps):
    mesh = synthetic.icosphere_frequency(freq)
    print(f"# kernel benchmarks on icosphere f={freq} "
          f"({mesh.n_vertices} vertices, {mesh.n_faces} faces)")
    forb = np.zeros(mesh.n_vertices, dtype=np.uint8)
    src = np.array([0], dtype=np.int64)
    init = np.zeros(1)
    closing = np.full(mesh.n_vertices, np.inf)
    closing[mesh.n_vertices - 1] = 1.0
    blocked = np.zeros(mesh.n_edges, dtype=np.uint8)
    cases = {
        "dijkstra": (
            mesh.adj_indptr, mesh.adj_indices, mesh.adj_weights,
            src, init, forb, NO_TARGETS,
        ),
        "lasso_search": (
            mesh.adj_indptr, mesh.adj_indices, mesh.adj_weights,
            src, init, forb, closing,
        ),
        "bfs_hops": (mesh.adj_indptr, mesh.adj_indices, 0, 25),
        "face_components": (mesh.face_adj, mesh.face_edge_ids, blocked),
    }
    backends = [kernels.get_backend("numpy")]
    try:
        backends.append(kernels.get_backend("numba"))
    except ImportError:
        print("numba unavailable; numpy only")
    print(f"{'kernel':<16}" + "".join(f"{b.name:>12}" for b in backends)
          + f"{'speedup':>10}")
    for name, args in cases.items():
        times = [time_kernel(getattr(b, name), args, reps) for b in backends]
        row = f"{name:<16}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


def bench_pipeline(reps):
    print("# end-to-end pipeline (dumbbell:1,0.2,3), subprocess per backend")
    code = (
        "import time\n"
        "from meshneck import kernels\n"
        "from meshneck.pipeline import RunConfig, run_pipeline\n"
        "run_pipeline(RunConfig(synthetic='dumbbell:1,0.2,3'))\n"
        "best = min(\n"
        "    run_pipeline(RunConfig(synthetic='dumbbell:1,0.2,3')).timing.total_ms\n"
        f"    for _ in range({reps})\n"
        ")\n"
        "print(f'{kernels.backend_name}: {best:.1f} ms')\n"
    )
    for backend in ("numpy", "numba"):
        env = dict(os.environ, MESHNECK_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True,
            text=True,
        )
        out = proc.stdout.strip() or proc.stderr.strip()
        print(f"  {out}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--freq", type=int, default=30,
                        help="icosphere frequency for kernel benchmarks")
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()
    bench_kernels(args.freq, args.reps)
    bench_pipeline(args.reps)


if __name__ == "__main__":
    main()
