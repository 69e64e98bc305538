"""Time the compiled distance kernels against the NumPy fallback.

    python3 benchmarks/bench_kernels.py --points 200000 --repeat 3
"""
import argparse
import timeit

import numpy as np

from hessian_symm import _kernels_py
from hessian_symm.geometry import FourierBody2D, Polygon, Polytope3D, sphere_grid

try:
    from hessian_symm import _kernels
except ImportError:
    _kernels = None


def cases(points: int, seed: int):
    rng = np.random.default_rng(seed)
    poly = Polygon.hull(rng.normal(size=(40, 2)))
    cube = Polytope3D(rng.normal(size=(60, 3)))
    four = FourierBody2D(1.0, [0.0, 0.05, 0.02], [0.0, 0.0, 0.03])
    dirs, _ = sphere_grid(2, 512)
    p2 = np.ascontiguousarray(rng.uniform(-3, 3, size=(points, 2)))
    p3 = np.ascontiguousarray(rng.uniform(-3, 3, size=(points, 3)))
    return {
        "polygon_distance": ("polygon_distance", (p2, np.ascontiguousarray(poly.vertices))),
        "mesh_distance": ("mesh_distance", (p3, cube.triangles, cube.facet_normals, cube.facet_offsets)),
        "ellipsoid_distance": ("ellipsoid_distance", (p3, np.array([1.5, 1.0, 0.4]))),
        "support_gap_max": ("support_gap_max", (p2, np.ascontiguousarray(dirs),
                                                np.ascontiguousarray(four.support(dirs)))),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels is not None else [])
    print(f"{'kernel':<20}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, (fn, fargs) in cases(args.points, args.seed).items():
        times = [min(timeit.repeat(lambda: getattr(mod, fn)(*fargs), number=1, repeat=args.repeat))
                 for _, mod in backends]
        speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else f"{'n/a':>10}"
        print(f"{label:<20}" + "".join(f"{t:>11.4f}s" for t in times) + speed)


if __name__ == "__main__":
    main()
