"""Benchmark the compiled scan kernels against the pure-Python fallback.

Usage: python benchmarks/compare_backends.py [--repeat N]

Workloads mirror the hot paths: exhaustive identity scans over all variable
assignments, brute-force coloring counts over all region assignments, and the
quasigroup (line permutation) check.
"""

import argparse
import random
import time
from array import array

from ktgroups import _kernels, _pykernels
from ktgroups.classify import enumerate_kt
from ktgroups.terms import CATALOG, compile_term
from ktgroups.ternary import parse_kt_spec, table_from_canonical


def _prepare_identity_workloads():
    out = []
    table12 = table_from_canonical(parse_kt_spec("Z4xZ3@(2,0)"))
    table5 = table_from_canonical(parse_kt_spec("Z5@0"))
    for name, table, key in (
        ("assoc_full on order 12 (2 x 12^5 assignments)", table12, "assoc_full"),
        ("A3L on order 12 (12^4 assignments)", table12, "A3L"),
        ("entropic on order 5 (5^9 assignments)", table5, "entropic"),
    ):
        members = [
            (compile_term(m.lhs), compile_term(m.rhs), m.nvars) for m in CATALOG[key]
        ]
        out.append((name, table, members))
    return out


def _run_identity(backend, table, members, compiled):
    skew = table.skew_vector()
    n = table.n
    for prog_l, prog_r, nvars in members:
        if compiled:
            hit = backend.scan_pair(
                n,
                nvars,
                array("i", prog_l),
                array("i", prog_r),
                array("i", table.cube),
                array("i", skew),
                array("i"),
                array("i"),
            )
        else:
            hit = backend.scan_pair(n, nvars, prog_l, prog_r, table.cube, skew, None, None)
        assert hit == -1


def _prepare_coloring_workload():
    rng = random.Random(8)
    regions = 6
    crossings = []
    for _ in range(6):
        crossings.append(0)
        crossings.extend(rng.randrange(regions) for _ in range(4))
    struct = enumerate_kt(8).representatives[1]
    cube = table_from_canonical(struct).cube
    return regions, crossings, cube


def _run_coloring(backend, regions, crossings, cube, compiled):
    if compiled:
        count, _ = backend.count_colorings(
            8, regions, array("i", crossings), array("i", cube), array("i"), 0
        )
    else:
        count, _ = backend.count_colorings(8, regions, crossings, cube, None, 0)
    return count


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    try:
        compiled = _kernels.get_backend("compiled")
    except RuntimeError:
        raise SystemExit("compiled kernels are not available; build the extension first")
    pure = _pykernels

    def best_of(fn):
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        return min(times)

    rows = []
    for name, table, members in _prepare_identity_workloads():
        t_c = best_of(lambda: _run_identity(compiled, table, members, True))
        t_p = best_of(lambda: _run_identity(pure, table, members, False))
        rows.append((name, t_c, t_p))

    regions, crossings, cube = _prepare_coloring_workload()
    count_c = _run_coloring(compiled, regions, crossings, cube, True)
    count_p = _run_coloring(pure, regions, crossings, cube, False)
    assert count_c == count_p
    t_c = best_of(lambda: _run_coloring(compiled, regions, crossings, cube, True))
    t_p = best_of(lambda: _run_coloring(pure, regions, crossings, cube, False))
    rows.append(("brute-force coloring count (8^6 assignments, 6 crossings)", t_c, t_p))

    big = table_from_canonical(parse_kt_spec("Z8xZ4xZ2@(0,0,0)"))
    t_c = best_of(lambda: compiled.quasigroup_check(64, array("i", big.cube)))
    t_p = best_of(lambda: pure.quasigroup_check(64, big.cube))
    rows.append(("quasigroup check on order 64", t_c, t_p))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  compiled    pure        speedup")
    for name, t_c, t_p in rows:
        print(f"{name.ljust(width)}  {t_c * 1e3:8.2f}ms  {t_p * 1e3:8.2f}ms  {t_p / t_c:6.1f}x")


if __name__ == "__main__":
    main()
