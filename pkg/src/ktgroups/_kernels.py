"""Kernel backend selection.

The compiled extension (``_ckernels``, built from Cython) is used when it
imported cleanly; otherwise the pure-Python twin (``_pykernels``) takes over.
Set ``KTGROUPS_PURE=1`` to force the fallback.  Both backends are kept
behaviorally identical; ``tests/test_kernels.py`` pins them against each
other and ``benchmarks/compare_backends.py`` measures the gap.
"""

import os
from array import array

from ktgroups import _pykernels

_EMPTY = array("i")

if os.environ.get("KTGROUPS_PURE") == "1":
    _impl = None
else:
    try:
        from ktgroups import _ckernels as _impl
    except ImportError:
        _impl = None

eval_program = _pykernels.eval_program


def backend_name():
    return "pure" if _impl is None else "compiled"


def get_backend(name):
    """Explicit backend access for benchmarks and parity tests."""
    if name == "pure":
        return _pykernels
    if name == "compiled":
        if _impl is None:
            raise RuntimeError("compiled kernels are not available")
        return _impl
    raise ValueError(f"unknown backend {name!r}")


def _arr(seq):
    return seq if isinstance(seq, array) else array("i", seq)


def scan_pair(n, nvars, prog_l, prog_r, cube_a, skew_a, cube_b=None, skew_b=None):
    if nvars > 16:
        raise ValueError("too many variables for the scan kernels")
    if _impl is None:
        return _pykernels.scan_pair(
            n, nvars, prog_l, prog_r, cube_a, skew_a, cube_b, skew_b
        )
    return _impl.scan_pair(
        n,
        nvars,
        _arr(prog_l),
        _arr(prog_r),
        _arr(cube_a),
        _arr(skew_a) if skew_a is not None else _EMPTY,
        _arr(cube_b) if cube_b is not None else _EMPTY,
        _arr(skew_b) if skew_b is not None else _EMPTY,
    )


def count_colorings(n, regions, crossings, cube_flat, cube_virt, cap):
    if regions > 16:
        raise ValueError("too many regions for the scan kernels")
    if _impl is None:
        return _pykernels.count_colorings(n, regions, crossings, cube_flat, cube_virt, cap)
    return _impl.count_colorings(
        n,
        regions,
        _arr(crossings),
        _arr(cube_flat),
        _arr(cube_virt) if cube_virt is not None else _EMPTY,
        cap,
    )


def quasigroup_check(n, cube):
    if _impl is None:
        return _pykernels.quasigroup_check(n, cube)
    return _impl.quasigroup_check(n, _arr(cube))
