# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels; mirrors the signatures of ``_pykernels``.

See ``_pykernels`` for the opcode table.  Variable counts are capped at 16
and program depth at 64, both far above anything the term catalog emits.
"""

from libc.stdlib cimport calloc, free


cdef inline int _eval(const int[::1] prog, const int* env,
                      const int[::1] cube_a, const int[::1] skew_a,
                      const int[::1] cube_b, const int[::1] skew_b,
                      int n) noexcept nogil:
    cdef int stack[64]
    cdef int sp = 0
    cdef Py_ssize_t t
    cdef int op, x, y, z
    for t in range(prog.shape[0]):
        op = prog[t]
        if op >= 0:
            stack[sp] = env[op]
            sp += 1
        elif op == -1:
            z = stack[sp - 1]; y = stack[sp - 2]; x = stack[sp - 3]
            sp -= 2
            stack[sp - 1] = cube_a[(x * n + y) * n + z]
        elif op == -2:
            stack[sp - 1] = skew_a[stack[sp - 1]]
        elif op == -3:
            z = stack[sp - 1]; y = stack[sp - 2]; x = stack[sp - 3]
            sp -= 2
            stack[sp - 1] = cube_b[(x * n + y) * n + z]
        else:
            stack[sp - 1] = skew_b[stack[sp - 1]]
    return stack[0]


def scan_pair(int n, int nvars, const int[::1] prog_l, const int[::1] prog_r,
              const int[::1] cube_a, const int[::1] skew_a,
              const int[::1] cube_b, const int[::1] skew_b):
    """First assignment index (lex order) where the two programs differ, or -1."""
    cdef long long total = 1
    cdef int i
    for i in range(nvars):
        total *= n
    cdef int env[16]
    for i in range(16):
        env[i] = 0
    cdef long long idx = 0
    cdef int carry
    with nogil:
        while idx < total:
            if _eval(prog_l, env, cube_a, skew_a, cube_b, skew_b, n) != \
               _eval(prog_r, env, cube_a, skew_a, cube_b, skew_b, n):
                break
            carry = nvars - 1
            while carry >= 0:
                env[carry] += 1
                if env[carry] < n:
                    break
                env[carry] = 0
                carry -= 1
            idx += 1
    if idx < total:
        return idx
    return -1


def count_colorings(int n, int regions, const int[::1] crossings,
                    const int[::1] cube_flat, const int[::1] cube_virt,
                    long long cap):
    """Count satisfying region assignments; collect the first cap+1 in lex order."""
    cdef long long total = 1
    cdef int i
    for i in range(regions):
        total *= n
    cdef long long keep = cap + 1 if cap else 0
    cdef int ncross = crossings.shape[0] // 5
    cdef long long count = 0
    found = []
    cdef int f[16]
    for i in range(16):
        f[i] = 0
    cdef long long idx = 0
    cdef int k, base, ok, carry, v
    if ncross == 0:
        idx = total if total < keep else keep
        return total, list(range(idx))
    while idx < total:
        ok = 1
        for k in range(ncross):
            base = k * 5
            if crossings[base]:
                v = cube_virt[(f[crossings[base + 2]] * n + f[crossings[base + 3]]) * n
                              + f[crossings[base + 4]]]
            else:
                v = cube_flat[(f[crossings[base + 2]] * n + f[crossings[base + 3]]) * n
                              + f[crossings[base + 4]]]
            if v != f[crossings[base + 1]]:
                ok = 0
                break
        if ok:
            count += 1
            if <long long>len(found) < keep:
                found.append(idx)
        carry = regions - 1
        while carry >= 0:
            f[carry] += 1
            if f[carry] < n:
                break
            f[carry] = 0
            carry -= 1
        idx += 1
    return count, found


def quasigroup_check(int n, const int[::1] cube):
    """True iff every line of the cube (all three directions) is a permutation."""
    cdef char* seen = <char*>calloc(n, 1)
    if seen == NULL:
        raise MemoryError()
    cdef int a, b, z, v
    try:
        for a in range(n):
            for b in range(n):
                for z in range(n):
                    seen[z] = 0
                for z in range(n):
                    v = cube[(a * n + b) * n + z]
                    if seen[v]:
                        return False
                    seen[v] = 1
                for z in range(n):
                    seen[z] = 0
                for z in range(n):
                    v = cube[(a * n + z) * n + b]
                    if seen[v]:
                        return False
                    seen[v] = 1
                for z in range(n):
                    seen[z] = 0
                for z in range(n):
                    v = cube[(z * n + a) * n + b]
                    if seen[v]:
                        return False
                    seen[v] = 1
        return True
    finally:
        free(seen)
