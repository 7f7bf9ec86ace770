"""Pure-Python scan kernels.

Fallback implementations of the hot loops: exhaustive identity scans over all
variable assignments and brute-force coloring counts over all region
assignments.  The compiled twin in ``_ckernels`` implements the same
signatures; ``ktgroups._kernels`` picks one at import time.

Programs are postfix opcode sequences over up to two tabulated ternary
operations (cubes are flat lists of length n**3, index (x*n + y)*n + z):

    op >= 0   push env[op]
    op == -1  pop z, y, x; push cube_a[x, y, z]
    op == -2  pop x; push skew_a[x]
    op == -3  pop z, y, x; push cube_b[x, y, z]
    op == -4  pop x; push skew_b[x]

Scans run in lexicographic order over assignments (variable 0 most
significant), chunked so memory stays bounded.
"""

_CHUNK = 1 << 14

OP_BRACKET_A = -1
OP_SKEW_A = -2
OP_BRACKET_B = -3
OP_SKEW_B = -4


def eval_program(prog, env, n, cube_a, skew_a, cube_b=None, skew_b=None):
    """Evaluate one program on a single assignment."""
    stack = []
    for op in prog:
        if op >= 0:
            stack.append(env[op])
        elif op == OP_BRACKET_A:
            z = stack.pop()
            y = stack.pop()
            x = stack.pop()
            stack.append(cube_a[(x * n + y) * n + z])
        elif op == OP_SKEW_A:
            stack.append(skew_a[stack.pop()])
        elif op == OP_BRACKET_B:
            z = stack.pop()
            y = stack.pop()
            x = stack.pop()
            stack.append(cube_b[(x * n + y) * n + z])
        else:
            stack.append(skew_b[stack.pop()])
    return stack[0]


def _eval_columns(prog, cols, n, cube_a, skew_a, cube_b, skew_b):
    """Evaluate a program over a block of assignments column-wise."""
    stack = []
    for op in prog:
        if op >= 0:
            stack.append(cols[op])
        elif op == OP_BRACKET_A:
            z = stack.pop()
            y = stack.pop()
            x = stack.pop()
            stack.append([cube_a[(a * n + b) * n + c] for a, b, c in zip(x, y, z)])
        elif op == OP_SKEW_A:
            stack.append([skew_a[a] for a in stack.pop()])
        elif op == OP_BRACKET_B:
            z = stack.pop()
            y = stack.pop()
            x = stack.pop()
            stack.append([cube_b[(a * n + b) * n + c] for a, b, c in zip(x, y, z)])
        else:
            stack.append([skew_b[a] for a in stack.pop()])
    return stack[0]


def scan_pair(n, nvars, prog_l, prog_r, cube_a, skew_a, cube_b, skew_b):
    """First assignment index (lex order) where the two programs differ, or -1."""
    total = n**nvars
    weights = [n ** (nvars - 1 - v) for v in range(nvars)]
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        block = range(start, stop)
        cols = [[(i // w) % n for i in block] for w in weights]
        left = _eval_columns(prog_l, cols, n, cube_a, skew_a, cube_b, skew_b)
        right = _eval_columns(prog_r, cols, n, cube_a, skew_a, cube_b, skew_b)
        if left != right:
            for off, (lv, rv) in enumerate(zip(left, right)):
                if lv != rv:
                    return start + off
    return -1


def count_colorings(n, regions, crossings, cube_flat, cube_virt, cap):
    """Count satisfying region assignments; collect the first ones in lex order.

    ``crossings`` is a flat sequence, five ints per crossing:
    (use_virt, c0, c1, c2, c3).  Returns ``(count, indices)`` where ``indices``
    holds at most ``cap + 1`` assignment indices (one extra so callers can
    detect overflow).
    """
    total = n**regions
    keep = cap + 1 if cap else 0
    if not crossings:
        return total, list(range(min(keep, total)))
    weights = [n ** (regions - 1 - r) for r in range(regions)]
    rules = [tuple(crossings[i : i + 5]) for i in range(0, len(crossings), 5)]
    count = 0
    found = []
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        block = range(start, stop)
        cols = [[(i // w) % n for i in block] for w in weights]
        ok = None
        for use_virt, c0, c1, c2, c3 in rules:
            cube = cube_virt if use_virt else cube_flat
            hit = [
                cube[(x * n + y) * n + z] == w
                for x, y, z, w in zip(cols[c1], cols[c2], cols[c3], cols[c0])
            ]
            ok = hit if ok is None else [a and b for a, b in zip(ok, hit)]
        count += sum(ok)
        if len(found) < keep:
            for off, good in enumerate(ok):
                if good:
                    found.append(start + off)
                    if len(found) >= keep:
                        break
    return count, found


def quasigroup_check(n, cube):
    """True iff every line of the cube (all three directions) is a permutation."""
    for a in range(n):
        for b in range(n):
            base = (a * n + b) * n
            if len({cube[base + z] for z in range(n)}) != n:
                return False
            if len({cube[(a * n + z) * n + b] for z in range(n)}) != n:
                return False
            if len({cube[(z * n + a) * n + b] for z in range(n)}) != n:
                return False
    return True
