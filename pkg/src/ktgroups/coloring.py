"""Region colorings of flat virtual diagrams by knot-theoretic structures.

Each crossing (c0, c1, c2, c3) imposes f(c0) = [f(c1) f(c2) f(c3)], which in
canonical form is the affine relation f(c0) - f(c1) + f(c2) - f(c3) = a over
the associated group.  Counting goes two independent ways: a brute-force scan
that evaluates the bracket directly on every assignment, and a solver that
compiles the relations to an integer matrix and counts solutions per cyclic
factor through the Smith normal form.  The two paths share nothing but the
group arithmetic and must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from ktgroups import _kernels
from ktgroups.abelian import IntMatrix, smith_normal_form
from ktgroups.diagram import validate
from ktgroups.errors import (
    BudgetExceededError,
    GroupMismatchError,
    IncompatiblePairError,
)
from ktgroups.ternary import (
    CanonicalKT,
    canonicalize,
    compatible,
    kt_eval,
    table_from_canonical,
)

__all__ = [
    "ColoringSystem",
    "ColoringReport",
    "compile_system",
    "count_affine",
    "count_bruteforce",
    "enumerate_colorings",
    "coloring_group",
    "invariant_vector",
    "order4_catalog",
]

DEFAULT_BRUTE_BUDGET = 10**7


@dataclass(frozen=True)
class ColoringSystem:
    """Affine constraint system: one row per crossing, one column per region."""

    matrix: IntMatrix
    rhs: tuple
    group: object
    num_regions: int


@dataclass
class ColoringReport:
    count: int
    colorings: tuple | None
    method: str


def _check_pair(diagram, flat, virt, require_compatible):
    findings = validate(diagram)
    if findings:
        raise ValueError("invalid diagram: " + "; ".join(findings))
    has_virtual = any(c.kind == "virtual" for c in diagram.crossings)
    if has_virtual and virt is None:
        raise ValueError(
            f"diagram {diagram.name!r} has virtual crossings; a virtual operation is required"
        )
    if virt is not None:
        if flat.order != virt.order:
            raise GroupMismatchError(
                f"carrier mismatch: flat order {flat.order}, virtual order {virt.order}"
            )
        if require_compatible and has_virtual:
            report = compatible(flat, virt)
            if not report.both:
                raise IncompatiblePairError(
                    "flat/virtual operations are incompatible; "
                    f"counterexample {report.counterexample or report.companion_counterexample}"
                )
    return has_virtual


def compile_system(diagram, flat, virt=None, require_compatible=True):
    """Compile crossing relations into an affine system over the flat group.

    The affine encoding needs both operations to live over one associated
    group; the brute-force path has no such restriction.
    """
    has_virtual = _check_pair(diagram, flat, virt, require_compatible)
    if has_virtual and flat.group != virt.group:
        raise GroupMismatchError(
            "affine system requires the flat and virtual operations to share "
            f"an associated group; got {flat.group} and {virt.group}"
        )
    rows = []
    rhs = []
    for crossing in diagram.crossings:
        row = [0] * diagram.num_regions
        signs = (1, -1, 1, -1)
        for corner, sign in zip(crossing.corners, signs):
            row[corner] += sign
        rows.append(tuple(row))
        rhs.append(flat.a if crossing.kind == "flat" else virt.a)
    matrix = IntMatrix(tuple(rows)) if rows else IntMatrix(())
    return ColoringSystem(matrix, tuple(rhs), flat.group, diagram.num_regions)


def count_affine(system):
    """Solution count through the Smith normal form, factor by factor."""
    group = system.group
    regions = system.num_regions
    nrows = len(system.rhs)
    if nrows == 0:
        return ColoringReport(group.order**regions, None, "affine")
    u_mat, s_mat, _v = smith_normal_form(system.matrix)
    m = min(nrows, regions)
    diag = [s_mat.entries[j][j] for j in range(m)]
    total = 1
    for pos, q in enumerate(group.factors):
        t = [e.coords[pos] for e in system.rhs]
        u = u_mat.apply(t)
        cnt = 1
        for j in range(nrows):
            uj = u[j] % q
            if j < m:
                d = gcd(diag[j], q)
                if uj % d:
                    cnt = 0
                    break
                cnt *= d
            elif uj:
                cnt = 0
                break
        if cnt:
            cnt *= q ** (regions - m)
        total *= cnt
    return ColoringReport(total, None, "affine")


def _assignment_from_index(index, n, regions, elements):
    coords = []
    for _ in range(regions):
        index, c = divmod(index, n)
        coords.append(c)
    return tuple(elements[c] for c in reversed(coords))


def count_bruteforce(
    diagram, flat, virt=None, budget=DEFAULT_BRUTE_BUDGET, collect_cap=0
):
    """Exhaustive count, checking every crossing with the bracket directly.

    Independent of the affine path by construction.  ``collect_cap`` > 0 also
    gathers the first colorings (lexicographic), up to one past the cap so
    callers can detect overflow.
    """
    _check_pair(diagram, flat, virt, require_compatible=False)
    n = flat.order
    regions = diagram.num_regions
    if n**regions > budget:
        raise BudgetExceededError(
            f"{n}**{regions} assignments exceed the brute-force budget {budget}"
        )
    elements = list(flat.group.elements())
    if n <= 64 and regions <= 16:
        cube_flat = table_from_canonical(flat).cube
        cube_virt = table_from_canonical(virt).cube if virt is not None else None
        encoded = []
        for crossing in diagram.crossings:
            encoded.append(1 if crossing.kind == "virtual" else 0)
            encoded.extend(crossing.corners)
        count, indices = _kernels.count_colorings(
            n, regions, encoded, cube_flat, cube_virt, collect_cap
        )
        colorings = None
        if collect_cap:
            colorings = tuple(
                _assignment_from_index(i, n, regions, elements) for i in indices
            )
        return ColoringReport(count, colorings, "brute")

    # coordinate fallback for carriers too large to tabulate
    count = 0
    collected = []
    keep = collect_cap + 1 if collect_cap else 0
    for assignment in itertools.product(elements, repeat=regions):
        good = True
        for crossing in diagram.crossings:
            struct = virt if crossing.kind == "virtual" else flat
            c0, c1, c2, c3 = crossing.corners
            if kt_eval(struct, assignment[c1], assignment[c2], assignment[c3]) != assignment[c0]:
                good = False
                break
        if good:
            count += 1
            if len(collected) < keep:
                collected.append(assignment)
    return ColoringReport(count, tuple(collected) if collect_cap else None, "brute")


def enumerate_colorings(diagram, flat, virt=None, cap=4096, budget=DEFAULT_BRUTE_BUDGET):
    """All satisfying assignments in lexicographic order; count must fit cap."""
    report = count_bruteforce(diagram, flat, virt, budget=budget, collect_cap=cap)
    if report.count > cap:
        raise BudgetExceededError(
            f"{report.count} colorings exceed the enumeration cap {cap}"
        )
    return list(report.colorings)


def coloring_group(diagram, flat, cap=64, budget=DEFAULT_BRUTE_BUDGET):
    """Canonical form of the induced structure on a flat-only diagram's colorings.

    The bracket acts region-wise; entropicity of knot-theoretic structures
    guarantees closure, which is still verified triple by triple.
    """
    if any(c.kind == "virtual" for c in diagram.crossings):
        raise ValueError("coloring group is defined for flat-only diagrams")
    colorings = enumerate_colorings(diagram, flat, cap=cap, budget=budget)
    if not colorings:
        raise ValueError(f"diagram {diagram.name!r} has no colorings; no structure")
    size = len(colorings)
    n = flat.order
    cube = [0] * size**3
    pos = 0
    if n <= 64:
        # bracket the colorings region-wise over element indices, with each
        # coloring packed into one integer for the membership lookups
        index_of = flat.group.index_of
        coded = [tuple(index_of(e) for e in coloring) for coloring in colorings]
        where = {}
        for i, c in enumerate(coded):
            key = 0
            for v in c:
                key = key * n + v
            where[key] = i
        op = table_from_canonical(flat).cube
        for f in coded:
            rows = [(fx * n) * n for fx in f]
            for g in coded:
                leads = [(row + gx * n) for row, gx in zip(rows, g)]
                for h in coded:
                    key = 0
                    for lead, hx in zip(leads, h):
                        key = key * n + op[lead + hx]
                    spot = where.get(key)
                    if spot is None:
                        raise RuntimeError(
                            "internal error: region-wise bracket left the coloring set"
                        )
                    cube[pos] = spot
                    pos += 1
    else:
        where = {c: i for i, c in enumerate(colorings)}
        for f in colorings:
            for g in colorings:
                for h in colorings:
                    combined = tuple(
                        kt_eval(flat, fx, gx, hx) for fx, gx, hx in zip(f, g, h)
                    )
                    spot = where.get(combined)
                    if spot is None:
                        raise RuntimeError(
                            "internal error: region-wise bracket left the coloring set"
                        )
                    cube[pos] = spot
                    pos += 1
    from ktgroups.ternary import TernaryTable

    table = TernaryTable(size, cube, labels=tuple(colorings))
    struct, _relabel = canonicalize(table)
    return struct


def order4_catalog():
    """The standard order-4 structures in published listing order."""
    from ktgroups.ternary import parse_kt_spec

    return (
        parse_kt_spec("Z4@0"),
        parse_kt_spec("Z4@2"),
        parse_kt_spec("Z2xZ2@(0,0)"),
        parse_kt_spec("Z2xZ2@(1,1)"),
    )


def invariant_vector(diagram, catalog):
    """Coloring counts over a catalog of (flat, virt-or-None) pairs."""
    counts = []
    for entry in catalog:
        if isinstance(entry, CanonicalKT):
            flat, virt = entry, None
        else:
            flat, virt = entry
        system = compile_system(diagram, flat, virt)
        counts.append(count_affine(system).count)
    return counts
