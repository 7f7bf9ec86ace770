import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktgroups.classify import enumerate_kt
from ktgroups.coloring import (
    coloring_group,
    compile_system,
    count_affine,
    count_bruteforce,
    enumerate_colorings,
    invariant_vector,
    order4_catalog,
)
from ktgroups.diagram import Crossing, Diagram, builtin
from ktgroups.errors import (
    BudgetExceededError,
    GroupMismatchError,
    IncompatiblePairError,
)
from ktgroups.ternary import iso_test, kt_eval, parse_kt_spec

Z2_0 = parse_kt_spec("Z2@0")
Z2_1 = parse_kt_spec("Z2@1")


def kt_structures(max_order):
    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_kt(n).representatives)
    return out


# --- system compilation ------------------------------------------------------


def test_compile_kishino_rows_collapse():
    s = parse_kt_spec("Z4@2")
    sys = compile_system(builtin("kishino"), s)
    assert sys.matrix.entries == ((1, -1), (1, -1), (1, -1), (1, -1))
    assert all(e == s.a for e in sys.rhs)


def test_compile_unlink2_empty():
    sys = compile_system(builtin("unlink2"), Z2_0, Z2_1)
    assert sys.matrix.rows == 0
    assert sys.rhs == ()


def test_compile_hopf_rows_and_rhs():
    sys = compile_system(builtin("hopf_fv"), Z2_0, Z2_1)
    assert sys.matrix.entries == ((1, -1, 1, -1), (1, -1, 1, -1))
    assert sys.rhs == (Z2_0.a, Z2_1.a)


def test_compile_requires_virtual_operation():
    with pytest.raises(ValueError, match="virtual"):
        compile_system(builtin("hopf_fv"), Z2_0)


def test_compile_rejects_carrier_mismatch():
    with pytest.raises(GroupMismatchError):
        compile_system(builtin("hopf_fv"), Z2_0, parse_kt_spec("Z4@2"))


def test_compile_rejects_incompatible_pair():
    flat = parse_kt_spec("Z4@2")
    virt = parse_kt_spec("Z2xZ2@(1,1)")
    with pytest.raises((IncompatiblePairError, GroupMismatchError)):
        compile_system(builtin("hopf_fv"), flat, virt)


# --- counting ---------------------------------------------------------------


def test_paper_counts_hopf_and_unlink():
    assert count_bruteforce(builtin("hopf_fv"), Z2_0, Z2_1).count == 0
    assert count_affine(compile_system(builtin("hopf_fv"), Z2_0, Z2_1)).count == 0
    assert count_bruteforce(builtin("unlink2"), Z2_0, Z2_1).count == 8
    assert count_affine(compile_system(builtin("unlink2"), Z2_0, Z2_1)).count == 8


def test_kishino_counts_order_and_loop_squares():
    for s in kt_structures(8):
        assert count_affine(compile_system(builtin("kishino"), s)).count == s.order
        assert count_affine(compile_system(builtin("loop2"), s)).count == s.order**2
        assert count_bruteforce(builtin("kishino"), s).count == s.order


def test_crossingless_counts_are_powers():
    for s in kt_structures(6):
        for regions in (1, 2, 3, 4):
            d = Diagram("free", regions, ())
            assert count_bruteforce(d, s).count == s.order**regions
            assert count_affine(compile_system(d, s)).count == s.order**regions


def test_brute_budget():
    d = Diagram("big", 9, ())
    with pytest.raises(BudgetExceededError):
        count_bruteforce(d, parse_kt_spec("Z8@0"), budget=10**7)


def test_brute_coordinate_fallback_matches_kernel():
    # order 128 exceeds the table bound, triggering the coordinate path
    s = parse_kt_spec("Z128@64")
    d = Diagram("pair", 2, (Crossing("flat", (0, 1, 1, 1)),))
    assert count_bruteforce(d, s).count == 128
    small = parse_kt_spec("Z8@4")
    d2 = Diagram("pair", 2, (Crossing("flat", (0, 1, 1, 1)),))
    assert count_bruteforce(d2, small).count == 8


# --- enumeration ---------------------------------------------------------------


def test_enumerate_unlink2_all_assignments():
    got = enumerate_colorings(builtin("unlink2"), Z2_1, cap=16)
    assert len(got) == 8
    coords = [tuple(e.coords[0] for e in c) for c in got]
    assert coords == sorted(coords)


def test_enumerate_hopf_empty():
    assert enumerate_colorings(builtin("hopf_fv"), Z2_0, Z2_1, cap=16) == []


def test_enumerate_kishino_z2():
    got = enumerate_colorings(builtin("kishino"), Z2_0, cap=16)
    assert [tuple(e.coords[0] for e in c) for c in got] == [(0, 0), (1, 1)]


def test_enumerate_cap_enforced():
    with pytest.raises(BudgetExceededError):
        enumerate_colorings(builtin("unlink2"), Z2_1, cap=3)


def test_enumerated_colorings_satisfy_relations():
    s = parse_kt_spec("Z2xZ2@(1,1)")
    d = builtin("kishino")
    for coloring in enumerate_colorings(d, s, cap=8):
        for crossing in d.crossings:
            c0, c1, c2, c3 = crossing.corners
            assert kt_eval(s, coloring[c1], coloring[c2], coloring[c3]) == coloring[c0]


# --- the induced structure on colorings -------------------------------------------


def test_coloring_group_loop2_direct_square():
    struct = coloring_group(builtin("loop2"), Z2_1)
    assert iso_test(struct, parse_kt_spec("Z2xZ2@(1,1)")).isomorphic


def test_coloring_group_kishino_order_two():
    struct = coloring_group(builtin("kishino"), Z2_0)
    assert struct.order == 2
    assert iso_test(struct, Z2_0).isomorphic


def test_coloring_group_unlink2_order_eight():
    struct = coloring_group(builtin("unlink2"), Z2_1)
    assert struct.order == 8
    assert iso_test(struct, parse_kt_spec("Z2xZ2xZ2@(1,1,1)")).isomorphic


def test_coloring_group_rejects_virtual_diagrams():
    with pytest.raises(ValueError):
        coloring_group(builtin("hopf_fv"), Z2_0)


def test_coloring_group_rejects_empty_set():
    # a flat kink on one region: f(0) = [f(0) f(0) f(0)] forces a = 0
    d = Diagram("kink", 1, (Crossing("flat", (0, 0, 0, 0)),))
    with pytest.raises(ValueError, match="no colorings"):
        coloring_group(d, Z2_1)
    assert coloring_group(d, Z2_0).order == 2


# --- invariant vectors --------------------------------------------------------------


def test_invariant_vector_order4_catalog():
    catalog = order4_catalog()
    assert [s.spec() for s in catalog] == ["Z4@0", "Z4@2", "Z2xZ2@(0,0)", "Z2xZ2@(1,1)"]
    assert invariant_vector(builtin("kishino"), catalog) == [4, 4, 4, 4]
    assert invariant_vector(builtin("loop2"), catalog) == [16, 16, 16, 16]


def test_invariant_vector_order2_catalog_unlink():
    assert invariant_vector(builtin("unlink2"), [Z2_0, Z2_1]) == [8, 8]


def test_invariant_vector_accepts_pairs():
    got = invariant_vector(builtin("hopf_fv"), [(Z2_0, Z2_1), (Z2_1, Z2_1)])
    assert got == [0, 8]


# --- oracle agreement ----------------------------------------------------------------


def test_disjoint_union_multiplies_counts():
    rng = random.Random(5150)
    structs = kt_structures(4)
    for trial in range(20):
        regions1 = rng.randint(1, 3)
        regions2 = rng.randint(1, 3)
        crossings1 = tuple(
            Crossing(rng.choice(("flat", "virtual")), tuple(rng.randrange(regions1) for _ in range(4)))
            for _ in range(rng.randint(0, 3))
        )
        crossings2 = tuple(
            Crossing(rng.choice(("flat", "virtual")), tuple(rng.randrange(regions2) for _ in range(4)))
            for _ in range(rng.randint(0, 3))
        )
        d1 = Diagram("a", regions1, crossings1)
        d2 = Diagram("b", regions2, crossings2)
        shifted = tuple(
            Crossing(c.kind, tuple(x + regions1 for x in c.corners)) for c in crossings2
        )
        union = Diagram("a+b", regions1 + regions2, crossings1 + shifted)
        flat = structs[rng.randrange(len(structs))]
        virt_pool = [s for s in structs if s.group == flat.group]
        virt = virt_pool[rng.randrange(len(virt_pool))]
        c1 = count_bruteforce(d1, flat, virt).count
        c2 = count_bruteforce(d2, flat, virt).count
        cu = count_bruteforce(union, flat, virt).count
        assert cu == c1 * c2
        assert count_affine(compile_system(union, flat, virt, require_compatible=False)).count == cu


def test_affine_equals_brute_sample():
    rng = random.Random(321)
    structs = kt_structures(8)
    pairs = [(s, t) for s in structs for t in structs if s.group == t.group]
    for i in range(25):
        regions = rng.randint(1, 6)
        crossings = tuple(
            Crossing(rng.choice(("flat", "virtual")), tuple(rng.randrange(regions) for _ in range(4)))
            for _ in range(rng.randint(0, 6))
        )
        d = Diagram(f"rand{i}", regions, crossings)
        flat, virt = pairs[rng.randrange(len(pairs))]
        brute = count_bruteforce(d, flat, virt).count
        affine = count_affine(compile_system(d, flat, virt, require_compatible=False)).count
        assert brute == affine, (d, flat.spec(), virt.spec())


_PAIRS = [
    (s, t)
    for s in kt_structures(6)
    for t in kt_structures(6)
    if s.group == t.group
]


@settings(max_examples=80, deadline=None)
@given(
    pair=st.sampled_from(_PAIRS),
    regions=st.integers(1, 5),
    data=st.data(),
)
def test_affine_equals_brute_hypothesis(pair, regions, data):
    flat, virt = pair
    crossings = data.draw(
        st.lists(
            st.tuples(
                st.sampled_from(("flat", "virtual")),
                st.tuples(*([st.integers(0, regions - 1)] * 4)),
            ),
            max_size=5,
        )
    )
    diagram = Diagram("hyp", regions, tuple(Crossing(k, c) for k, c in crossings))
    brute = count_bruteforce(diagram, flat, virt).count
    affine = count_affine(compile_system(diagram, flat, virt, require_compatible=False)).count
    assert brute == affine
