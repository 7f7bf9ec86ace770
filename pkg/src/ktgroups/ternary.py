"""Ternary groupoids and knot-theoretic ternary groups.

Two representations live here: the canonical form (an abelian group together
with a translation of order at most two, bracket x - y + z + a) and explicit
Cayley cubes for arbitrary ternary operations.  On top of them sit the
identity checker, property reports, retracts, the derived Mal'cev operation,
canonicalization of cubes, isomorphism testing, and the compatibility check
for flat/virtual operation pairs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from ktgroups import _kernels, _pykernels
from ktgroups.abelian import (
    AbelianGroup,
    GroupElement,
    abelian_group_from_table,
    automorphism_moving,
    normalized_with_embedding,
    parse_user_factors,
    pinned_automorphism_search,
)
from ktgroups.errors import (
    BudgetExceededError,
    GroupMismatchError,
    NotKnotTheoreticError,
    NotTernaryGroupError,
    SkewUndefinedError,
    SpecError,
)
from ktgroups.terms import (
    CATALOG,
    FAMILY_NVARS,
    FAMILY_USES_SKEW,
    Identity,
    compile_term,
    uses_skew,
)

DEFAULT_TABLE_BOUND = 64
DEFAULT_TUPLE_BUDGET = 10**7
DEFAULT_ENTROPIC_BUDGET = 10**7
DEFAULT_SAMPLES = 10**5

PROPERTY_ORDER = (
    "quasigroup",
    "associative",
    "ternary_group",
    "knot_theoretic",
    "semicommutative",
    "entropic",
    "idempotent",
    "commutative",
    "malcev",
    "eq23",
    "all_elements_neutral",
    "derived_from_binary_group",
)


@dataclass(frozen=True)
class CanonicalKT:
    """T((A,+), a): bracket [xyz] = x - y + z + a, skew x + a, with 2a = 0."""

    group: AbelianGroup
    a: GroupElement

    def __post_init__(self):
        if self.a.group != self.group:
            raise GroupMismatchError("translation does not belong to the group")
        if self.a.order() > 2:
            raise ValueError(
                f"translation {self.a} has order {self.a.order()} > 2; "
                "no knot-theoretic structure exists for it"
            )

    @property
    def order(self):
        return self.group.order

    def spec(self):
        return f"{self.group}@{self.a}"


def kt_make(group, a):
    return CanonicalKT(group, a)


def kt_eval(struct, x, y, z):
    """The bracket [x y z] = x - y + z + a."""
    for v in (x, y, z):
        if v.group != struct.group:
            raise GroupMismatchError("argument outside the structure's group")
    return x - y + z + struct.a


def kt_skew(struct, x):
    if x.group != struct.group:
        raise GroupMismatchError("argument outside the structure's group")
    return x + struct.a


class TernaryTable:
    """Explicit ternary operation on carrier {0, ..., n-1}.

    ``cube`` is flat, entry (i*n + j)*n + k.  External labels, when the
    carrier stands for something else, ride along in ``labels`` and are
    ignored by comparisons.
    """

    __slots__ = ("n", "cube", "labels", "_skew")

    def __init__(self, n, cube, labels=None):
        cube = tuple(cube)
        if n < 1:
            raise ValueError("carrier must be nonempty")
        if len(cube) != n**3:
            raise ValueError(f"cube must have {n**3} entries, got {len(cube)}")
        for v in cube:
            if not 0 <= v < n:
                raise ValueError(f"cube entry {v} out of range")
        self.n = n
        self.cube = cube
        self.labels = labels
        self._skew = None

    @classmethod
    def from_function(cls, n, fn, labels=None):
        cube = [0] * n**3
        pos = 0
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    cube[pos] = fn(i, j, k)
                    pos += 1
        return cls(n, cube, labels)

    def value(self, i, j, k):
        return self.cube[(i * self.n + j) * self.n + k]

    def skew_vector(self):
        """Skew of every element, computed once and cached."""
        if self._skew is None:
            self._skew = tuple(table_skew(self, x) for x in range(self.n))
        return self._skew

    def __eq__(self, other):
        return (
            isinstance(other, TernaryTable)
            and self.n == other.n
            and self.cube == other.cube
        )

    def __hash__(self):
        return hash((self.n, self.cube))

    def __repr__(self):
        return f"TernaryTable(n={self.n})"


def table_skew(table, x):
    """The unique z with [x z x] = x; errors when not unique."""
    n = table.n
    solutions = [z for z in range(n) if table.value(x, z, x) == x]
    if len(solutions) != 1:
        raise SkewUndefinedError(
            f"[{x} z {x}] = {x} has {len(solutions)} solutions; "
            "input is not a ternary quasigroup"
        )
    return solutions[0]


@lru_cache(maxsize=256)
def _canonical_table(struct, bound):
    n = struct.order
    if n > bound:
        raise BudgetExceededError(
            f"group of order {n} exceeds the table bound {bound}"
        )
    elements = list(struct.group.elements())
    index = {e: i for i, e in enumerate(elements)}
    a = struct.a
    cube = [0] * n**3
    pos = 0
    for x in elements:
        for y in elements:
            base = x - y + a
            for z in elements:
                cube[pos] = index[base + z]
                pos += 1
    table = TernaryTable(n, cube, labels=tuple(elements))
    table._skew = tuple(index[e + a] for e in elements)
    return table


def table_from_canonical(struct, bound=DEFAULT_TABLE_BOUND):
    """Tabulate the canonical bracket under lexicographic element order."""
    return _canonical_table(struct, bound)


def as_table(struct, bound=DEFAULT_TABLE_BOUND):
    if isinstance(struct, TernaryTable):
        return struct
    return table_from_canonical(struct, bound)


def eval_term(struct, term, env):
    """Structural evaluation; env values are ints for tables, elements otherwise."""
    if isinstance(struct, TernaryTable):
        prog = compile_term(term)
        skew = struct.skew_vector() if uses_skew(term) else None
        return _kernels.eval_program(prog, env, struct.n, struct.cube, skew)
    from ktgroups.terms import Bracket, Skew, Var

    if isinstance(term, Var):
        return env[term.index]
    if isinstance(term, Skew):
        return kt_skew(struct, eval_term(struct, term.x, env))
    if isinstance(term, Bracket):
        return kt_eval(
            struct,
            eval_term(struct, term.x, env),
            eval_term(struct, term.y, env),
            eval_term(struct, term.z, env),
        )
    raise TypeError(f"not a term: {term!r}")


@dataclass
class IdentityReport:
    name: str
    holds: bool
    counterexample: tuple | None
    sampled: bool
    failed_member: str | None = None


def _resolve_family(ident):
    if isinstance(ident, str):
        if ident not in CATALOG:
            raise KeyError(f"unknown identity {ident!r}")
        return ident, CATALOG[ident]
    if isinstance(ident, Identity):
        return ident.name, (ident,)
    return ident[0].name.split(".")[0], tuple(ident)


def _decode_env(index, n, nvars):
    coords = []
    for _ in range(nvars):
        index, c = divmod(index, n)
        coords.append(c)
    return tuple(reversed(coords))


def check_identity(
    struct,
    ident,
    mode="exhaustive",
    budget=DEFAULT_TUPLE_BUDGET,
    samples=DEFAULT_SAMPLES,
    seed=0,
    table_bound=DEFAULT_TABLE_BOUND,
):
    """Check an identity (or family) on a structure.

    ``mode`` is "exhaustive", "sampled", or "auto" (exhaustive when the
    assignment space fits the budget, sampled otherwise).  Exhaustive scans
    report the lexicographically smallest counterexample.
    """
    name, family = _resolve_family(ident)
    nvars = max(m.nvars for m in family)
    needs_skew = any(uses_skew(m.lhs) or uses_skew(m.rhs) for m in family)

    if isinstance(struct, TernaryTable):
        table = struct
    elif struct.order <= table_bound:
        table = table_from_canonical(struct, table_bound)
    else:
        table = None
    n = table.n if table is not None else struct.order

    if mode == "auto":
        mode = "exhaustive" if n**nvars <= budget else "sampled"
    if mode == "exhaustive" and n**nvars > budget:
        raise BudgetExceededError(
            f"{n}**{nvars} assignments exceed the exhaustive budget {budget}"
        )

    if table is not None:
        skew = table.skew_vector() if needs_skew else None
        programs = [
            (m.name, compile_term(m.lhs), compile_term(m.rhs)) for m in family
        ]
        if mode == "exhaustive":
            best = None
            for member_name, prog_l, prog_r in programs:
                hit = _kernels.scan_pair(n, nvars, prog_l, prog_r, table.cube, skew)
                if hit >= 0 and (best is None or hit < best[0]):
                    best = (hit, member_name)
            if best is None:
                return IdentityReport(name, True, None, False)
            env = _decode_env(best[0], n, nvars)
            if not isinstance(struct, TernaryTable):
                env = tuple(struct.group.element_at(i) for i in env)
            return IdentityReport(name, False, env, False, best[1])
        rng = random.Random(seed)
        envs = [tuple(rng.randrange(n) for _ in range(nvars)) for _ in range(samples)]
        cols = [list(col) for col in zip(*envs)] if envs else []
        first_bad = None
        for member_name, prog_l, prog_r in programs:
            left = _pykernels._eval_columns(prog_l, cols, n, table.cube, skew, None, None)
            right = _pykernels._eval_columns(prog_r, cols, n, table.cube, skew, None, None)
            if left != right:
                at = next(i for i, (lv, rv) in enumerate(zip(left, right)) if lv != rv)
                if first_bad is None or at < first_bad[0]:
                    first_bad = (at, member_name)
        if first_bad is None:
            return IdentityReport(name, True, None, True)
        env = envs[first_bad[0]]
        if not isinstance(struct, TernaryTable):
            env = tuple(struct.group.element_at(i) for i in env)
        return IdentityReport(name, False, env, True, first_bad[1])

    # large canonical structure: evaluate on coordinates
    if mode == "exhaustive":
        order = struct.order
        for idx in range(order**nvars):
            env = tuple(
                struct.group.element_at(i) for i in _decode_env(idx, order, nvars)
            )
            for member in family:
                if eval_term(struct, member.lhs, env) != eval_term(struct, member.rhs, env):
                    return IdentityReport(name, False, env, False, member.name)
        return IdentityReport(name, True, None, False)
    rng = random.Random(seed)
    for _ in range(samples):
        env = tuple(
            struct.group.element_at(rng.randrange(struct.order)) for _ in range(nvars)
        )
        for member in family:
            if eval_term(struct, member.lhs, env) != eval_term(struct, member.rhs, env):
                return IdentityReport(name, False, env, True, member.name)
    return IdentityReport(name, True, None, True)


def check_quasigroup(table):
    """True iff all three translation equations are uniquely solvable."""
    return _kernels.quasigroup_check(table.n, table.cube)


@dataclass
class PropertyReport:
    n: int
    flags: dict
    sampled: frozenset

    def __getitem__(self, key):
        return self.flags[key]


def property_report(
    struct,
    budget=DEFAULT_TUPLE_BUDGET,
    entropic_budget=DEFAULT_ENTROPIC_BUDGET,
    samples=DEFAULT_SAMPLES,
    seed=0,
    table_bound=DEFAULT_TABLE_BOUND,
):
    """Named property flags for a structure, with sampled checks marked."""
    table = as_table(struct, table_bound)
    n = table.n
    try:
        table.skew_vector()
        have_skew = True
    except SkewUndefinedError:
        have_skew = False

    sampled = set()

    def run(key, flag_name):
        if FAMILY_USES_SKEW[key] and not have_skew:
            return False
        limit = entropic_budget if key == "entropic" else budget
        mode = "exhaustive" if n ** FAMILY_NVARS[key] <= limit else "sampled"
        rep = check_identity(
            table, key, mode=mode, budget=limit, samples=samples, seed=seed
        )
        if rep.sampled:
            sampled.add(flag_name)
        return rep.holds

    flags = {}
    flags["quasigroup"] = check_quasigroup(table)
    a12 = run("assoc12", "associative")
    a23 = run("assoc23", "associative")
    flags["associative"] = a12 and a23
    flags["ternary_group"] = flags["quasigroup"] and flags["associative"]
    a3l = run("A3L", "knot_theoretic")
    a3r = run("A3R", "knot_theoretic")
    flags["knot_theoretic"] = flags["ternary_group"] and a3l and a3r
    flags["semicommutative"] = run("semicommutative", "semicommutative")
    flags["entropic"] = run("entropic", "entropic")
    flags["idempotent"] = run("idempotent", "idempotent")
    flags["commutative"] = run("commutative", "commutative")
    flags["malcev"] = run("malcev", "malcev")
    flags["eq23"] = run("eq23", "eq23")
    flags["all_elements_neutral"] = run("all_neutral", "all_elements_neutral")
    flags["derived_from_binary_group"] = (
        flags["ternary_group"] and flags["commutative"] and flags["malcev"]
    )
    if "commutative" in sampled or "malcev" in sampled:
        sampled.add("derived_from_binary_group")
    if "associative" in sampled:
        sampled.add("ternary_group")
        sampled.add("knot_theoretic")
        sampled.add("derived_from_binary_group")
    return PropertyReport(n, flags, frozenset(sampled))


def _require_ternary_group(table, budget=DEFAULT_TUPLE_BUDGET):
    if not check_quasigroup(table):
        raise NotTernaryGroupError("table is not a ternary quasigroup")
    n = table.n
    if n**5 <= budget:
        for key in ("assoc12", "assoc23"):
            rep = check_identity(table, key, mode="exhaustive", budget=budget)
            if not rep.holds:
                raise NotTernaryGroupError(
                    f"associativity fails at {rep.counterexample}"
                )


@dataclass
class Retract:
    """Binary retract x*y = [x b y] over carrier indices."""

    n: int
    at: int
    table: tuple
    neutral: int
    inverse: tuple
    values: tuple


def retract(struct, b, table_bound=DEFAULT_TABLE_BOUND):
    """The retract group at b, with neutral and inverses filled in.

    For semi-commutative ternary groups this is an abelian group with
    neutral skew(b) and the inverse of x the skew of [b x b].
    """
    table = as_table(struct, table_bound)
    _require_ternary_group(table)
    if isinstance(struct, TernaryTable):
        b_index = b
        values = tuple(range(table.n))
    else:
        b_index = struct.group.index_of(b)
        values = table.labels
    n = table.n
    skew = table.skew_vector()
    op = tuple(
        tuple(table.value(x, b_index, y) for y in range(n)) for x in range(n)
    )
    neutral = skew[b_index]
    inverse = tuple(skew[table.value(b_index, x, b_index)] for x in range(n))
    return Retract(n, b_index, op, neutral, inverse, values)


def derived_malcev(struct, table_bound=DEFAULT_TABLE_BOUND):
    """The derived Mal'cev operation P(x, y, z) = [x skew(y) z], as a table."""
    table = as_table(struct, table_bound)
    skew = table.skew_vector()
    n = table.n
    out = TernaryTable.from_function(
        n, lambda i, j, k: table.value(i, skew[j], k), labels=table.labels
    )
    return out


def canonicalize(table, table_bound=DEFAULT_TABLE_BOUND):
    """Identify a cube as T((A,+), a); returns (structure, relabeling).

    The carrier element 0 plays the neutral role: with e = 0 and its skew
    ebar, addition is x + y = [x ebar y] and the translation is ebar.  The
    relabeling maps carrier index i to the corresponding group element, and
    the cube is verified to reproduce exactly, which certifies the input is
    knot-theoretic.
    """
    if isinstance(table, CanonicalKT):
        return table, table_from_canonical(table, table_bound).labels
    n = table.n
    if not check_quasigroup(table):
        raise NotKnotTheoreticError("table is not a ternary quasigroup")
    try:
        skew = table.skew_vector()
    except SkewUndefinedError as exc:
        raise NotKnotTheoreticError(str(exc)) from None
    ebar = skew[0]
    plus = [[table.value(x, ebar, y) for y in range(n)] for x in range(n)]
    try:
        group, coord_map = abelian_group_from_table(plus)
    except ValueError as exc:
        raise NotKnotTheoreticError(f"retract at skew(0) is not abelian: {exc}") from None
    a = coord_map[ebar]
    if a.order() > 2:
        raise NotKnotTheoreticError("translation candidate has order > 2")
    struct = CanonicalKT(group, a)
    canonical = table_from_canonical(struct, bound=max(table_bound, n)).cube
    perm = [group.index_of(e) for e in coord_map]
    cube = table.cube
    pos = 0
    for x in range(n):
        px = perm[x] * n
        for y in range(n):
            base = (px + perm[y]) * n
            for z in range(n):
                if canonical[base + perm[z]] != perm[cube[pos]]:
                    raise NotKnotTheoreticError(
                        f"cube disagrees with canonical form at ({x}, {y}, {z})"
                    )
                pos += 1
    return struct, tuple(coord_map)


@dataclass
class IsoReport:
    isomorphic: bool
    witness: tuple | None = None


def _full_automorphism_images(group, matrix):
    """Index permutation of group induced by a 2-part matrix (identity on odd part)."""
    two_idx = [i for i, q in enumerate(group.factors) if q % 2 == 0]
    mods = [group.factors[i] for i in two_idx]
    images = []
    for x in group.elements():
        part = [x.coords[i] for i in two_idx]
        new = list(x.coords)
        for row, i in enumerate(two_idx):
            new[i] = sum(matrix[row][j] * part[j] for j in range(len(mods))) % mods[row]
        images.append(group.index_of(GroupElement(group, tuple(new))))
    return images


def iso_test(first, second, method="bfs", table_bound=DEFAULT_TABLE_BOUND, seed=0):
    """Isomorphism of knot-theoretic structures, with a verified witness.

    Structures are isomorphic iff their associated groups agree and the
    translations lie in one automorphism orbit.  ``method`` picks how the
    orbit question is decided: "bfs" walks automorphism generators, "pinned"
    runs the independent backtracking search.  The witness is an index map
    from the first structure's enumeration to the second's, checked to
    preserve the bracket.
    """
    c1, relabel1 = canonicalize(first) if isinstance(first, TernaryTable) else (first, None)
    c2, relabel2 = canonicalize(second) if isinstance(second, TernaryTable) else (second, None)
    if c1.group.factors != c2.group.factors:
        return IsoReport(False)
    group = c1.group
    a1 = GroupElement(group, c1.a.coords)
    a2 = GroupElement(group, c2.a.coords)
    if method == "pinned":
        matrix = pinned_automorphism_search(group, a1, a2)
    else:
        matrix = automorphism_moving(group, a1, a2)
    if matrix is None:
        return IsoReport(False)

    images = _full_automorphism_images(group, matrix)

    if relabel1 is not None or relabel2 is not None:
        elems1 = relabel1 if relabel1 is not None else tuple(group.elements())
        elems2 = relabel2 if relabel2 is not None else tuple(group.elements())
        pos2 = {e: i for i, e in enumerate(elems2)}
        index_of = group.index_of
        at = group.element_at
        witness = tuple(pos2[at(images[index_of(e)])] for e in elems1)
        t1 = as_table(first, table_bound)
        t2 = as_table(second, table_bound)
        _verify_witness_tables(t1, t2, witness, seed)
    else:
        witness = tuple(images)
        if c1.order <= table_bound:
            _verify_witness_tables(
                as_table(c1, table_bound), as_table(c2, table_bound), witness, seed
            )
        else:
            _verify_witness_canonical(c1, c2, images, seed)
    return IsoReport(True, witness)


def _verify_witness_tables(t1, t2, witness, seed, budget=10**6, samples=DEFAULT_SAMPLES):
    n = t1.n
    if n**3 <= budget:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(samples)
        )
    for x, y, z in triples:
        if witness[t1.value(x, y, z)] != t2.value(witness[x], witness[y], witness[z]):
            raise RuntimeError("internal error: witness fails to preserve the bracket")


def _verify_witness_canonical(c1, c2, images, seed, budget=10**6, samples=DEFAULT_SAMPLES):
    n = c1.order
    at1 = c1.group.element_at
    at2 = c2.group.element_at
    idx1 = c1.group.index_of

    def h(x):
        return at2(images[idx1(x)])

    if n**3 <= budget:
        triples = itertools.product(c1.group.elements(), repeat=3)
    else:
        rng = random.Random(seed)
        triples = (
            (at1(rng.randrange(n)), at1(rng.randrange(n)), at1(rng.randrange(n)))
            for _ in range(samples)
        )
    for x, y, z in triples:
        if h(kt_eval(c1, x, y, z)) != kt_eval(c2, h(x), h(y), h(z)):
            raise RuntimeError("internal error: witness fails to preserve the bracket")


@dataclass
class CompatibilityReport:
    compatible: bool
    companion: bool
    counterexample: tuple | None
    companion_counterexample: tuple | None

    @property
    def both(self):
        return self.compatible and self.companion


# [a b <bcd>] = <a <abc> [<abc> c d]>   (flat bracket = op A, virtual = op B)
_COMPAT_LHS = (0, 1, 1, 2, 3, -3, -1)
_COMPAT_RHS = (0, 0, 1, 2, -3, 0, 1, 2, -3, 2, 3, -1, -3)
# companion law: [<abc> c d] = <[a b <bcd>] <bcd> d>
_COMPANION_LHS = (0, 1, 2, -3, 2, 3, -1)
_COMPANION_RHS = (0, 1, 1, 2, 3, -3, -1, 1, 2, 3, -3, 3, -3)


def compatible(flat, virt, table_bound=DEFAULT_TABLE_BOUND):
    """Exhaustive check of the mixed-move law and its companion.

    Both structures must be knot-theoretic on carriers of equal size; cubes
    are compared over all quadruples.
    """
    tf = as_table(flat, table_bound)
    tv = as_table(virt, table_bound)
    if tf.n != tv.n:
        raise GroupMismatchError(
            f"carrier sizes differ: {tf.n} vs {tv.n}"
        )
    for raw, tab in ((flat, tf), (virt, tv)):
        if isinstance(raw, TernaryTable):
            canonicalize(raw)  # raises NotKnotTheoreticError when it is not
    n = tf.n

    as_elements = (
        isinstance(flat, CanonicalKT)
        and isinstance(virt, CanonicalKT)
        and flat.group == virt.group
    )

    def scan(prog_l, prog_r):
        hit = _kernels.scan_pair(n, 4, prog_l, prog_r, tf.cube, None, tv.cube, None)
        if hit < 0:
            return True, None
        env = _decode_env(hit, n, 4)
        if as_elements:
            env = tuple(flat.group.element_at(i) for i in env)
        return False, env

    main_ok, main_ce = scan(_COMPAT_LHS, _COMPAT_RHS)
    comp_ok, comp_ce = scan(_COMPANION_LHS, _COMPANION_RHS)
    return CompatibilityReport(main_ok, comp_ok, main_ce, comp_ce)


# ---------------------------------------------------------------------------
# Structure spec grammar:  kt := groupspec "@" element
# element: comma-separated coordinates in parentheses, in the order the group
# factors were written; bare integer shorthand for single-factor groups.
# ---------------------------------------------------------------------------

def parse_kt_spec(text):
    """Parse specs like ``Z2xZ4@(1,0)`` or ``Z4@2`` into a CanonicalKT."""
    if "@" not in text:
        raise SpecError(f"missing '@' in structure spec {text!r}")
    group_part, _, elt_part = text.partition("@")
    moduli = parse_user_factors(group_part)
    group, slots = normalized_with_embedding(moduli)
    if elt_part.startswith("(") and elt_part.endswith(")"):
        inner = elt_part[1:-1]
        raw = inner.split(",") if inner else []
    else:
        raw = [elt_part]
        if len(moduli) != 1:
            raise SpecError(
                f"element {elt_part!r} must be a coordinate tuple for {group_part}"
            )
    if moduli == [1] and not raw:
        raw = []
    elif len(raw) != len(moduli):
        raise SpecError(
            f"expected {len(moduli)} coordinates for {group_part}, got {len(raw)}"
        )
    coords = [0] * len(group.factors)
    for user_coord, n, slot in zip(raw, moduli, slots):
        s = user_coord.strip()
        if not s.lstrip("-").isdigit():
            raise SpecError(f"bad coordinate {user_coord!r}")
        c = int(s)
        if not 0 <= c < n:
            raise SpecError(f"coordinate {c} out of range for Z{n}")
        for pos, q in slot:
            coords[pos] = c % q
    a = GroupElement(group, tuple(coords))
    try:
        return CanonicalKT(group, a)
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def format_kt_spec(struct):
    return struct.spec()


# ---------------------------------------------------------------------------
# Table file format: line 1 "ternary n", then n**3 lines "i j k v".
# ---------------------------------------------------------------------------

def parse_table_file(text):
    lines = text.splitlines()
    header = None
    entries = {}
    n = None
    for ln, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if header is None:
            if len(parts) != 2 or parts[0] != "ternary" or not parts[1].isdigit():
                raise SpecError("expected header 'ternary <n>'", line=ln)
            n = int(parts[1])
            if n < 1:
                raise SpecError("carrier size must be >= 1", line=ln)
            header = ln
            continue
        if len(parts) != 4:
            raise SpecError("expected 'i j k v'", line=ln)
        try:
            i, j, k, v = (int(p) for p in parts)
        except ValueError:
            raise SpecError(f"non-integer entry in {body!r}", line=ln) from None
        for c in (i, j, k, v):
            if not 0 <= c < n:
                raise SpecError(f"index {c} out of range 0..{n - 1}", line=ln)
        key = (i, j, k)
        if key in entries:
            raise SpecError(f"duplicate entry for {key}", line=ln)
        entries[key] = v
    if header is None:
        raise SpecError("empty table file")
    if len(entries) != n**3:
        raise SpecError(f"expected {n**3} entries, got {len(entries)}")
    cube = [0] * n**3
    for (i, j, k), v in entries.items():
        cube[(i * n + j) * n + k] = v
    return TernaryTable(n, cube)


def format_table_file(table):
    n = table.n
    out = [f"ternary {n}"]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out.append(f"{i} {j} {k} {table.value(i, j, k)}")
    return "\n".join(out) + "\n"
