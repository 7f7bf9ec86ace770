"""Exact arithmetic for finite abelian groups.

Groups are kept in primary decomposition: an ordered tuple of prime powers,
sorted by prime and then by descending exponent.  Two groups are isomorphic
exactly when their factor tuples are equal, which makes isomorphism testing
and classification a matter of list comparison.  Elements are coordinate
tuples, one residue per factor.  Everything is exact integer arithmetic;
no floats appear anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod

from ktgroups.errors import GroupMismatchError, SpecError

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "IntMatrix",
    "add",
    "negate",
    "zero",
    "element_order",
    "two_torsion",
    "invariant_factors",
    "smith_normal_form",
    "aut_orbits_on_two_torsion",
    "automorphism_moving",
    "pinned_automorphism_search",
    "parse_group_spec",
    "abelian_group_from_table",
]


def factorize(n):
    """Prime factorization as a list of (prime, exponent), primes ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class AbelianGroup:
    """A finite abelian group in canonical primary decomposition.

    ``factors`` is a tuple of prime powers >= 2, sorted by prime and then by
    descending exponent; the trivial group has an empty tuple.
    """

    factors: tuple

    def __post_init__(self):
        facs = tuple(self.factors)
        object.__setattr__(self, "factors", facs)
        prev = None
        for q in facs:
            fac = factorize(q)
            if len(fac) != 1:
                raise ValueError(f"factor {q} is not a prime power")
            p, e = fac[0]
            if prev is not None and (p, -e) < prev:
                raise ValueError("factors not in canonical order")
            prev = (p, -e)

    @classmethod
    def from_cyclic_orders(cls, orders):
        """Build the canonical group isomorphic to the direct product of Z_n's."""
        group, _ = normalized_with_embedding(orders)
        return group

    @property
    def order(self):
        return prod(self.factors)

    def __str__(self):
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{q}" for q in self.factors)

    def zero(self):
        return GroupElement(self, (0,) * len(self.factors))

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != len(self.factors):
            raise ValueError(
                f"expected {len(self.factors)} coordinates, got {len(coords)}"
            )
        for c, q in zip(coords, self.factors):
            if not 0 <= c < q:
                raise ValueError(f"coordinate {c} out of range for Z{q}")
        return GroupElement(self, coords)

    def elements(self):
        """All elements in lexicographic coordinate order."""
        for coords in itertools.product(*(range(q) for q in self.factors)):
            yield GroupElement(self, coords)

    def element_at(self, index):
        """Element with the given lexicographic rank."""
        coords = []
        for q in reversed(self.factors):
            index, c = divmod(index, q)
            coords.append(c)
        return GroupElement(self, tuple(reversed(coords)))

    def index_of(self, x):
        idx = 0
        for c, q in zip(x.coords, self.factors):
            idx = idx * q + c
        return idx


@dataclass(frozen=True, order=True)
class GroupElement:
    group: AbelianGroup
    coords: tuple

    def __add__(self, other):
        self._check(other)
        return GroupElement(
            self.group,
            tuple((a + b) % q for a, b, q in zip(self.coords, other.coords, self.group.factors)),
        )

    def __sub__(self, other):
        self._check(other)
        return GroupElement(
            self.group,
            tuple((a - b) % q for a, b, q in zip(self.coords, other.coords, self.group.factors)),
        )

    def __neg__(self):
        return GroupElement(
            self.group, tuple((-a) % q for a, q in zip(self.coords, self.group.factors))
        )

    def __rmul__(self, k):
        return GroupElement(
            self.group, tuple((k * a) % q for a, q in zip(self.coords, self.group.factors))
        )

    def order(self):
        m = 1
        for c, q in zip(self.coords, self.group.factors):
            m = _lcm(m, q // gcd(q, c))
        return m

    def _check(self, other):
        if self.group != other.group:
            raise GroupMismatchError(
                f"elements of {self.group} and {other.group} cannot be combined"
            )

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def add(x, y):
    return x + y


def negate(x):
    return -x


def zero(group):
    return group.zero()


def element_order(x):
    """Least m >= 1 with m*x = 0."""
    return x.order()


def two_torsion(group):
    """All x with x + x = 0, in lexicographic order.

    There are 2**k of them, where k is the number of even factors.
    """
    choices = []
    for q in group.factors:
        choices.append((0, q // 2) if q % 2 == 0 else (0,))
    return [GroupElement(group, coords) for coords in itertools.product(*choices)]


def invariant_factors(group):
    """Divisibility chain d1 | d2 | ... with product |G|; equal chains <=> isomorphic."""
    by_prime = {}
    for q in group.factors:
        ((p, _e),) = factorize(q)
        by_prime.setdefault(p, []).append(q)
    width = max((len(v) for v in by_prime.values()), default=0)
    chain = []
    for slot in range(width):
        d = 1
        for p in sorted(by_prime):
            qs = by_prime[p]
            if slot < len(qs):
                d *= qs[slot]  # qs already descending
        chain.append(d)
    chain.reverse()
    return chain


# ---------------------------------------------------------------------------
# Group-spec grammar:  group := "Z" int | group "x" group
# "Z1" is only valid on its own; every other modulus must be >= 2.
# ---------------------------------------------------------------------------

def parse_user_factors(text):
    """Parse a group spec into the user's cyclic moduli, unnormalized."""
    if not text:
        raise SpecError("empty group spec")
    parts = text.split("x")
    moduli = []
    col = 1
    for part in parts:
        if not part.startswith("Z") or not part[1:].isdigit():
            raise SpecError(f"bad group factor {part!r}", column=col)
        n = int(part[1:])
        if n < 1:
            raise SpecError(f"bad modulus {n} in {part!r}", column=col)
        moduli.append(n)
        col += len(part) + 1
    if 1 in moduli and moduli != [1]:
        raise SpecError('"Z1" cannot be combined with other factors')
    return moduli


def normalized_with_embedding(moduli):
    """Normalize cyclic moduli to primary decomposition.

    Returns ``(group, slots)`` where ``slots[i]`` lists, for user factor i,
    the positions in the normalized coordinate vector carrying its CRT
    components.  User coordinate c for factor i maps to ``c % q`` at each of
    those positions.
    """
    pieces = []  # (prime, -exponent, arrival, q, user_index)
    arrival = 0
    for ui, n in enumerate(moduli):
        if n == 1:
            continue
        for p, e in factorize(n):
            pieces.append((p, -e, arrival, p**e, ui))
            arrival += 1
    pieces.sort(key=lambda t: (t[0], t[1], t[2]))
    factors = tuple(t[3] for t in pieces)
    slots = [[] for _ in moduli]
    for pos, (_p, _me, _arr, q, ui) in enumerate(pieces):
        slots[ui].append((pos, q))
    return AbelianGroup(factors), slots


def parse_group_spec(text):
    """Parse and normalize a group spec.

    >>> parse_group_spec("Z4xZ2").factors
    (4, 2)
    >>> parse_group_spec("Z6").factors
    (2, 3)
    >>> parse_group_spec("Z1").factors
    ()
    """
    group, _ = normalized_with_embedding(parse_user_factors(text))
    return group


# ---------------------------------------------------------------------------
# Exact integer matrices and Smith normal form.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if rows:
            w = len(rows[0])
            for r in rows:
                if len(r) != w:
                    raise ValueError("ragged matrix")
                for v in r:
                    if not isinstance(v, int) or isinstance(v, bool):
                        raise ValueError(f"non-integer entry {v!r}")

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = list(zip(*other.entries)) if other.entries else []
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                for row in self.entries
            )
        )

    def apply(self, vector):
        """Matrix times column vector of ints."""
        return [sum(a * b for a, b in zip(row, vector)) for row in self.entries]

    def det(self):
        """Exact determinant (Bareiss fraction-free elimination)."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def smith_normal_form(matrix):
    """Diagonalize an integer matrix: returns (U, S, V) with U @ M @ V = S.

    U and V are unimodular; S is diagonal with s1 | s2 | ... and nonnegative
    diagonal.  Pivoting is deterministic: smallest absolute value, row-major
    tie break.
    """
    m, n = matrix.rows, matrix.cols
    a = [list(r) for r in matrix.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_sub(i, k, q):  # row_i -= q * row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_sub(j, k, q):  # col_j -= q * col_k
        for row in a:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def pivot_from(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                val = abs(a[i][j])
                if val and (best is None or val < best[0]):
                    best = (val, i, j)
        return best

    t = 0
    while t < min(m, n):
        best = pivot_from(t)
        if best is None:
            break
        while True:
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(m):
                if i != t and a[i][t]:
                    row_sub(i, t, a[i][t] // p)
                    dirty = dirty or a[i][t] != 0
            for j in range(n):
                if j != t and a[t][j]:
                    col_sub(j, t, a[t][j] // p)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                best = pivot_from(t)
                continue
            # enforce the divisibility chain: pivot must divide the rest
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(t, offender, -1)  # add offending row, then re-reduce
            best = pivot_from(t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return (
        IntMatrix(tuple(tuple(r) for r in u)),
        IntMatrix(tuple(tuple(r) for r in a)),
        IntMatrix(tuple(tuple(r) for r in v)),
    )


# ---------------------------------------------------------------------------
# Automorphism orbits on 2-torsion.
#
# Only the 2-part of the group acts: Aut(G) splits over the primary
# decomposition, and 2-torsion elements are zero in every odd coordinate.
# Automorphisms of the 2-part Z_{2^e1} x ... x Z_{2^ek} are handled as k x k
# integer matrices (column j = image of the j-th standard generator); a matrix
# is a well-defined endomorphism iff entry (i, j) is divisible by
# 2^max(0, ei - ej).
# ---------------------------------------------------------------------------

def _two_part(group):
    idx = [i for i, q in enumerate(group.factors) if q % 2 == 0]
    mods = [group.factors[i] for i in idx]
    return idx, mods


def _apply_matrix(mat, coords, mods):
    return tuple(
        sum(mat[i][j] * coords[j] for j in range(len(coords))) % mods[i]
        for i in range(len(mods))
    )


def _compose(m2, m1, mods):
    """Matrix of (m2 after m1), reduced per row modulus."""
    k = len(mods)
    return tuple(
        tuple(sum(m2[i][t] * m1[t][j] for t in range(k)) % mods[i] for j in range(k))
        for i in range(k)
    )


def _aut2_generators(mods):
    """A finite generating set for Aut of an abelian 2-group.

    Diagonal unit multipliers (-1, and 5 when the unit group is not cyclic),
    swaps of equal-order factors, and cross-factor transvections respecting
    exponents.
    """
    k = len(mods)
    exps = [q.bit_length() - 1 for q in mods]
    ident = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    gens = []

    def modified(i, j, val):
        rows = [list(r) for r in ident]
        rows[i][j] = val % mods[i]
        return tuple(tuple(r) for r in rows)

    for i in range(k):
        if exps[i] >= 2:
            gens.append(modified(i, i, -1))
        if exps[i] >= 3:
            gens.append(modified(i, i, 5))
    for i in range(k):
        for j in range(i + 1, k):
            if mods[i] == mods[j]:
                rows = [list(r) for r in ident]
                rows[i][i] = rows[j][j] = 0
                rows[i][j] = rows[j][i] = 1
                gens.append(tuple(tuple(r) for r in rows))
    for i in range(k):
        for j in range(k):
            if i != j:
                gens.append(modified(i, j, 1 << max(0, exps[i] - exps[j])))
    return gens


def _torsion2_coords(group):
    """2-torsion elements of the 2-part, as coordinate tuples, lex order."""
    _, mods = _two_part(group)
    return [t for t in itertools.product(*((0, q // 2) for q in mods))]


def _embed_two_part(group, coords2):
    idx, _ = _two_part(group)
    full = [0] * len(group.factors)
    for pos, c in zip(idx, coords2):
        full[pos] = c
    return GroupElement(group, tuple(full))


def _project_two_part(group, x):
    idx, _ = _two_part(group)
    return tuple(x.coords[i] for i in idx)


def aut_orbits_on_two_torsion(group):
    """Partition of the 2-torsion into Aut(G)-orbits.

    Orbits are sorted by their lexicographically minimal representative,
    elements within each orbit in lexicographic order; the orbit of 0 always
    comes first.
    """
    _, mods = _two_part(group)
    torsion = _torsion2_coords(group)
    if all(q == 2 for q in mods):
        # elementary abelian fast path: Aut = GL(k, 2) is transitive on nonzero
        zero2 = torsion[0]
        orbits2 = [[zero2]]
        rest = torsion[1:]
        if rest:
            orbits2.append(rest)
    else:
        gens = _aut2_generators(mods)
        seen = {}
        orbits2 = []
        for start in torsion:
            if start in seen:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = _apply_matrix(g, x, mods)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            orbit = sorted(orbit)
            for x in orbit:
                seen[x] = True
            orbits2.append(orbit)
        orbits2.sort(key=lambda o: o[0])
    return [[_embed_two_part(group, c) for c in orbit] for orbit in orbits2]


def automorphism_moving(group, a, b):
    """BFS witness: a 2-part automorphism matrix sending a to b, or None.

    ``a`` and ``b`` must be 2-torsion elements of ``group``.
    """
    _, mods = _two_part(group)
    k = len(mods)
    src = _project_two_part(group, a)
    dst = _project_two_part(group, b)
    ident = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    if src == dst:
        return ident
    gens = _aut2_generators(mods)
    reached = {src: ident}
    frontier = [src]
    while frontier:
        next_frontier = []
        for x in frontier:
            fx = reached[x]
            for g in gens:
                y = _apply_matrix(g, x, mods)
                if y not in reached:
                    reached[y] = _compose(g, fx, mods)
                    if y == dst:
                        return reached[y]
                    next_frontier.append(y)
        frontier = next_frontier
    return None


def pinned_automorphism_search(group, a, b, limit=1 << 22):
    """Backtracking oracle: find an automorphism with h(a) = b, or None.

    Independent of the BFS generator walk: enumerates candidate images of the
    standard generators directly (any element whose order divides the
    generator's), keeping tuples that pin a to b and act bijectively.  The
    pin constraint only involves generators in the support of a, so those
    columns are chosen first and the rest enumerated only for surviving pins.
    Intended for small groups; raises if the search space exceeds ``limit``.
    """
    _, mods = _two_part(group)
    k = len(mods)
    src = _project_two_part(group, a)
    dst = _project_two_part(group, b)
    if k == 0:
        return () if src == dst else None
    if src == dst:
        return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))

    all2 = list(itertools.product(*(range(q) for q in mods)))
    orders = {}
    for x in all2:
        m = 1
        for c, q in zip(x, mods):
            m = _lcm(m, q // gcd(q, c))
        orders[x] = m

    candidates = []
    space = 1
    for j in range(k):
        cj = [x for x in all2 if mods[j] % orders[x] == 0]
        candidates.append(cj)
        space *= len(cj)
    if space > limit:
        raise ValueError(f"pinned search space {space} exceeds limit {limit}")

    support = [j for j in range(k) if src[j]]
    rest = [j for j in range(k) if not src[j]]
    for sup_images in itertools.product(*(candidates[j] for j in support)):
        pinned = tuple(
            sum(col[i] * src[j] for col, j in zip(sup_images, support)) % mods[i]
            for i in range(k)
        )
        if pinned != dst:
            continue
        for rest_images in itertools.product(*(candidates[j] for j in rest)):
            cols = [None] * k
            for col, j in zip(sup_images, support):
                cols[j] = col
            for col, j in zip(rest_images, rest):
                cols[j] = col
            mat = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
            image_set = {_apply_matrix(mat, x, mods) for x in all2}
            if len(image_set) == len(all2):
                return mat
    return None


# ---------------------------------------------------------------------------
# Recovering the abstract type of an abelian group given by a Cayley table.
# ---------------------------------------------------------------------------

def abelian_group_from_table(table):
    """Identify a Cayley table as an abelian group.

    ``table[i][j]`` is the sum of carrier elements i and j.  Returns
    ``(group, coord_map)`` where ``coord_map[i]`` is the GroupElement of the
    canonical ``group`` matching carrier element i.  Raises ValueError when
    the table is not an abelian group.
    """
    n = len(table)
    for row in table:
        if len(row) != n:
            raise ValueError("table is not square")
    neutral = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            neutral = e
            break
    if neutral is None:
        raise ValueError("table has no neutral element")
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise ValueError("table is not commutative")

    def mul(k, x):  # k * x by doubling
        acc = neutral
        base = x
        while k:
            if k & 1:
                acc = table[acc][base]
            base = table[base][base]
            k >>= 1
        return acc

    def elt_order(x):
        y = x
        m = 1
        while y != neutral:
            y = table[y][x]
            m += 1
            if m > n:
                raise ValueError("table is not a group (unbounded element order)")
        return m

    # split into Sylow subgroups via CRT multipliers
    fac = factorize(n) if n > 1 else []
    basis = []  # (carrier element, prime power order)
    for p, v in fac:
        pe = p**v
        rest = n // pe
        # projection multiplier: 1 mod pe, 0 mod rest
        e_mult = 1 if rest == 1 else rest * pow(rest, -1, pe)
        sylow = sorted({mul(e_mult, x) for x in range(n)})
        basis.extend(_p_basis(table, neutral, sylow, mul, elt_order))

    total = 1
    for _, q in basis:
        total *= q
    if total != n:
        raise ValueError("table is not an abelian group (basis mismatch)")

    moduli = [q for _, q in basis]
    group, slots = normalized_with_embedding(moduli)
    coord_map = [None] * n
    width = len(group.factors)
    for combo in itertools.product(*(range(q) for q in moduli)):
        elt = neutral
        for (g, _q), c in zip(basis, combo):
            elt = table[elt][mul(c, g)]
        coords = [0] * width
        for (pos_list, c) in zip(slots, combo):
            for pos, q in pos_list:
                coords[pos] = c % q
        if coord_map[elt] is not None:
            raise ValueError("table is not an abelian group (basis not independent)")
        coord_map[elt] = GroupElement(group, tuple(coords))
    return group, coord_map


def _p_basis(table, neutral, sylow, mul, elt_order):
    """Basis of a p-subgroup given as a sorted element list.

    Peels a maximal-order cyclic summand, recurses on the quotient, and lifts
    quotient generators back with corrected orders.
    """
    if len(sylow) == 1:
        return []
    top = max(elt_order(x) for x in sylow)
    g1 = next(x for x in sylow if elt_order(x) == top)
    cyc = []
    y = neutral
    while True:
        cyc.append(y)
        y = table[y][g1]
        if y == neutral:
            break
        if len(cyc) > len(sylow):
            raise ValueError("table is not a group (unbounded cyclic subgroup)")
    # quotient by <g1>: canonical coset rep = smallest member
    rep = {}
    for x in sylow:
        members = sorted(table[x][c] for c in cyc)
        r = members[0]
        rep[x] = r
    reps = sorted(set(rep.values()))
    rep_index = {r: i for i, r in enumerate(reps)}
    qtable = [[0] * len(reps) for _ in reps]
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            qtable[i][j] = rep_index[rep[table[r][s]]]
    qneutral = rep_index[rep[neutral]]

    def qmul(k, x):
        acc = qneutral
        base = x
        while k:
            if k & 1:
                acc = qtable[acc][base]
            base = qtable[base][base]
            k >>= 1
        return acc

    def qorder(x):
        y = x
        m = 1
        while y != qneutral:
            y = qtable[y][x]
            m += 1
            if m > len(reps):
                raise ValueError("table is not a group (unbounded element order)")
        return m

    sub = _p_basis(qtable, qneutral, list(range(len(reps))), qmul, qorder)
    out = [(g1, top)]
    for qgen, qord in sub:
        b0 = reps[qgen]
        # correct the lift: qord * b0 lies in <g1>, say c * g1, and maximality
        # of the order of g1 forces qord | c, so b0 - (c // qord) * g1 has
        # order exactly qord while staying in the same coset
        t = mul(qord, b0)
        c = cyc.index(t)
        if c % qord:
            raise ValueError("table is not an abelian group (lift failed)")
        adjust = mul(c // qord, g1)
        if adjust == neutral:
            inv_adjust = neutral
        else:
            inv_adjust = mul(elt_order(adjust) - 1, adjust)
        out.append((table[b0][inv_adjust], qord))
    return out
