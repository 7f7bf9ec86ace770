"""Term language over a ternary bracket and skew, plus the identity catalog.

A term is a variable, a bracket of three terms, or a skew of one term.
Identities are (lhs, rhs) term pairs; laws stated in chained form (like
[abb] = skew(a) = [bba]) live in the catalog as families of such pairs under
one key, checked together.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Var",
    "Bracket",
    "Skew",
    "Identity",
    "CATALOG",
    "CATALOG_ORDER",
    "DERIVED_OPERATION_KEYS",
    "compile_term",
    "term_nvars",
]


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Bracket:
    x: object
    y: object
    z: object


@dataclass(frozen=True)
class Skew:
    x: object


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: object
    rhs: object
    nvars: int


def term_nvars(term):
    if isinstance(term, Var):
        return term.index + 1
    if isinstance(term, Skew):
        return term_nvars(term.x)
    return max(term_nvars(term.x), term_nvars(term.y), term_nvars(term.z))


def compile_term(term, out=None):
    """Postfix opcodes for the scan kernels (operation A encoding)."""
    if out is None:
        out = []
    if isinstance(term, Var):
        out.append(term.index)
    elif isinstance(term, Bracket):
        compile_term(term.x, out)
        compile_term(term.y, out)
        compile_term(term.z, out)
        out.append(-1)
    elif isinstance(term, Skew):
        compile_term(term.x, out)
        out.append(-2)
    else:
        raise TypeError(f"not a term: {term!r}")
    return out


def uses_skew(term):
    if isinstance(term, Skew):
        return True
    if isinstance(term, Bracket):
        return uses_skew(term.x) or uses_skew(term.y) or uses_skew(term.z)
    return False


def _family(name, nvars, *pairs):
    if len(pairs) == 1:
        return (Identity(name, pairs[0][0], pairs[0][1], nvars),)
    return tuple(
        Identity(f"{name}.{i + 1}", lhs, rhs, nvars)
        for i, (lhs, rhs) in enumerate(pairs)
    )


_a, _b, _c, _d, _e = (Var(i) for i in range(5))
_B = Bracket
_S = Skew

# The built-in catalog.  Keys are stable names; values are families of
# identities that must all hold for the named law to hold.
CATALOG = {
    "A3L": _family(
        "A3L",
        4,
        (_B(_B(_a, _b, _c), _c, _d), _B(_B(_a, _b, _B(_b, _c, _d)), _B(_b, _c, _d), _d)),
    ),
    "A3R": _family(
        "A3R",
        4,
        (_B(_a, _b, _B(_b, _c, _d)), _B(_a, _B(_a, _b, _c), _B(_B(_a, _b, _c), _c, _d))),
    ),
    "assoc12": _family(
        "assoc12", 5, (_B(_B(_a, _b, _c), _d, _e), _B(_a, _B(_b, _c, _d), _e))
    ),
    "assoc23": _family(
        "assoc23", 5, (_B(_a, _B(_b, _c, _d), _e), _B(_a, _b, _B(_c, _d, _e)))
    ),
    "assoc_full": _family(
        "assoc_full",
        5,
        (_B(_B(_a, _b, _c), _d, _e), _B(_a, _B(_b, _c, _d), _e)),
        (_B(_a, _B(_b, _c, _d), _e), _B(_a, _b, _B(_c, _d, _e))),
    ),
    "idempotent": _family("idempotent", 1, (_B(_a, _a, _a), _a)),
    "semicommutative": _family("semicommutative", 3, (_B(_a, _b, _c), _B(_c, _b, _a))),
    "commutative": _family(
        "commutative",
        3,
        (_B(_a, _b, _c), _B(_b, _a, _c)),
        (_B(_a, _b, _c), _B(_a, _c, _b)),
        (_B(_a, _b, _c), _B(_c, _b, _a)),
    ),
    "malcev": _family("malcev", 2, (_B(_a, _b, _b), _a), (_B(_b, _b, _a), _a)),
    "entropic": _family(
        "entropic",
        9,
        (
            _B(
                _B(Var(0), Var(1), Var(2)),
                _B(Var(3), Var(4), Var(5)),
                _B(Var(6), Var(7), Var(8)),
            ),
            _B(
                _B(Var(0), Var(3), Var(6)),
                _B(Var(1), Var(4), Var(7)),
                _B(Var(2), Var(5), Var(8)),
            ),
        ),
    ),
    "sk1": _family(
        "sk1",
        1,
        (_B(_S(_a), _a, _a), _a),
        (_B(_a, _S(_a), _a), _a),
        (_B(_a, _a, _S(_a)), _a),
    ),
    "sk2": _family(
        "sk2",
        2,
        (_B(_b, _a, _S(_a)), _b),
        (_B(_b, _S(_a), _a), _b),
        (_B(_a, _S(_a), _b), _b),
        (_B(_S(_a), _a, _b), _b),
    ),
    "sk3": _family("sk3", 3, (_S(_B(_a, _b, _c)), _B(_S(_c), _S(_b), _S(_a)))),
    "sk4": _family("sk4", 1, (_S(_S(_a)), _a)),
    "eq22": _family("eq22", 2, (_B(_a, _b, _b), _S(_a)), (_B(_b, _b, _a), _S(_a))),
    "eq4": _family(
        "eq4",
        3,
        (_B(_S(_a), _b, _c), _B(_a, _S(_b), _c)),
        (_B(_a, _S(_b), _c), _B(_a, _b, _S(_c))),
    ),
    "eq23": _family("eq23", 2, (_B(_a, _b, _b), _S(_a))),
    "a1_exchange": _family(
        "a1_exchange", 5, (_B(_B(_a, _b, _c), _d, _e), _B(_B(_a, _d, _c), _b, _e))
    ),
    "a2_exchange": _family(
        "a2_exchange", 5, (_B(_a, _B(_b, _c, _d), _e), _B(_a, _B(_b, _e, _d), _c))
    ),
    "a3_neutral": _family(
        "a3_neutral", 2, (_B(_S(_a), _a, _b), _b), (_B(_b, _a, _S(_a)), _b)
    ),
    "dud80": _family("dud80", 2, (_B(_a, _b, _S(_a)), _b)),
    "all_neutral": _family(
        "all_neutral",
        2,
        (_B(_a, _a, _b), _b),
        (_B(_a, _b, _a), _b),
        (_B(_b, _a, _a), _b),
    ),
    "malcev_1M": _family(
        "malcev_1M", 4, (_B(_B(_a, _b, _c), _c, _d), _B(_a, _b, _d))
    ),
    "malcev_2M": _family(
        "malcev_2M", 4, (_B(_a, _b, _B(_b, _c, _d)), _B(_a, _c, _d))
    ),
}

CATALOG_ORDER = tuple(CATALOG)

# These two laws describe the derived Mal'cev operation P(x,y,z) = [x skew(y) z];
# the `identities` runner evaluates them on that derived table.
DERIVED_OPERATION_KEYS = frozenset({"malcev_1M", "malcev_2M"})

FAMILY_NVARS = {key: max(m.nvars for m in fam) for key, fam in CATALOG.items()}
FAMILY_USES_SKEW = {
    key: any(uses_skew(m.lhs) or uses_skew(m.rhs) for m in fam)
    for key, fam in CATALOG.items()
}
