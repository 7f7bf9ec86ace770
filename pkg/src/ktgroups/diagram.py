"""Flat virtual link diagrams as region-incidence crossing lists.

A diagram is a number of complement regions plus a list of crossings, each
recording the four region indices around it in cyclic order.  Corner 0 is the
constrained one: a coloring must satisfy f(c0) = [f(c1) f(c2) f(c3)].  No
surface data is stored; the coloring counts only ever look at region
incidence, and semi-commutativity of the coloring structures makes the
reading direction irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass

from ktgroups.errors import SpecError

__all__ = ["Crossing", "Diagram", "parse_diagram", "format_diagram", "builtin", "validate"]

KINDS = ("flat", "virtual")


@dataclass(frozen=True)
class Crossing:
    kind: str
    corners: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"bad crossing kind {self.kind!r}")
        corners = tuple(self.corners)
        if len(corners) != 4:
            raise ValueError("a crossing has exactly 4 corners")
        object.__setattr__(self, "corners", corners)


@dataclass(frozen=True)
class Diagram:
    name: str
    num_regions: int
    crossings: tuple

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))


def validate(diagram):
    """Structural findings; empty list means the diagram is well formed."""
    findings = []
    if diagram.num_regions < 1:
        findings.append("diagram must have at least one region")
    for i, crossing in enumerate(diagram.crossings):
        if crossing.kind not in KINDS:
            findings.append(f"crossing {i}: bad kind {crossing.kind!r}")
        for c in crossing.corners:
            if not 0 <= c < diagram.num_regions:
                findings.append(
                    f"crossing {i}: corner {c} out of range 0..{diagram.num_regions - 1}"
                )
    return findings


def parse_diagram(text, name="diagram"):
    """Parse the line-oriented diagram format.

    Line 1 is ``regions <R>``; each further line is
    ``crossing <flat|virtual> <c0> <c1> <c2> <c3>``.  '#' starts a comment,
    blank lines are skipped, and errors carry line/column positions.
    """
    num_regions = None
    crossings = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        parts = body.split()
        if num_regions is None:
            if parts[0] != "regions":
                raise SpecError(
                    f"expected 'regions <R>', got {parts[0]!r}",
                    line=ln,
                    column=body.index(parts[0]) + 1,
                )
            if len(parts) != 2 or not parts[1].isdigit():
                raise SpecError("expected 'regions <R>' with one integer", line=ln)
            num_regions = int(parts[1])
            if num_regions < 1:
                raise SpecError("region count must be >= 1", line=ln)
            continue
        if parts[0] != "crossing":
            raise SpecError(
                f"expected 'crossing', got {parts[0]!r}",
                line=ln,
                column=body.index(parts[0]) + 1,
            )
        if len(parts) != 6:
            raise SpecError(
                "expected 'crossing <flat|virtual> <c0> <c1> <c2> <c3>'", line=ln
            )
        kind = parts[1]
        if kind not in KINDS:
            raise SpecError(
                f"bad crossing kind {kind!r}",
                line=ln,
                column=body.index(kind) + 1,
            )
        corners = []
        for tok in parts[2:]:
            if not tok.isdigit():
                raise SpecError(
                    f"bad corner {tok!r}", line=ln, column=body.index(tok) + 1
                )
            c = int(tok)
            if c >= num_regions:
                raise SpecError(
                    f"corner {c} out of range 0..{num_regions - 1}",
                    line=ln,
                    column=body.index(tok) + 1,
                )
            corners.append(c)
        crossings.append(Crossing(kind, tuple(corners)))
    if num_regions is None:
        raise SpecError("empty diagram: missing 'regions <R>' header")
    return Diagram(name, num_regions, tuple(crossings))


def format_diagram(diagram):
    """Canonical text form; parse(format(D)) reproduces D."""
    lines = [f"regions {diagram.num_regions}"]
    for crossing in diagram.crossings:
        c0, c1, c2, c3 = crossing.corners
        lines.append(f"crossing {crossing.kind} {c0} {c1} {c2} {c3}")
    return "\n".join(lines) + "\n"


_BUILTINS = {
    # two disjoint unknotted loops in the plane: three regions, no crossings
    "unlink2": Diagram("unlink2", 3, ()),
    # a trivial separating loop on the Kishino surface: two regions
    "loop2": Diagram("loop2", 2, ()),
    # flat Kishino curve: two surface regions, four flat crossings, all
    # imposing the same relation f(0) = [f(1) f(1) f(1)]
    "kishino": Diagram(
        "kishino",
        2,
        tuple(Crossing("flat", (0, 1, 1, 1)) for _ in range(4)),
    ),
    # flat-virtual Hopf link: one flat and one virtual crossing sharing the
    # four regions; reconstruction bound only by the published counts
    "hopf_fv": Diagram(
        "hopf_fv",
        4,
        (Crossing("flat", (0, 1, 2, 3)), Crossing("virtual", (0, 1, 2, 3))),
    ),
}


def builtin(name):
    """Built-in diagrams: unlink2, loop2, kishino, hopf_fv."""
    try:
        return _BUILTINS[name]
    except KeyError:
        raise SpecError(
            f"unknown builtin diagram {name!r}; have {', '.join(sorted(_BUILTINS))}"
        ) from None


def builtin_names():
    return tuple(sorted(_BUILTINS))
