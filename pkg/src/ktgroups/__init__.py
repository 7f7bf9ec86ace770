"""Knot-theoretic ternary groups and region-coloring invariants of flat links.

The canonical structures are pairs (abelian group, translation of order at
most two) with bracket [xyz] = x - y + z + a.  The package verifies the
defining identities on explicit tables, classifies structures up to
isomorphism per order, and counts colorings of flat virtual link diagrams by
two independent methods.
"""

from ktgroups._kernels import backend_name
from ktgroups.abelian import (
    AbelianGroup,
    GroupElement,
    IntMatrix,
    add,
    aut_orbits_on_two_torsion,
    element_order,
    invariant_factors,
    negate,
    parse_group_spec,
    smith_normal_form,
    two_torsion,
    zero,
)
from ktgroups.classify import (
    TABLE1,
    ClassificationReport,
    closed_form_counts,
    enumerate_kt,
    enumerate_kt_pairwise,
    table1_compare,
)
from ktgroups.coloring import (
    ColoringReport,
    ColoringSystem,
    coloring_group,
    compile_system,
    count_affine,
    count_bruteforce,
    enumerate_colorings,
    invariant_vector,
    order4_catalog,
)
from ktgroups.diagram import Crossing, Diagram, builtin, format_diagram, parse_diagram, validate
from ktgroups.terms import CATALOG, Bracket, Identity, Skew, Var
from ktgroups.ternary import (
    CanonicalKT,
    TernaryTable,
    canonicalize,
    check_identity,
    check_quasigroup,
    compatible,
    derived_malcev,
    eval_term,
    format_kt_spec,
    format_table_file,
    iso_test,
    kt_eval,
    kt_make,
    kt_skew,
    parse_kt_spec,
    parse_table_file,
    property_report,
    retract,
    table_from_canonical,
    table_skew,
)

__version__ = "0.1.0"
