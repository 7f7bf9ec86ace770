import pytest

from ktgroups.abelian import two_torsion
from ktgroups.classify import (
    TABLE1,
    abelian_group_types,
    closed_form_counts,
    enumerate_kt,
    enumerate_kt_pairwise,
    number_of_abelian_groups,
    partitions,
    table1_compare,
)
from ktgroups.ternary import CanonicalKT, check_identity, iso_test, table_from_canonical


def test_partitions_reverse_lex():
    assert partitions(0) == [()]
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(partitions(6)) == 11


def test_abelian_group_types_counts_and_order():
    assert [g.factors for g in abelian_group_types(8)] == [(8,), (4, 2), (2, 2, 2)]
    assert [g.factors for g in abelian_group_types(36)] == [
        (4, 9),
        (4, 3, 3),
        (2, 2, 9),
        (2, 2, 3, 3),
    ]
    assert number_of_abelian_groups(36) == 4
    assert number_of_abelian_groups(48) == 5
    for n in range(1, 65):
        assert len(abelian_group_types(n)) == number_of_abelian_groups(n)


@pytest.mark.parametrize(
    "n,expected",
    [
        (5, (1, 1, 0)),
        (8, (7, 3, 2)),
        (16, (12, 5, 2)),
        (24, (7, 3, 0)),
        (32, (19, 7, 2)),
        (64, (30, 11, 2)),
    ],
)
def test_enumerate_counts_match_paper(n, expected):
    counts = enumerate_kt(n).counts
    assert (counts["all"], counts["idempotent"], counts["commutative"]) == expected


def test_enumerate_out_of_range():
    with pytest.raises(ValueError):
        enumerate_kt(0)
    with pytest.raises(ValueError):
        enumerate_kt(65)


def test_representatives_pairwise_noniso_and_cover_up_to_16():
    for n in range(1, 17):
        reps = enumerate_kt(n).representatives
        for i, s in enumerate(reps):
            for t in reps[i + 1 :]:
                assert not iso_test(s, t).isomorphic, (s.spec(), t.spec())
        for group in abelian_group_types(n):
            for a in two_torsion(group):
                cand = CanonicalKT(group, a)
                hits = [rep for rep in reps if iso_test(cand, rep).isomorphic]
                assert len(hits) == 1, cand.spec()


def test_idempotent_count_is_group_type_count():
    for n in range(1, 65):
        assert enumerate_kt(n).counts["idempotent"] == number_of_abelian_groups(n)


def test_odd_orders_have_only_idempotent_structures():
    for n in range(1, 65, 2):
        counts = enumerate_kt(n).counts
        assert counts["all"] == counts["idempotent"]


def test_commutative_representatives_are_elementary_two():
    for n in range(1, 65):
        report = enumerate_kt(n)
        marked = [
            rep for rep in report.representatives if all(q == 2 for q in rep.group.factors)
        ]
        assert len(marked) == report.counts["commutative"]
        # the predicate matches an actual identity check on small orders
        if n <= 8:
            for rep in report.representatives:
                is_comm = check_identity(table_from_canonical(rep), "commutative").holds
                assert is_comm == all(q == 2 for q in rep.group.factors), rep.spec()


def test_closed_form_matches_enumeration_up_to_64():
    for n in range(1, 65):
        assert closed_form_counts(n) == enumerate_kt(n).counts, n


def test_closed_form_known_values():
    assert closed_form_counts(24) == {"all": 7, "idempotent": 3, "commutative": 0}
    assert closed_form_counts(32) == {"all": 19, "idempotent": 7, "commutative": 2}
    # the audited rows: the formula is validated against the enumerator, and
    # both disagree with the published table here
    assert closed_form_counts(36) == {"all": 8, "idempotent": 4, "commutative": 0}
    assert closed_form_counts(48) == {"all": 12, "idempotent": 5, "commutative": 0}


def test_pairwise_oracle_agrees_small():
    for n in (1, 2, 4, 6, 8, 9, 12):
        assert enumerate_kt_pairwise(n).counts == enumerate_kt(n).counts


def test_table1_audit_rows():
    rows = table1_compare(64)
    assert len(rows) == 64
    mismatched = {row.n for row in rows if not row.match}
    assert mismatched == {36, 48}
    by_n = {row.n: row for row in rows}
    assert by_n[64].paper == {"all": 30, "idempotent": 11, "commutative": 2}
    assert by_n[64].computed == by_n[64].paper
    assert by_n[36].paper == {"all": 10, "idempotent": 5, "commutative": 0}
    assert by_n[36].computed == {"all": 8, "idempotent": 4, "commutative": 0}
    assert by_n[48].paper == {"all": 10, "idempotent": 4, "commutative": 0}
    assert by_n[48].computed == {"all": 12, "idempotent": 5, "commutative": 0}


def test_table1_golden_data_shape():
    assert set(TABLE1) == set(range(1, 65))
    assert TABLE1[1] == {"all": 1, "idempotent": 1, "commutative": 1}
    assert TABLE1[2] == {"all": 2, "idempotent": 1, "commutative": 2}
    assert TABLE1[27] == {"all": 3, "idempotent": 3, "commutative": 0}
