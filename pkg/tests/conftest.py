import pytest

from ktgroups.abelian import two_torsion
from ktgroups.classify import abelian_group_types
from ktgroups.ternary import CanonicalKT


def all_candidates(max_order, min_order=1):
    """Every (group, translation) pair with order in range, not deduplicated."""
    out = []
    for n in range(min_order, max_order + 1):
        for group in abelian_group_types(n):
            for a in two_torsion(group):
                out.append(CanonicalKT(group, a))
    return out


@pytest.fixture(scope="session")
def candidates_up_to_8():
    return all_candidates(8)


@pytest.fixture(scope="session")
def candidates_up_to_12():
    return all_candidates(12)
