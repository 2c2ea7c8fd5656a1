import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from catgrp.core import GroupAction, catalog, make_cyclic, make_symmetric
from catgrp.errors import ContractError, MalformedInputError
from catgrp.group_objects import (
    CogroupCandidate,
    FinSetMap,
    GroupObjectCandidate,
    check_coassociativity,
    check_cogroup_object,
    check_group_action,
    check_group_object,
    check_interchange,
    check_monoid_object,
    eckmann_hilton,
)

CATALOG = catalog()


def native(G):
    return FinSetMap(G.order ** 2, G.order, G.table.reshape(-1))


def first_m_hom_violation(t, m):
    """Oracle: first (x, y, z, w) with m(xz, yw) != m(x,y) m(z,w)."""
    n = len(t)
    for x, y, z, w in itertools.product(range(n), repeat=4):
        if m[t[x][z]][t[y][w]] != t[m[x][y]][m[z][w]]:
            return (x, y, z, w)
    return None


def first_interchange_violation(s, d):
    n = len(s)
    for x, y, z, w in itertools.product(range(n), repeat=4):
        if d[s[x][y]][s[z][w]] != s[d[x][z]][d[y][w]]:
            return (x, y, z, w)
    return None


def test_one_point_monoid():
    cand = GroupObjectCandidate(1, FinSetMap(1, 1, [0]), FinSetMap(1, 1, [0]), FinSetMap(1, 1, [0]))
    assert check_monoid_object(cand).passed
    assert check_group_object(cand).passed


def test_z4_monoid():
    Z4 = make_cyclic(4)
    cand = GroupObjectCandidate(4, native(Z4), FinSetMap(1, 4, [0]))
    assert check_monoid_object(cand).passed


def test_bad_unit_witness():
    Z4 = make_cyclic(4)
    r = check_monoid_object(GroupObjectCandidate(4, native(Z4), FinSetMap(1, 4, [1])))
    assert not r.passed
    assert r.failed_leg == "left_unit"
    assert r.witness == (0,)
    assert oracles.cyclic(4)[1][0] == 1


def test_non_associative_m():
    # subtraction mod 3 is not associative and 0 is only a right unit
    m = FinSetMap(9, 3, [(a - b) % 3 for a in range(3) for b in range(3)])
    r = check_monoid_object(GroupObjectCandidate(3, m, FinSetMap(1, 3, [0])))
    assert not r.passed and r.failed_leg == "associativity"
    a, b, c = r.witness
    assert ((a - b) - c) % 3 != (a - (b - c)) % 3


def test_bad_inverse():
    Z4 = make_cyclic(4)
    cand = GroupObjectCandidate(4, native(Z4), FinSetMap(1, 4, [0]), FinSetMap.identity(4))
    r = check_group_object(cand)
    assert r.failed_leg == "left_inverse" and r.witness == (1,)


def test_arity_errors():
    with pytest.raises(MalformedInputError):
        GroupObjectCandidate(2, FinSetMap(3, 2, [0, 0, 0]), FinSetMap(1, 2, [0]))
    with pytest.raises(MalformedInputError):
        GroupObjectCandidate(2, FinSetMap(4, 2, [0, 1, 1, 0]), FinSetMap(1, 2, [0]), ambient="FinGrp")
    with pytest.raises(MalformedInputError):
        FinSetMap(2, 2, [0, 2])


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_group_in_finset_is_group_object(name):
    assert check_group_object(GroupObjectCandidate.from_group(CATALOG[name])).passed


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_fingrp_group_object_iff_abelian(name):
    G = CATALOG[name]
    cand = GroupObjectCandidate.from_group(G, "FinGrp")
    r = check_group_object(cand)
    t = oracles.as_lists(G.table)
    assert r.passed == oracles.is_abelian(t)
    if r.passed:
        eh = eckmann_hilton(cand)
        assert eh.passed and eh.part("m_is_native").passed and eh.part("native_abelian").passed
        # interchange with m and the native table is implied
        assert check_interchange(G, cand.m, native(G)).passed
    else:
        assert r.failed_leg == "m_homomorphism"


def test_s3_fingrp_witness_matches_oracle():
    S3 = make_symmetric(3)
    r = check_group_object(GroupObjectCandidate.from_group(S3, "FinGrp"))
    t = oracles.as_lists(S3.table)
    assert r.witness == first_m_hom_violation(t, t)


def test_eckmann_hilton_precondition():
    with pytest.raises(ContractError):
        eckmann_hilton(GroupObjectCandidate.from_group(make_symmetric(3), "FinGrp"))
    assert eckmann_hilton(GroupObjectCandidate.from_group(make_cyclic(1), "FinGrp")).passed


def test_interchange_examples():
    Z2 = make_cyclic(2)
    assert check_interchange(Z2, native(Z2), native(Z2)).passed
    S3 = make_symmetric(3)
    r = check_interchange(S3, native(S3), native(S3))
    t = oracles.as_lists(S3.table)
    assert not r.passed
    assert r.witness == first_interchange_violation(t, t)


@given(st.integers(1, 3), st.data())
@settings(max_examples=60, deadline=None)
def test_interchange_witness_on_random_operations(n, data):
    cells = st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n)
    s, d = data.draw(cells), data.draw(cells)
    S = [s[i * n:(i + 1) * n] for i in range(n)]
    D = [d[i * n:(i + 1) * n] for i in range(n)]
    r = check_interchange(n, FinSetMap(n * n, n, s), FinSetMap(n * n, n, d))
    expected = first_interchange_violation(S, D)
    assert r.passed == (expected is None)
    if expected is not None:
        assert r.witness == expected


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_translation_and_conjugation_are_actions(name):
    G = CATALOG[name]
    assert check_group_action(GroupAction.left_translation(G)).passed
    assert check_group_action(GroupAction.conjugation(G)).passed


def test_cogroup_empty_carrier():
    assert check_cogroup_object(CogroupCandidate(0, (), eta=())).passed


@given(st.integers(1, 4), st.data())
@settings(max_examples=60, deadline=None)
def test_cogroup_fails_on_nonempty(n, data):
    w = data.draw(st.lists(st.tuples(st.integers(0, 1), st.integers(0, n - 1)), min_size=n, max_size=n))
    r = check_cogroup_object(CogroupCandidate(n, w))
    assert not r.passed
    assert not r.part("counit").passed
    assert "no map to the initial object exists" in r.part("counit").detail


def test_coassociativity_one_point():
    assert check_coassociativity(1, [(0, 0)]).passed


def test_coassociativity_oracle():
    # w(x) = left(x): both composites send x to the first summand
    assert check_coassociativity(3, [(0, 0), (0, 1), (0, 2)]).passed
    r = check_coassociativity(2, [(0, 1), (0, 0)])
    assert not r.passed and r.witness == (0,)


def test_cogroup_malformed():
    with pytest.raises(MalformedInputError):
        CogroupCandidate(1, [(2, 0)])
    with pytest.raises(MalformedInputError):
        CogroupCandidate(1, [(0, 0)], eta=(0,))
