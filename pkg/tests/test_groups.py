import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from catgrp.core import (
    FiniteGroup,
    GroupAction,
    Hom,
    Subgroup,
    catalog,
    check_action_by_automorphisms,
    check_group_action,
    generated_subgroup,
    homomorphisms,
    image,
    is_homomorphism,
    is_normal,
    kernel,
    make_cyclic,
    make_dihedral,
    make_quaternion8,
    make_symmetric,
    normal_subgroups,
    order_cap,
    sign,
    subgroups,
    trivial_group,
    validate_group,
)
from catgrp.errors import ContractError, MalformedInputError, OrderCapExceeded

CATALOG = catalog()
REFERENCE = oracles.reference_groups()


def test_z2_validates():
    assert validate_group([[0, 1], [1, 0]]).passed


def test_z3_validates_and_agrees_with_scan():
    t = oracles.cyclic(3)
    assert validate_group(t).passed
    assert oracles.first_nonassociative(t) is None


def test_missing_inverse_witness():
    r = validate_group([[0, 1], [1, 1]])
    assert not r.passed
    assert r.witness == (1,)
    assert all(x != 0 for x in [[0, 1], [1, 1]][1])


def test_nonassociative_witness_is_first():
    # a loop of order 5 with identity and inverses but no associativity
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    r = validate_group(t)
    assert not r.passed
    assert r.witness == oracles.first_nonassociative(t)


def test_malformed_tables():
    with pytest.raises(MalformedInputError):
        validate_group([[0, 1]])
    with pytest.raises(MalformedInputError):
        validate_group([[0, 2], [2, 0]])


def test_identity_must_be_zero():
    with pytest.raises(MalformedInputError):
        FiniteGroup([[1, 0], [0, 1]])


def test_order_cap(monkeypatch):
    assert order_cap() == 200
    monkeypatch.setenv("CATGRP_ORDER_CAP", "5")
    with pytest.raises(OrderCapExceeded):
        make_cyclic(6)
    assert make_cyclic(5).order == 5


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_matches_reference(name):
    G = CATALOG[name]
    ref = REFERENCE[name]
    assert validate_group(G.table).passed
    assert oracles.is_group(ref)
    assert G.order == len(ref)
    assert G.is_abelian() == oracles.is_abelian(ref)
    assert sorted(G.element_orders().tolist()) == oracles.order_profile(ref)
    assert len(normal_subgroups(G)) == len(oracles.normal_subgroups(ref))


@pytest.mark.parametrize("name", ["Z1", "Z2", "Z3", "Z4", "Z6", "Z2xZ2", "S3"])
def test_small_catalog_isomorphic_to_reference(name):
    assert oracles.isomorphic(oracles.as_lists(CATALOG[name].table), REFERENCE[name])


def test_builtin_orders():
    assert make_cyclic(1).order == 1
    assert make_symmetric(3).order == 6
    assert make_symmetric(4).order == 24
    assert make_dihedral(5).order == 10
    assert make_quaternion8().order == 8
    assert not oracles.is_abelian(oracles.as_lists(make_symmetric(3).table))
    with pytest.raises(MalformedInputError):
        make_cyclic(0)
    with pytest.raises(MalformedInputError):
        make_symmetric(9)


def test_dihedral_convention():
    D = make_dihedral(4)
    # k -> r^k, n + k -> r^k s
    assert D.mul(1, 1) == 2
    assert D.mul(1, 4) == 5
    assert D.mul(4, 1) == 7
    assert D.mul(4, 4) == 0


def test_hom_examples():
    Z4 = make_cyclic(4)
    assert is_homomorphism(Hom.identity(Z4)).passed
    assert is_homomorphism(Hom.trivial(Z4, make_symmetric(3))).passed
    shift = Hom(Z4, Z4, [1, 2, 3, 0])
    r = is_homomorphism(shift)
    assert not r.passed and r.witness == (0, 0)
    assert r.witness == oracles.first_non_hom(oracles.cyclic(4), oracles.cyclic(4), [1, 2, 3, 0])


def test_hom_out_of_range():
    with pytest.raises(MalformedInputError):
        Hom(make_cyclic(2), make_cyclic(2), [0, 2])
    with pytest.raises(MalformedInputError):
        Hom(make_cyclic(2), make_cyclic(2), [0])


def test_kernel_and_image():
    S3 = make_symmetric(3)
    assert kernel(Hom.identity(S3)).members == (0,)
    ker = kernel(sign(3))
    assert ker.order == 3
    ref, perms = oracles.perm_group([(1, 0, 2), (1, 2, 0)])
    assert ker.order == sum(1 for p in perms if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0)
    assert image(sign(3)).order == 2
    with pytest.raises(ContractError):
        kernel(Hom(make_cyclic(4), make_cyclic(4), [1, 2, 3, 0]))


def test_transposition_subgroup_not_normal():
    S3 = make_symmetric(3)
    tau = int(np.flatnonzero(sign(3).map == 1)[0])
    H = generated_subgroup(S3, [tau])
    r = is_normal(H)
    assert not r.passed
    g, n = r.witness
    t = oracles.as_lists(S3.table)
    assert t[t[g][n]][oracles.inverse(t, g)] not in H.members


def test_subgroup_rejects_non_closed():
    S3 = make_symmetric(3)
    with pytest.raises(MalformedInputError):
        Subgroup(S3, [0, 1, 2])


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_subgroups_match_lattice_oracle(name):
    G = CATALOG[name]
    ours = {frozenset(H.members) for H in subgroups(G)}
    assert ours == oracles.subgroup_lattice(oracles.as_lists(G.table))


def test_actions():
    S3 = make_symmetric(3)
    assert check_group_action(GroupAction.trivial(S3, 5)).passed
    assert check_group_action(GroupAction.left_translation(S3)).passed
    assert check_group_action(GroupAction.conjugation(S3)).passed
    assert check_action_by_automorphisms(GroupAction.conjugation(S3)).passed
    translation_on_group = GroupAction(S3, S3, S3.table)
    assert check_group_action(translation_on_group).passed
    r = check_action_by_automorphisms(translation_on_group)
    assert not r.passed
    with pytest.raises(ContractError):
        check_action_by_automorphisms(GroupAction.left_translation(S3))


def test_corrupted_translation_witness():
    S3 = make_symmetric(3)
    table = S3.table.copy()
    table[2, 3] = table[2, 4]
    r = check_group_action(GroupAction(S3, 6, table))
    assert not r.passed
    g, h, x = r.witness
    t = [list(row) for row in table]
    assert t[g][t[h][x]] != t[oracles.as_lists(S3.table)[g][h]][x]


@given(st.sampled_from(sorted(CATALOG)), st.data())
@settings(max_examples=40, deadline=None)
def test_composites_of_homs_are_homs(name, data):
    G = CATALOG[name]
    H = CATALOG[data.draw(st.sampled_from(["Z1", "Z2", "Z3", "Z4", "Z6", "S3"]))]
    fs = list(homomorphisms(G, H))
    gs = list(homomorphisms(H, G))
    f = data.draw(st.sampled_from(fs))
    g = data.draw(st.sampled_from(gs))
    comp = f.then(g)
    assert oracles.first_non_hom(oracles.as_lists(G.table), oracles.as_lists(G.table), list(comp.map)) is None


@given(st.sampled_from(sorted(CATALOG)), st.data())
@settings(max_examples=40, deadline=None)
def test_kernels_are_normal(name, data):
    G = CATALOG[name]
    H = CATALOG[data.draw(st.sampled_from(["Z2", "Z3", "Z4", "Z2xZ2", "S3"]))]
    f = data.draw(st.sampled_from(list(homomorphisms(G, H))))
    K = kernel(f)
    assert is_normal(K).passed
    assert oracles.is_normal(oracles.as_lists(G.table), set(K.members))


def test_trivial_group():
    assert trivial_group().order == 1
