import numpy as np
import pytest

from conftest import BATTERY, group
from oracles import Oracle, all_subgroups_bruteforce
from sclab.groups import (GroupError, all_sylows, center, centralizer, frattini, is_elementary_abelian,
                          is_normal, normalizer, o_p, omega1, quotient, subgroups_all, subgroups_naive,
                          sylow_p)


def test_identity_is_index_zero_and_axioms():
    for spec, _ in BATTERY:
        G = group(spec)
        n = G.order
        assert (G.mult[0] == np.arange(n)).all() and (G.mult[:, 0] == np.arange(n)).all()
        assert (G.mult[np.arange(n), G.inv] == 0).all()


@pytest.mark.parametrize("spec,count", [("cyclic:4", 3), ("dihedral:8", 10), ("sym:4", 30)])
def test_subgroup_counts(spec, count):
    assert len(subgroups_all(group(spec)).subgroups) == count


def test_dihedral_subgroups_by_order():
    orders = [H.order for H in subgroups_all(group("dihedral:8")).subgroups]
    assert [orders.count(k) for k in (1, 2, 4, 8)] == [1, 5, 3, 1]


@pytest.mark.parametrize("spec", ["dihedral:8", "quaternion:8", "alt:4", "sym:4",
                                  "product(cyclic:2,sym:3)", "cyclic:6", "extraspecial:3"])
def test_subgroups_match_bruteforce(spec):
    G = group(spec)
    got = {frozenset(H.members.tolist()) for H in subgroups_all(G).subgroups}
    assert got == all_subgroups_bruteforce(G)
    if G.order <= 24:
        assert got == {frozenset(H.members.tolist()) for H in subgroups_naive(G)}


def test_subgroups_sorted_and_conjugation_closed():
    for spec in ("sym:4", "alt:5"):
        G = group(spec)
        lat = subgroups_all(G)
        keys = [H.sort_key for H in lat.subgroups]
        assert keys == sorted(keys)
        masks = {H.mask for H in lat.subgroups}
        for H in lat.subgroups:
            assert G.order % H.order == 0
            for g in range(G.order):
                assert G.conjugate(H, g).mask in masks


def test_perfect_subgroups_found():
    # A5 has 59 subgroups including itself; cyclic extension alone never reaches A5
    lat = subgroups_all(group("alt:5"))
    assert len(lat.subgroups) == 59
    assert len(lat.classes) == 9


def test_centralizer_normalizer_examples():
    D8 = group("dihedral:8")
    assert centralizer(D8, center(D8, D8.whole)) == D8.whole
    S4 = group("sym:4")
    lat = subgroups_all(S4).subgroups
    dbl = next(H for H in lat if H.order == 2 and centralizer(S4, H).order == 8)
    assert dbl is not None
    c4 = next(H for H in lat if H.order == 4 and len(S4.generators(H)) == 1)
    assert normalizer(S4, c4).order == 8


def test_centralizer_inside_normalizer_and_oracle():
    for spec, p in BATTERY[:11]:
        G = group(spec)
        o = Oracle(G, p)
        for H in subgroups_all(G).class_reps():
            Hs = frozenset(H.members.tolist())
            C, N = centralizer(G, H), normalizer(G, H)
            assert C <= N
            assert frozenset(C.members.tolist()) == o.centralizer(Hs)
            assert frozenset(N.members.tolist()) == o.normalizer(Hs)


@pytest.mark.parametrize("spec,p,order,count", [("sym:4", 2, 8, 3), ("sym:4", 3, 3, 4),
                                                ("cyclic:4", 2, 4, 1)])
def test_sylow(spec, p, order, count):
    G = group(spec)
    assert sylow_p(G, p).order == order
    assert len(all_sylows(G, p)) == count


def test_sylow_of_coprime_prime_is_trivial():
    G = group("cyclic:6")
    assert sylow_p(G, 5).order == 1 and all_sylows(G, 5) == []
    with pytest.raises(GroupError):
        sylow_p(G, 4)


def test_op_is_intersection_of_sylows():
    for spec, p in BATTERY:
        G = group(spec)
        syl = all_sylows(G, p)
        assert o_p(G, p) == G.intersection(*syl)
    assert o_p(group("sym:4"), 2).order == 4


def test_omega1_and_frattini():
    Z4 = group("cyclic:4")
    assert omega1(Z4, Z4.whole, 2).order == 2
    D8 = group("dihedral:8")
    F = frattini(D8, D8.whole, 2)
    assert F == center(D8, D8.whole) and F.order == 2
    with pytest.raises(GroupError):
        omega1(D8, D8.whole, 2)


def test_quotient_by_frattini_is_elementary_abelian():
    for spec, p in BATTERY:
        G = group(spec)
        for P in {sylow_p(G, p).mask: sylow_p(G, p)}.values():
            if P.order == 1:
                continue
            F = frattini(G, P, p)
            Q, proj = quotient(G, F, within=P)
            assert is_elementary_abelian(Q, Q.whole, p)


def test_quotient_requires_normal():
    S4 = group("sym:4")
    H = next(h for h in subgroups_all(S4).subgroups if h.order == 2)
    assert not is_normal(S4, H)
    with pytest.raises(GroupError):
        quotient(S4, H)
