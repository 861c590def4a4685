import json
from itertools import combinations

import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from conftest import BATTERY, D_GROUP, group
from sclab.collection import collect
from sclab.groups import centralizer, normalizer, subgroups_all, sylow_p
from sclab.topology import (TABLE_LINES, ContractionCertificate, Poset, check_line, contractibility,
                            core_reduction, equivalence_evidence, frattini_zigzag, join, link,
                            normalizer_zigzag, order_complex, probe_subgroups, reduced_homology,
                            removal_check, row_indices, simplicial_join_betti, smith_diagonal, star,
                            sub_posets, verify_certificate)


def face_poset(facets):
    faces = sorted({f for F in facets for r in range(1, len(F) + 1) for f in combinations(sorted(F), r)})
    leq = np.array([[set(a) <= set(b) for b in faces] for a in faces])
    return Poset.from_relation(faces, leq)


RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2), (2, 3, 5), (3, 4, 6), (4, 5, 2),
       (5, 6, 3), (6, 2, 4)]


def test_small_complexes():
    point = Poset.from_relation(["a"], [[True]])
    assert reduced_homology(point, 2).acyclic
    two = Poset.from_relation(["a", "b"], np.eye(2, dtype=bool))
    assert reduced_homology(two, 2).betti_integral == {0: 1}
    empty = Poset.from_relation([], np.zeros((0, 0), dtype=bool))
    h = reduced_homology(empty, 3)
    assert h.betti_integral == {-1: 1} and h.betti_mod_p == {-1: 1}
    circle = Poset.from_relation("abcd", [[1, 0, 1, 1], [0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert reduced_homology(circle, 2).betti_integral == {1: 1}


def test_projective_plane_torsion():
    X = face_poset(RP2)
    h2, h3 = reduced_homology(X, 2), reduced_homology(X, 3)
    assert h2.betti_integral == {} and h2.torsion == {1: [2]}
    assert h2.betti_mod_p == {1: 1, 2: 1}
    assert h3.acyclic is False and h3.betti_mod_p == {}


def test_sphere_boundary_of_tetrahedron():
    X = face_poset(list(combinations(range(4), 3)))
    assert reduced_homology(X, 5).betti_integral == {2: 1}


def test_smith_diagonal_against_sympy():
    rng = np.random.default_rng(0)
    for _ in range(25):
        m, n = rng.integers(1, 6, size=2)
        A = rng.integers(-4, 5, size=(m, n))
        ours = [d for d in smith_diagonal(A.tolist()) if d]
        snf = smith_normal_form(Matrix(A.tolist()), domain=ZZ)
        theirs = [abs(int(snf[i, i])) for i in range(min(m, n)) if snf[i, i] != 0]
        assert sorted(ours) == sorted(theirs)


def test_euler_characteristic_matches_betti():
    for spec, p in BATTERY[:11]:
        P = Poset.from_collection(collect(group(spec), p, "S"))
        h = reduced_homology(P, p)
        assert sum((-1) ** k * b for k, b in h.betti_mod_p.items()) == h.euler


def test_poset_validation_and_orbits():
    G = group("sym:4")
    P = Poset.from_collection(collect(G, 2, "S"))
    P.validate()
    X = order_complex(P)
    assert sum(len(level) for level in X.orbit_reps) < sum(X.counts())
    for level in X.orbit_reps:
        for sigma, stab in level:
            # the stabilizer of a chain is the intersection of the normalizers of its members
            N = G.whole
            for v in sigma:
                N = G.intersection(N, normalizer(G, P.elements[v]))
            assert sorted(stab.tolist()) == N.members.tolist()
    bad = Poset.from_relation("ab", [[True, True], [True, True]])
    with pytest.raises(ValueError):
        bad.validate()


def test_join_link_star():
    P = Poset.from_collection(collect(group("sym:4"), 2, "S"))
    for x in range(len(P)):
        L = link(P, x)
        assert len(star(P, x)) == len(L) + 1
    a = face_poset([(0, 1)])               # contractible
    b = Poset.from_relation("xy", np.eye(2, dtype=bool))    # S^0
    J = join(b, b)                          # S^0 * S^0 = S^1
    assert reduced_homology(J, 2).betti_mod_p == {1: 1}
    assert simplicial_join_betti({0: 1}, {0: 1}) == {1: 1}
    assert reduced_homology(join(a, b), 2).acyclic


def test_core_reduction_certificate_round_trip():
    P = Poset.from_collection(collect(group("sym:4"), 2, "S"))
    res = contractibility(P, 2)
    assert res.status == "CERTIFIED"
    assert verify_certificate(P, res.certificate)
    again = ContractionCertificate.from_json(json.loads(json.dumps(res.certificate.to_json())))
    assert verify_certificate(P, again)
    bogus = ContractionCertificate([(np.zeros(len(P) + 1, dtype=np.int64), "GE")], 0)
    with pytest.raises(ValueError):
        verify_certificate(P, bogus)


def test_core_of_disconnected_poset():
    C = collect(group("product(cyclic:2,sym:3)"), 2, "Ce")
    P = Poset.from_collection(C)
    survivors, _ = core_reduction(P)
    assert len(survivors) == 3
    assert contractibility(P).status == "NOT_CONTRACTIBLE"


def test_negative_lines():
    h = reduced_homology(Poset.from_collection(collect(group("product(cyclic:2,sym:3)"), 2, "Ce")), 2)
    assert h.betti_mod_p == {0: 2}
    S5 = group("sym:5")
    assert Poset.from_collection(collect(S5, 2, "E")).components() == 5
    assert Poset.from_collection(collect(S5, 2, "S")).components() == 1
    G = group(D_GROUP)
    assert contractibility(Poset.from_collection(collect(G, 2, "D"))).status == "NOT_CONTRACTIBLE"
    for k in ("S", "Ce", "E"):
        assert contractibility(Poset.from_collection(collect(G, 2, k))).status == "CERTIFIED"


def test_normalizer_and_frattini_zigzags():
    for spec, p in BATTERY[:11]:
        G = group(spec)
        C = collect(G, p, "S")
        for i in C.class_reps:
            P = C.members[i]
            if i not in [C.index(Q) for Q in collect(G, p, "B").members]:
                X, cert = normalizer_zigzag(C, P)
                assert verify_certificate(X, cert)
            if any(Q < P for Q in C.members) and not collect(G, p, "A").__contains__(P):
                X, cert = frattini_zigzag(C, P)
                assert verify_certificate(X, cert)


def test_row_posets_match_definitions():
    G = group("sym:4")
    C = collect(G, 2, "S")
    for H in subgroups_all(G).class_reps():
        CG = centralizer(G, H)
        assert row_indices(C, H, "subgroup") == [i for i, Q in enumerate(C.members) if H <= Q]
        assert row_indices(C, H, "centralizer") == [i for i, Q in enumerate(C.members) if Q <= CG]
        fixed = [i for i, Q in enumerate(C.members) if all(G.conjugate(Q, h) == Q for h in H.members)]
        assert row_indices(C, H, "normalizer") == fixed
        assert set(sub_posets(C, H)) == {"fixed", "above", "below_centralizer"}


def test_probe_scopes():
    G = group("sym:4")
    assert len(probe_subgroups(G, 2, "plain")) == 1
    sylow = probe_subgroups(G, 2, "sylow")
    assert all(H.order in (1, 2, 4, 8) for H in sylow)
    assert len(probe_subgroups(G, 2, "full")) == 11
    with pytest.raises(ValueError):
        probe_subgroups(G, 2, "wide")


def test_removal_s4_to_b():
    G = group("sym:4")
    rep = removal_check(collect(G, 2, "S"), collect(G, 2, "B"), 1)
    assert rep.passed and rep.rows
    assert all(r["certificate"] for r in rep.rows)
    rep3 = removal_check(collect(G, 2, "S"), collect(G, 2, "B"), 3)
    assert rep3.passed


def test_table_lines_on_s4_and_mismatch_witness():
    G = group("sym:4")
    assert all(check_line(G, 2, ln).verdict == "EVIDENCE_PASS" for ln in TABLE_LINES)
    H = group("product(cyclic:2,sym:3)")
    rep = equivalence_evidence(collect(H, 2, "Ce"), collect(H, 2, "S"), "normalizer", "plain")
    assert rep.verdict == "MISMATCH"
    assert rep.witness["left_betti"]["components"] == 3


def test_cyclic_relation_rejected_before_enumeration():
    with pytest.raises(ValueError):
        order_complex(Poset.from_relation("ab", [[True, True], [True, True]]))
