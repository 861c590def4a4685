import numpy as np
import pytest

from conftest import BATTERY, D_GROUP, group
from oracles import oracle_for
from sclab.collection import KINDS, collect
from sclab.functors import (FUNCTOR_OF_TYPE, TYPES, build_conjugation_category, build_orbit_category,
                            build_orbit_simplex_category, bredon_cohomology, higher_limits,
                            index_category, lim0, make_functor, permutation_module,
                            regular_module, sharpness_check, trivial_module)
from sclab.groups import centralizer
from sclab.topology import Poset, order_complex

SMALL_BATTERY = [(s, p) for s, p in BATTERY if group(s).order <= 48]


def _members(H):
    return frozenset(H.members.tolist())


@pytest.mark.parametrize("spec,p", SMALL_BATTERY)
def test_category_laws(spec, p):
    G = group(spec)
    C = collect(G, p, "S")
    if C.empty:
        pytest.skip("empty collection")
    for skel in (False, True):
        build_orbit_category(G, C, skeleton=skel).check_laws()
        build_conjugation_category(G, C, skeleton=skel).check_laws()
    cat = build_orbit_simplex_category(G, C)
    cat.check_laws()
    assert all(len(v) == 1 for v in cat.hom.values())
    X = order_complex(Poset.from_collection(C))
    assert cat.n_objects == sum(len(level) for level in X.orbit_reps)


@pytest.mark.parametrize("spec,p", [("sym:4", 2), ("dihedral:8", 2), ("alt:4", 2), ("sym:3", 3)])
def test_hom_set_sizes_against_brute_force(spec, p):
    G = group(spec)
    o = oracle_for(spec, p)
    C = collect(G, p, "S")
    orb = build_orbit_category(G, C)
    conj = build_conjugation_category(G, C)
    for i, K in enumerate(C.members):
        k = _members(K)
        cK = len(o.centralizer(k))
        for j, H in enumerate(C.members):
            h = _members(H)
            into = [a for a in range(G.order) if o.conj(G.inv[a], k) <= h]
            assert len(orb.homs(i, j)) == len(into) // len(h)
            assert len(conj.homs(i, j)) == len(into) // cK


@pytest.mark.parametrize("spec,p", [("sym:4", 2), ("alt:4", 2), (D_GROUP, 2), ("sym:3", 3)])
def test_functoriality_and_lim0_equals_ext0(spec, p):
    G = group(spec)
    for kind in ("S", "B", "A"):
        C = collect(G, p, kind)
        for type_ in TYPES:
            cat = index_category(G, C, type_)
            for n in range(3):
                F = make_functor(FUNCTOR_OF_TYPE[type_], cat, n=n)
                F.check_functoriality()
                rep = higher_limits(F, 2)
                assert rep.dims[0] == rep.lim0_families == lim0(F).shape[0]


@pytest.mark.parametrize("spec,p", BATTERY)
def test_stable_elements_over_all_p_subgroups(spec, p):
    G = group(spec)
    C = collect(G, p, "S")
    if C.empty:
        pytest.skip("no p-subgroups")
    cat = build_orbit_category(G, C, skeleton=True)
    eng = None
    for n in range(1, 4 if G.order <= 120 else 3):
        F = make_functor("beta", cat, n=n)
        eng = F.system.engine
        assert lim0(F).shape[0] == eng.dim(G.whole, n)


def test_alpha_values_are_centralizers():
    G = group("sym:4")
    cat = build_conjugation_category(G, collect(G, 2, "S"), skeleton=True)
    F = make_functor("alpha", cat, n=1)
    assert [v.mask for v in F.values] == [centralizer(G, H).mask for H in cat.objects]


def test_fixed_point_functors():
    G = group("sym:4")
    C = collect(G, 2, "S")
    cat = build_orbit_category(G, C, skeleton=True)
    F = make_functor("fixed_points", cat, module=regular_module(G, 2))
    assert F.dims == [G.order // H.order for H in cat.objects]
    T = make_functor("fixed_points", cat, module=trivial_module(G, 2))
    assert T.dims == [1] * cat.n_objects and lim0(T).shape[0] == 1
    points = np.array([[G.mult[g, x] for x in range(G.order)] for g in range(G.order)])
    P = make_functor("fixed_points", build_conjugation_category(G, C),
                     module=permutation_module(G, 3, points))
    P.check_functoriality()
    with pytest.raises(ValueError):
        make_functor("beta", cat)
    with pytest.raises(ValueError):
        make_functor("alpha", cat, n=1)
    with pytest.raises(ValueError):
        make_functor("gamma", cat, n=1)


@pytest.mark.parametrize("spec,p", [("sym:4", 2), ("alt:4", 2), (D_GROUP, 2),
                                    ("product(cyclic:2,sym:3)", 2), ("alt:5", 2)])
def test_bredon_cochains_match_higher_limits(spec, p):
    G = group(spec)
    for kind in KINDS:
        C = collect(G, p, kind)
        if C.empty:
            continue
        cat = build_orbit_simplex_category(G, C)
        X = order_complex(Poset.from_collection(C))
        for n in (1, 2):
            F = make_functor("delta", cat, n=n)
            lims = higher_limits(F, 2).dims
            assert bredon_cohomology(X, F.system, 2) == lims
            assert bredon_cohomology(X, F.system, 2, seed=7) == lims


def test_sharpness_examples():
    rep = sharpness_check(group("cyclic:4"), 2, "A", "subgroup")
    assert rep.verdict == "FAILS"
    assert (rep.failure["n"], rep.failure["i"], rep.failure["rank"]) == (1, 0, 0)
    rep = sharpness_check(group("cyclic:9"), 3, "A", "subgroup")
    assert rep.verdict == "FAILS" and rep.failure["n"] == 1
    rep = sharpness_check(group("dihedral:8"), 2, "Ce", "centralizer")
    assert rep.verdict == "FAILS"
    assert (rep.failure["source_dim"], rep.failure["lim0_dim"]) == (2, 3)
    for kind, type_ in [("S", "subgroup"), ("B", "subgroup"), ("S", "normalizer"),
                        ("E", "normalizer"), ("Z", "centralizer"), ("A", "centralizer")]:
        rep = sharpness_check(group("sym:4"), 2, kind, type_)
        assert rep.verdict == "SHARP_UP_TO_BOUNDS", (kind, type_)
        if type_ == "normalizer":
            assert all(r["bredon_agrees"] for r in rep.records)
    vac = sharpness_check(group("cyclic:6"), 5, "S", "subgroup")
    assert vac.verdict == "VACUOUS" and vac.to_json()["records"] == []


@pytest.mark.parametrize("kind", ["A", "Z", "E"])
@pytest.mark.parametrize("spec,p", [("cyclic:4", 2), ("cyclic:9", 3)])
def test_cyclic_p_squared_breaks_subgroup_sharpness(spec, p, kind):
    rep = sharpness_check(group(spec), p, kind, "subgroup")
    assert rep.verdict == "FAILS" and (rep.failure["n"], rep.failure["i"]) == (1, 0)


@pytest.mark.parametrize("kind", ["D", "BCe", "B", "I"])
@pytest.mark.parametrize("spec,p", [("dihedral:8", 2), ("extraspecial:3", 3)])
def test_single_member_collections_break_centralizer_sharpness(spec, p, kind):
    # the collection is {G} and H^1(G) restricts to zero on the center
    assert len(collect(group(spec), p, kind)) == 1
    rep = sharpness_check(group(spec), p, kind, "centralizer")
    assert rep.verdict == "FAILS"
    assert (rep.failure["source_dim"], rep.failure["lim0_dim"], rep.failure["rank"]) == (2, 1, 0)
