"""Acceptance criteria 1-7.

Each criterion is a function returning ``(ok, detail)``.  Under pytest every
one prints a ``CRITERION k: PASS|FAIL`` line; run this file directly
(``python3 tests/test_acceptance.py``) to get the same seven lines without
pytest.
"""
from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import BATTERY, group  # noqa: E402
from oracles import oracle_for  # noqa: E402
from sclab.cli import cmd_counterexamples  # noqa: E402
from sclab.cohomology import CohomologyEngine, bar_cohomology_dims  # noqa: E402
from sclab.collection import (KINDS, check_endomorphism, closure_check, collect,  # noqa: E402
                              endo_sylow_intersection, endo_Z)
from sclab.functors import (bredon_cohomology, build_orbit_simplex_category,  # noqa: E402
                            higher_limits, make_functor, sharpness_check)
from sclab.groups import subgroups_all  # noqa: E402
from sclab.topology import (TABLE_LINES, Poset, check_line, equivalence_evidence,  # noqa: E402
                            order_complex, removal_check)


def _sets(C):
    return {frozenset(H.members.tolist()) for H in C.members}


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for spec, p in BATTERY:
        G, o = group(spec), oracle_for(spec, p)
        for kind in KINDS:
            if _sets(collect(G, p, kind)) != o.collection(kind):
                bad.append(f"{spec}/{kind}")
    dt = time.perf_counter() - t0
    return not bad and dt < 300, f"{len(BATTERY)} groups x 9 kinds, mismatches={bad}, {dt:.1f}s"


def criterion_2():
    cases = [("sym:4", 2), ("alt:4", 2), ("sym:3", 3)]
    chain = ["B", "I", "S", "A", "Z"]
    bad, n = [], 0
    for spec, p in cases:
        G = group(spec)
        for a, b in zip(chain, chain[1:]):
            rep = equivalence_evidence(collect(G, p, a), collect(G, p, b), "normalizer", "full")
            n += 1
            if rep.verdict != "EVIDENCE_PASS":
                bad.append(f"{spec}:{a}~{b}/normalizer")
        for line in TABLE_LINES:
            if "normalizer" == line.left[1] == line.right[1]:
                continue
            n += 1
            if check_line(G, p, line).verdict != "EVIDENCE_PASS":
                bad.append(f"{spec}:{line.label()}")
    return not bad, f"{n} line checks over S4, A4 (p=2) and S3 (p=3); mismatches={bad}"


def criterion_3():
    t0 = time.perf_counter()
    res = cmd_counterexamples(2)
    rec = {r.check_id: r for r in res.records}
    w = {k: r.witnesses for k, r in rec.items()}
    checks = {
        "all records PASS": all(r.verdict == "PASS" for r in res.records),
        "Z2xS3 Ce b0=2, S contractible": w["Z2xS3/Ce-vs-S"]["Ce_reduced_b0"] == 2
        and w["Z2xS3/Ce-vs-S"]["S_status"] == "CERTIFIED",
        "S5 components 5 vs 1": (w["S5/E-vs-S-components"]["E_components"],
                                 w["S5/E-vs-S-components"]["S_components"]) == (5, 1),
        "D8 empty-vs-nonempty": all(rec[k].verdict == "PASS" for k in rec if k.startswith("D8/")),
        "SL(3,2) B empty, I nonempty": w["SL(3,2)/B-vs-I-below-C(S)"]["empty"]
        == {"B/centralizer": True, "I/centralizer": False},
        "A4 and Z6 rows": rec["A4/row-separation"].verdict == rec["Z6/row-separation"].verdict == "PASS",
    }
    dt = time.perf_counter() - t0
    failed = [k for k, v in checks.items() if not v]
    return not failed and dt < 300, f"{len(res.records)} records, failed={failed}, {dt:.1f}s"


def criterion_4():
    fails = [("cyclic:4", 2, "A", "subgroup", 3), ("cyclic:9", 3, "A", "subgroup", 3),
             ("dihedral:8", 2, "Ce", "centralizer", 4)]
    sharp = [("B", "subgroup"), ("S", "subgroup"), ("S", "normalizer"), ("E", "normalizer"),
             ("Z", "centralizer"), ("A", "centralizer")]
    bad, notes = [], []
    for spec, p, kind, type_, n_max in fails:
        t0 = time.perf_counter()
        rep = sharpness_check(group(spec), p, kind, type_, n_max=n_max, i_max=3)
        dt = time.perf_counter() - t0
        f = rep.failure or {}
        ok = rep.verdict == "FAILS" and dt < 60
        if kind == "A":
            ok &= f.get("n") == 1
        else:
            ok &= f.get("source_dim") != f.get("lim0_dim") and f.get("n", 99) <= 4
        notes.append(f"{spec}/{kind}: n={f.get('n')}")
        if not ok:
            bad.append(f"{spec}/{kind}/{type_}")
    for kind, type_ in sharp:
        t0 = time.perf_counter()
        rep = sharpness_check(group("sym:4"), 2, kind, type_, n_max=3, i_max=3)
        if rep.verdict != "SHARP_UP_TO_BOUNDS" or time.perf_counter() - t0 > 60:
            bad.append(f"sym:4/{kind}/{type_}")
    return not bad, f"failures at {', '.join(notes)}; S4 sharp x{len(sharp)}; bad={bad}"


def criterion_5():
    expected = {
        "cyclic:2": [1] * 5, "cyclic:4": [1] * 5, "elemab:2^2": [n + 1 for n in range(5)],
        "dihedral:8": [n + 1 for n in range(5)], "quaternion:8": [1, 2, 2, 1, None],
    }
    bad, audited = [], 0
    for spec, want in expected.items():
        G = group(spec)
        eng = CohomologyEngine(G, 2)
        got = [eng.dim(G.whole, n) for n in range(5)]
        if any(w is not None and w != g for w, g in zip(want, got)):
            bad.append(f"{spec}: {got}")
        if bar_cohomology_dims(G, G.whole, 2, 2) != got[:3]:
            bad.append(f"{spec}: bar complex")
        subs = subgroups_all(G).subgroups
        for H in subs:
            for K in subs:
                if K <= H:
                    for n in range(1, 5):
                        eng.map(K, H, 0, n)
        try:
            audited += eng.audit()
        except AssertionError as e:
            bad.append(f"{spec}: {e}")
    return not bad, f"five groups, n<=4; {audited} cached-map identities verified; bad={bad}"


def criterion_6():
    t0 = time.perf_counter()
    compared, bad = 0, []
    for spec, p in BATTERY:
        G = group(spec)
        for kind in KINDS:
            C = collect(G, p, kind)
            if C.empty:
                continue
            cat = build_orbit_simplex_category(G, C)
            X = order_complex(Poset.from_collection(C))
            for n in range(4):
                F = make_functor("delta", cat, n=n)
                lims = higher_limits(F, 3).dims
                for seed in [None] + list(range(10)):
                    compared += 1
                    if bredon_cohomology(X, F.system, 3, seed=seed) != lims:
                        bad.append(f"{spec}/{kind}/n={n}/seed={seed}")
    dt = time.perf_counter() - t0
    return not bad, f"{compared} comparisons (10 reshuffles each), disagreements={bad[:5]}, {dt:.1f}s"


def criterion_7():
    bad = []
    S4, D8 = group("sym:4"), group("dihedral:8")
    S = collect(S4, 2, "S")
    cert = check_endomorphism(S, endo_sylow_intersection(S))
    if not cert.ok or _sets(cert.image) != _sets(collect(S4, 2, "I")):
        bad.append("Sylow-intersection endomorphism")
    A = collect(D8, 2, "A")
    cert = check_endomorphism(A, endo_Z(A))
    if not cert.ok or _sets(cert.image) != _sets(collect(D8, 2, "Z")):
        bad.append("endo_Z")
    rem = removal_check(S, collect(S4, 2, "B"), 1)
    if not (rem.passed and rem.rows and all(r["certificate"] for r in rem.rows)):
        bad.append("removal S->B")
    for spec, p in BATTERY:
        G = group(spec)
        claims = [closure_check(collect(G, p, "Ce"), "overgroups")[0],
                  closure_check(collect(G, p, "E"), "subgroups")[0],
                  closure_check(collect(G, p, "S"), "overgroups")[0],
                  closure_check(collect(G, p, "S"), "subgroups")[0]]
        if not all(claims):
            bad.append(f"closure on {spec}")
    return not bad, f"endomorphisms, removal ({len(rem.rows)} classes removed), closure on {len(BATTERY)} groups; bad={bad}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


def _report(k: int, ok: bool, detail: str) -> str:
    return f"CRITERION {k}: {'PASS' if ok else 'FAIL'}  ({detail})"


def _run(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + _report(k, ok, detail))
    assert ok, detail


def test_criterion_1_collections_oracle(capsys):
    _run(1, capsys)


def test_criterion_2_positive_lines(capsys):
    _run(2, capsys)


def test_criterion_3_negative_lines(capsys):
    _run(3, capsys)


def test_criterion_4_sharpness(capsys):
    _run(4, capsys)


def test_criterion_5_cohomology_oracle(capsys):
    _run(5, capsys)


def test_criterion_6_bredon_equals_limits(capsys):
    _run(6, capsys)


def test_criterion_7_endomorphisms_removal_closure(capsys):
    _run(7, capsys)


if __name__ == "__main__":
    results = []
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(ok)
        print(_report(k, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
