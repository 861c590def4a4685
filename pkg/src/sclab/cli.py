"""Command-line front end: ``sclab <collections|equivalence|sharpness|counterexamples|group>``.

Exit codes: 0 when every record is PASS, EVIDENCE_PASS, VACUOUS or matches
``--expect``; 1 when any record is FAIL or an unexpected MISMATCH; 2 for usage
errors (bad flags, unparsable group specs, caps).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from .cohomology import DegreeCapError, degree_cap
from .collection import KINDS, collect
from .functors import TYPES, sharpness_check
from .groups import GroupError, check_prime, is_prime, order_cap, sylow_p
from .spec import GroupSpec, build_group
from .topology import (ROWS, SCOPES, TABLE_COLUMNS, TABLE_LINES, Poset, contractibility,
                       equivalence_evidence, reduced_homology, row_indices)

VERDICTS = ("PASS", "FAIL", "EVIDENCE_PASS", "MISMATCH", "VACUOUS", "UNKNOWN")

# inclusions between the nine collections that hold for every finite group
INCLUSIONS = (("BCe", "B"), ("B", "I"), ("I", "S"), ("BCe", "Ce"), ("Ce", "S"),
              ("Z", "A"), ("E", "A"), ("A", "S"), ("D", "BCe"))


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    group: str
    prime: int = 2
    kinds: list[str] = field(default_factory=lambda: list(KINDS))
    rows: list[str] = field(default_factory=lambda: list(ROWS))
    order_cap: int = field(default_factory=order_cap)
    n_max: int = 3
    i_max: int = 3
    output: str = "text"
    seed: int | None = None

    def validate(self) -> None:
        try:
            check_prime(self.prime)
        except GroupError as e:
            raise UsageError(str(e)) from None
        bad = [k for k in self.kinds if k not in KINDS]
        if bad:
            raise UsageError(f"unknown collection kind(s) {bad}; choose from {', '.join(KINDS)}")
        bad = [r for r in (self.rows or []) if r not in ROWS]
        if bad:
            raise UsageError(f"unknown row(s) {bad}; choose from {', '.join(ROWS)}")
        if min(self.order_cap, self.n_max + 1, self.i_max + 1) <= 0:
            raise UsageError("caps must be positive")
        if self.output not in ("text", "json"):
            raise UsageError("output must be text or json")


@dataclass
class CheckRecord:
    check_id: str
    inputs: dict
    verdict: str
    witnesses: dict
    wall_time: float = 0.0
    expected: str | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict {self.verdict!r} not in {VERDICTS}")
        # normalize to JSON-native values so serialization round-trips exactly
        self.inputs = json.loads(json.dumps(self.inputs))
        self.witnesses = json.loads(json.dumps(self.witnesses))

    @property
    def bad(self) -> bool:
        if self.verdict == "FAIL":
            return True
        return self.verdict == "MISMATCH" and self.expected != "MISMATCH"


@dataclass
class SuiteResult:
    command: str
    records: list[CheckRecord]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SuiteResult":
        d = json.loads(text)
        return cls(d["command"], [CheckRecord(**r) for r in d["records"]])

    @property
    def exit_code(self) -> int:
        return 1 if any(r.bad for r in self.records) else 0


def _timed(check_id: str, inputs: dict, fn) -> CheckRecord:
    t0 = time.perf_counter()
    verdict, witnesses = fn()
    return CheckRecord(check_id, inputs, verdict, witnesses, round(time.perf_counter() - t0, 4))


def _group(cfg: RunConfig):
    try:
        return build_group(cfg.group, cap=cfg.order_cap)
    except GroupError as e:
        raise UsageError(str(e)) from None


# -- collections ----------------------------------------------------------------------

def cmd_collections(cfg: RunConfig) -> SuiteResult:
    G = _group(cfg)
    p = cfg.prime
    records = []
    for k in cfg.kinds:
        def run(k=k):
            C = collect(G, p, k)
            if C.empty:
                return "VACUOUS", {"members": 0, "classes": 0}
            return "PASS", {"members": len(C), "classes": len(C.classes),
                            "class_orders": [C.members[i].order for i in C.class_reps]}
        records.append(_timed(f"collections/{k}", {"group": cfg.group, "prime": p, "kind": k}, run))

    def chains():
        failures = []
        for small, big in INCLUSIONS:
            A, B = collect(G, p, small), collect(G, p, big)
            if not {H.mask for H in A.members} <= {H.mask for H in B.members}:
                failures.append(f"{small} not inside {big}")
        if all(collect(G, p, k).empty for k in KINDS):
            return "VACUOUS", {"checked": len(INCLUSIONS)}
        return ("FAIL" if failures else "PASS"), {"checked": len(INCLUSIONS), "failures": failures}
    records.append(_timed("collections/inclusions", {"group": cfg.group, "prime": p}, chains))
    return SuiteResult("collections", records)


# -- equivalence ----------------------------------------------------------------------

def cmd_equivalence(cfg: RunConfig, pair: tuple[str, str] | None, row: str | None,
                    right_row: str | None, scope: str, table: bool,
                    expect: str | None = None) -> SuiteResult:
    G = _group(cfg)
    p = cfg.prime
    records = []
    if table:
        for line in TABLE_LINES:
            if line.left[0] not in cfg.kinds or line.right[0] not in cfg.kinds:
                continue
            C1, C2 = collect(G, p, line.left[0]), collect(G, p, line.right[0])

            def run(line=line, C1=C1, C2=C2):
                r = equivalence_evidence(C1, C2, line.left[1], line.scope, line.right[1])
                return r.verdict, {"strength": line.strength, "witness": r.witness,
                                   "probes": len(r.rows)}
            records.append(_timed(f"line/{line.label()}",
                                  {"group": cfg.group, "prime": p, "scope": line.scope}, run))
        return SuiteResult("equivalence", records)
    if pair is None or row is None:
        raise UsageError("equivalence needs --pair and --row (or --table)")
    if row not in ROWS or (right_row and right_row not in ROWS):
        raise UsageError(f"unsupported row; choose from {', '.join(ROWS)}")
    if scope not in SCOPES:
        raise UsageError(f"unsupported scope; choose from {', '.join(SCOPES)}")
    for k in pair:
        if k not in KINDS:
            raise UsageError(f"unknown collection kind {k!r}")
    C1, C2 = collect(G, p, pair[0]), collect(G, p, pair[1])

    def run():
        r = equivalence_evidence(C1, C2, row, scope, right_row)
        w = {"witness": r.witness, "rows": r.rows,
             "components": [[x["left_betti"]["components"], x["right_betti"]["components"]]
                            for x in r.rows]}
        return r.verdict, w
    rec = _timed("equivalence", {"group": cfg.group, "prime": p, "pair": list(pair), "row": row,
                                 "right_row": right_row or row, "scope": scope}, run)
    rec.expected = expect
    return SuiteResult("equivalence", [rec])


# -- sharpness ------------------------------------------------------------------------

SHARPNESS_VERDICT = {"SHARP_UP_TO_BOUNDS": "EVIDENCE_PASS", "FAILS": "MISMATCH",
                     "VACUOUS": "VACUOUS"}


def cmd_sharpness(cfg: RunConfig, kind: str, type_: str, expect: str | None = None) -> SuiteResult:
    if kind not in KINDS:
        raise UsageError(f"unknown collection kind {kind!r}")
    if type_ not in TYPES:
        raise UsageError(f"unknown type {type_!r}; choose from {', '.join(TYPES)}")
    G = _group(cfg)
    cap = degree_cap()
    n_max, i_max = min(cfg.n_max, cap), min(cfg.i_max, cap)
    partial = (n_max, i_max) != (cfg.n_max, cfg.i_max)

    def run():
        r = sharpness_check(G, cfg.prime, kind, type_, n_max, i_max)
        w = r.to_json()
        w["sharpness"] = r.verdict
        if partial:
            w["partial"] = {"requested": [cfg.n_max, cfg.i_max], "computed": [n_max, i_max],
                            "degree_cap": cap}
        if cfg.seed is not None and type_ == "normalizer":
            from .functors import CohomologySystem, bredon_cohomology
            from .topology import order_complex
            C = collect(G, cfg.prime, kind)
            X = order_complex(Poset.from_collection(C))
            w["reshuffled_bredon_agrees"] = all(
                bredon_cohomology(X, CohomologySystem(G, cfg.prime, rec["n"]), i_max, cfg.seed)
                == rec["dims"] for rec in r.records)
        return SHARPNESS_VERDICT[r.verdict], w
    rec = _timed("sharpness", {"group": cfg.group, "prime": cfg.prime, "kind": kind,
                               "type": type_, "n_max": cfg.n_max, "i_max": cfg.i_max}, run)
    if expect:
        rec.expected = "MISMATCH" if expect.upper() in ("FAILS", "MISMATCH") else expect.upper()
    return SuiteResult("sharpness", [rec])


# -- counterexamples ------------------------------------------------------------------

D_GROUP = "semidirect(product(elemab:2^2,cyclic:3),cyclic:2,x2 x1 x3^-1)"


def _row_size(G, p, kind, H, row) -> int:
    return len(row_indices(collect(G, p, kind), H, row))


def _empties(G, p, H, empty: list[tuple[str, str]], nonempty: list[tuple[str, str]]):
    sizes = {f"{k}/{r}": _row_size(G, p, k, H, r) for k, r in empty + nonempty}
    ok = all(sizes[f"{k}/{r}"] == 0 for k, r in empty) and \
        all(sizes[f"{k}/{r}"] > 0 for k, r in nonempty)
    return ("PASS" if ok else "FAIL"), {"H_order": H.order, "sizes": sizes,
                                        "empty": {key: n == 0 for key, n in sizes.items()}}


def _prime_with_root(p: int) -> tuple[int, int]:
    """Smallest prime q = 1 mod p, and the smallest r of multiplicative order p mod q."""
    q = p + 1
    while not (is_prime(q) and q % p == 1):
        q += 1
    r = next(r for r in range(2, q) if pow(r, p, q) == 1)
    return q, r


def _power(r: int, q: int) -> str:
    return "-1" if r == q - 1 else str(r)


def battery_groups(p: int) -> dict[str, tuple[str, str | None, int]]:
    """role -> (label, spec or None, order) for the counterexample families at the prime p."""
    q, r = _prime_with_root(p)
    qq = 2 if p != 2 else 3                    # a prime different from p
    perm = " ".join(f"x{i % p + 1}" for i in range(1, p + 1))
    d_group = f"semidirect(product(elemab:{p}^{p},cyclic:{q}),cyclic:{p},{perm} x{p + 1}^{_power(r, q)})"
    if p == 2:
        ce_spec, ce_label = "product(cyclic:2,sym:3)", "Z2xS3"
        rows_spec, rows_label, rows_order = "alt:4", "A4", 12
    else:
        ce_spec = f"product(cyclic:{p},semidirect(cyclic:{q},cyclic:{p},x1^{_power(r, q)}))"
        ce_label = f"Z{p}x(Z{q}:Z{p})"
        # Z/p : Z/t with t | p - 1, acting faithfully
        t = min(d for d in range(2, p) if (p - 1) % d == 0 and is_prime(d))
        u = next(u for u in range(2, p) if pow(u, t, p) == 1)
        rows_spec, rows_label = f"semidirect(cyclic:{p},cyclic:{t},x1^{_power(u, p)})", f"Z{p}:Z{t}"
        rows_order = p * t
    return {
        "D-group": ("D-group", d_group, p ** (p + 1) * q),
        "ce": (ce_label, ce_spec, p * p * q),
        "e": ("S5" if p == 2 else f"SL2(F{p * p}):Z{p}", "sym:5" if p == 2 else None,
              p ** 3 * (p ** 4 - 1)),
        "D": ("D8" if p == 2 else f"{p}^(1+2)", "dihedral:8" if p == 2 else f"extraspecial:{p}", p ** 3),
        "SL3": (f"SL(3,{p})", "SL:3,2" if p == 2 else None, p ** 3 * (p ** 2 - 1) * (p ** 3 - 1)),
        "rows": (rows_label, rows_spec, rows_order),
        "product": (f"Z{p * qq}", f"cyclic:{p * qq}", p * qq),
        "cyclic": (f"Z{p * p}", f"cyclic:{p * p}", p * p),
    }


def counterexample_battery(p: int = 2):
    """(check_id, group spec or None, callable(G) -> (verdict, witnesses), order) for the battery.

    A spec of None marks a family that has no constructor at this prime; it is
    reported as UNKNOWN together with the group order.
    """
    from .groups import is_abelian, is_elementary_abelian, subgroups_all
    try:
        check_prime(p)
    except GroupError as e:
        raise UsageError(str(e)) from None
    fam = battery_groups(p)
    q, _ = _prime_with_root(p)

    def d_group(G):
        out, ok = {}, True
        for k, want in (("D", "NOT_CONTRACTIBLE"), ("S", "CERTIFIED"), ("Ce", "CERTIFIED"),
                        ("E", "CERTIFIED")):
            P = Poset.from_collection(collect(G, p, k))
            res = contractibility(P, p)
            h = reduced_homology(P, p)
            out[k] = {"status": res.status, "betti_mod_p": {str(a): b for a, b in h.betti_mod_p.items()}}
            ok &= res.status == want
        return ("PASS" if ok else "FAIL"), out

    def ce_vs_s(G):
        hc = reduced_homology(Poset.from_collection(collect(G, p, "Ce")), p)
        s = contractibility(Poset.from_collection(collect(G, p, "S")), p)
        # the q Sylow subgroups are the centric ones and pairwise incomparable: b~_0 = q - 1
        ok = hc.betti_mod_p.get(0) == q - 1 and s.status == "CERTIFIED"
        return ("PASS" if ok else "FAIL"), {"Ce_reduced_b0": hc.betti_mod_p.get(0, 0),
                                            "Ce_components": hc.betti_mod_p.get(0, 0) + 1,
                                            "S_status": s.status}

    def e_vs_s(G):
        ce = Poset.from_collection(collect(G, p, "E")).components()
        cs = Poset.from_collection(collect(G, p, "S")).components()
        # one component per Sylow p-subgroup of SL_2(F_{p^2})
        ok = (ce, cs) == (p * p + 1, 1)
        return ("PASS" if ok else "FAIL"), {"E_components": ce, "S_components": cs}

    def d_sylow(G):
        return _empties(G, p, G.whole,
                        [("BCe", "centralizer"), ("Ce", "centralizer")], [("Ce", "normalizer")])

    def d_maxab(G):
        subs = subgroups_all(G).subgroups
        abel = [H for H in subs if is_abelian(G, H)]
        H = next(H for H in abel if not any(H < K for K in abel))
        return _empties(G, p, H, [("BCe", "centralizer")], [("Ce", "centralizer")])

    def d_e(G):
        return _empties(G, p, G.whole, [("E", "subgroup")], [("E", "normalizer")])

    def d_rank2(G):
        H = next(H for H in subgroups_all(G).subgroups
                 if H.order == p * p and is_elementary_abelian(G, H, p))
        return _empties(G, p, H, [("B", "centralizer"), ("I", "centralizer")],
                        [("A", "subgroup"), ("A", "normalizer")])

    def d_a(G):
        return _empties(G, p, G.whole, [("A", "subgroup")], [("A", "normalizer")])

    def d_d(G):
        return _empties(G, p, G.whole, [("D", "centralizer")], [("D", "normalizer"), ("D", "subgroup")])

    def sl3(G):
        return _empties(G, p, sylow_p(G, p), [("B", "centralizer")], [("I", "centralizer")])

    def rows_nonabelian(G):
        return _empties_all(G, [("subgroup",), ("centralizer",)], [("normalizer",)])

    def rows_product(G):
        return _empties_all(G, [("subgroup",)], [("centralizer",), ("normalizer",)])

    def _empties_all(G, empty, nonempty):
        out, ok = {}, True
        for k in KINDS:
            v, w = _empties(G, p, G.whole, [(k, r) for (r,) in empty], [(k, r) for (r,) in nonempty])
            out[k] = w["sizes"]
            ok &= v == "PASS"
        return ("PASS" if ok else "FAIL"), out

    def cyclic_sharp(G):
        r = sharpness_check(G, p, "A", "subgroup", 2, 2)
        ok = r.verdict == "FAILS" and r.failure["n"] == 1 and r.failure["i"] == 0
        return ("PASS" if ok else "FAIL"), {"sharpness": r.verdict, "failure": r.failure}

    def entry(role, suffix, fn):
        label, spec, order = fam[role]
        return (f"{label}/{suffix}", spec, fn, order)

    return [
        entry("D-group", "contractibility", d_group),
        entry("ce", "Ce-vs-S", ce_vs_s),
        entry("e", "E-vs-S-components", e_vs_s),
        entry("D", "BCe,Ce-below-C(S)", d_sylow),
        entry("D", "BCe-below-C(maximal-abelian)", d_maxab),
        entry("D", "E-above-S", d_e),
        entry("D", "B,I-below-C(rank-2)", d_rank2),
        entry("D", "A-above-S", d_a),
        entry("D", "D-below-C(S)", d_d),
        entry("SL3", "B-vs-I-below-C(S)", sl3),
        entry("rows", "row-separation", rows_nonabelian),
        entry("product", "row-separation", rows_product),
        entry("cyclic", "A-subgroup-sharpness", cyclic_sharp),
    ]


def cmd_counterexamples(p: int = 2, only: str | None = None) -> SuiteResult:
    records = []
    cap = order_cap()
    for check_id, spec, fn, order in counterexample_battery(p):
        if only and only not in check_id:
            continue
        if spec is None or order > cap:
            why = (f"order {order} exceeds the order cap {cap}" if order > cap
                   else f"no group spec constructs this family at p={p}")
            records.append(CheckRecord(check_id, {"group": spec, "prime": p}, "UNKNOWN",
                                       {"skipped": why, "order": order}, 0.0))
            continue
        G = build_group(spec, cap=cap)
        records.append(_timed(check_id, {"group": spec, "prime": p}, lambda fn=fn, G=G: fn(G)))
    return SuiteResult("counterexamples", records)


# -- group ----------------------------------------------------------------------------

def cmd_group(cfg: RunConfig) -> SuiteResult:
    from .groups import center, subgroups_all

    def run():
        G = _group(cfg)
        lat = subgroups_all(G)
        S = sylow_p(G, cfg.prime)
        return "PASS", {"order": G.order, "generators": G.generators(G.whole),
                        "center_order": center(G, G.whole).order, "sylow_order": S.order,
                        "subgroups": len(lat.subgroups), "subgroup_classes": len(lat.classes),
                        "spec": str(GroupSpec.parse(cfg.group))}
    return SuiteResult("group", [_timed("group", {"group": cfg.group, "prime": cfg.prime}, run)])


# -- rendering ------------------------------------------------------------------------

def render_text(result: SuiteResult) -> str:
    lines = []
    if result.command == "equivalence" and len(result.records) > 1:
        lines += _render_table(result)
    for r in result.records:
        extra = ""
        w = r.witnesses
        if "members" in w:
            extra = f"members={w['members']} classes={w['classes']}"
        elif "sharpness" in w:
            extra = w["sharpness"]
            if w.get("failure"):
                extra += " at " + ", ".join(f"{k}={v}" for k, v in w["failure"].items())
        elif "components" in w:
            extra = "components " + " ".join(f"{a}/{b}" for a, b in w["components"])
        elif "skipped" in w:
            extra = w["skipped"]
        elif "sylow_order" in w:
            extra = (f"order={w['order']} sylow={w['sylow_order']} center={w['center_order']} "
                     f"subgroups={w['subgroups']} classes={w['subgroup_classes']}")
        elif "failures" in w:
            extra = "; ".join(w["failures"]) or f"{w['checked']} inclusions hold"
        exp = f" (expected {r.expected})" if r.expected else ""
        lines.append(f"{r.verdict:<14} {r.check_id:<42} {extra}{exp}  [{r.wall_time:.2f}s]")
    return "\n".join(lines)


def _render_table(result: SuiteResult) -> list[str]:
    """Rows |EO|, |C|, |EA| with a mark between adjacent columns where a line was tested."""
    mark = {"EVIDENCE_PASS": "ok", "MISMATCH": "XX"}
    found = {}
    for r in result.records:
        if r.check_id.startswith("line/"):
            found[r.check_id[5:]] = mark.get(r.verdict, "??")
    by_label = {ln.label(): ln for ln in TABLE_LINES}
    names = {"subgroup": "|EO|", "normalizer": "|C| ", "centralizer": "|EA|"}
    out = []
    for i, row in enumerate(ROWS):
        cells = []
        for j, k in enumerate(TABLE_COLUMNS):
            cells.append(f"{k:>3}")
            if j + 1 < len(TABLE_COLUMNS):
                nxt = TABLE_COLUMNS[j + 1]
                lab = next((lb for lb, ln in by_label.items()
                            if ln.left == (k, row) and ln.right == (nxt, row)), None)
                cells.append(f"-{found[lab]}-" if lab in found else "    ")
        out.append(f"{names[row]}  " + "".join(cells))
        if i + 1 < len(ROWS):
            vert = []
            for k in TABLE_COLUMNS:
                lab = next((lb for lb, ln in by_label.items()
                            if ln.left == (k, row) and ln.right == (k, ROWS[i + 1])), None)
                vert.append(f"{found.get(lab, ''):>3}    ")
            out.append("      " + "".join(vert))
    return out + [""]


# -- argument parsing ---------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sclab", description="p-subgroup collections, "
                                 "their posets, and higher limits on small finite groups")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp, kinds=True):
        sp.add_argument("--group", required=True, help="group spec, e.g. sym:4 or dihedral:8")
        sp.add_argument("--prime", type=int, default=2)
        if kinds:
            sp.add_argument("--kinds", default=",".join(KINDS))
        sp.add_argument("--order-cap", type=int, default=None)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--seed", type=int, default=None)

    common(sub.add_parser("collections", help="members and classes of each collection"))
    eq = sub.add_parser("equivalence", help="fixed-point evidence for a line of the table")
    common(eq)
    eq.add_argument("--pair", help="two kinds, e.g. B,S")
    eq.add_argument("--row", choices=ROWS)
    eq.add_argument("--right-row", choices=ROWS, default=None)
    eq.add_argument("--scope", choices=SCOPES, default="full")
    eq.add_argument("--table", action="store_true", help="test every line of the table")
    eq.add_argument("--expect", choices=["EVIDENCE_PASS", "MISMATCH"], default=None)
    sh = sub.add_parser("sharpness", help="bounded sharpness check")
    common(sh, kinds=False)
    sh.add_argument("--kind", required=True, choices=KINDS)
    sh.add_argument("--type", required=True, choices=TYPES, dest="type_")
    sh.add_argument("--nmax", type=int, default=3)
    sh.add_argument("--imax", type=int, default=3)
    sh.add_argument("--expect", choices=["SHARP_UP_TO_BOUNDS", "FAILS"], default=None)
    cx = sub.add_parser("counterexamples", help="the fixed counterexample battery")
    cx.add_argument("--prime", type=int, default=2)
    cx.add_argument("--only", default=None, help="substring filter on check ids")
    cx.add_argument("--json", action="store_true")
    common(sub.add_parser("group", help="basic facts about a group spec"), kinds=False)
    return ap


def run(argv: list[str]) -> tuple[SuiteResult, bool]:
    ap = _parser()
    a = ap.parse_args(argv)
    if a.cmd == "counterexamples":
        return cmd_counterexamples(a.prime, a.only), a.json
    cfg = RunConfig(group=a.group, prime=a.prime,
                    kinds=a.kinds.split(",") if getattr(a, "kinds", None) else list(KINDS),
                    order_cap=a.order_cap or order_cap(),
                    n_max=getattr(a, "nmax", 3), i_max=getattr(a, "imax", 3),
                    output="json" if a.json else "text", seed=a.seed)
    cfg.validate()
    if a.cmd == "collections":
        return cmd_collections(cfg), a.json
    if a.cmd == "equivalence":
        pair = tuple(a.pair.split(",")) if a.pair else None
        if pair is not None and len(pair) != 2:
            raise UsageError("--pair takes exactly two kinds")
        return cmd_equivalence(cfg, pair, a.row, a.right_row, a.scope, a.table, a.expect), a.json
    if a.cmd == "sharpness":
        return cmd_sharpness(cfg, a.kind, a.type_, a.expect), a.json
    return cmd_group(cfg), a.json


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        result, as_json = run(argv)
    except (UsageError, DegreeCapError) as e:
        print(f"sclab: error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:          # argparse
        return int(e.code) if isinstance(e.code, int) else 2
    print(result.to_json() if as_json else render_text(result))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
