"""Finite posets, their order complexes, homology, and contraction certificates.

A poset is stored as a boolean order matrix ``leq`` (``leq[i, j]`` means
element i <= element j).  Posets built from a collection keep the collection's
member Subgroups as elements and, when the element set is conjugation-stable,
the induced action of G by permutations of the elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from .collection import Collection
from .groups import (
    GroupError, GroupTable, Subgroup, centralizer, check_prime, frattini, normalizer, o_p,
    subgroups_all, sylow_p,
)

ROWS = ("subgroup", "normalizer", "centralizer")
SCOPES = ("plain", "sylow", "full")


# -- posets -----------------------------------------------------------------------

@dataclass
class Poset:
    elements: list
    leq: np.ndarray = field(repr=False)
    action: np.ndarray | None = field(default=None, repr=False)   # (|G|, n) images
    group: GroupTable | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def lt(self) -> np.ndarray:
        return self.leq & ~np.eye(len(self), dtype=bool)

    @classmethod
    def from_collection(cls, C: Collection) -> "Poset":
        return cls(list(C.members), C.leq.copy(), C.action.copy(), C.G)

    @classmethod
    def from_relation(cls, elements, leq) -> "Poset":
        return cls(list(elements), np.asarray(leq, dtype=bool))

    def validate(self) -> None:
        n = len(self)
        L = self.leq
        if L.shape != (n, n):
            raise ValueError("order matrix has the wrong shape")
        if n == 0:
            return
        if not L.diagonal().all():
            raise ValueError("order is not reflexive")
        if (L & L.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("order is not antisymmetric")
        Li = L.astype(np.int64)
        if ((Li @ Li > 0) & ~L).any():
            raise ValueError("order is not transitive")
        if self.action is not None:
            for row in self.action:
                if not (L[np.ix_(row, row)] == L).all():
                    raise ValueError("action does not preserve the order")

    def index_of(self, h) -> int:
        key = h.mask if isinstance(h, Subgroup) else h
        for i, e in enumerate(self.elements):
            if (e.mask if isinstance(e, Subgroup) else e) == key:
                return i
        raise KeyError(h)

    def restrict(self, idx) -> "Poset":
        """Induced subposet on the given element indices (kept in the given order)."""
        idx = [int(i) for i in idx]
        sub = self.leq[np.ix_(idx, idx)] if idx else np.zeros((0, 0), dtype=bool)
        action = None
        if self.action is not None and idx:
            pos = -np.ones(len(self), dtype=np.int64)
            pos[idx] = np.arange(len(idx))
            img = pos[self.action[:, idx]]
            if (img >= 0).all():
                action = img
        return Poset([self.elements[i] for i in idx], sub, action, self.group)

    def strictly_below(self, x: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.lt[:, x])]

    def strictly_above(self, x: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.lt[x])]

    def opposite(self) -> "Poset":
        return Poset(list(self.elements), self.leq.T.copy(), self.action, self.group)

    def components(self) -> int:
        """Number of connected components of the comparability graph."""
        n = len(self)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in zip(*np.nonzero(self.lt)):
            ri, rj = find(int(i)), find(int(j))
            if ri != rj:
                parent[ri] = rj
        return len({find(i) for i in range(n)})


def join(X: Poset, Y: Poset) -> Poset:
    """Disjoint union with every element of X below every element of Y."""
    n, m = len(X), len(Y)
    leq = np.zeros((n + m, n + m), dtype=bool)
    leq[:n, :n] = X.leq
    leq[n:, n:] = Y.leq
    leq[:n, n:] = True
    return Poset([("L", e) for e in X.elements] + [("R", e) for e in Y.elements], leq)


def link(P: Poset, x: int) -> Poset:
    """link(x) = P_<x * P_>x, checked against the induced subposet on the link."""
    lo, hi = P.strictly_below(x), P.strictly_above(x)
    joined = join(P.restrict(lo), P.restrict(hi))
    induced = P.restrict(lo + hi)
    if not (induced.leq == joined.leq).all():
        raise AssertionError("link is not the join of the lower and upper parts")
    return induced


def star(P: Poset, x: int) -> Poset:
    lo, hi = P.strictly_below(x), P.strictly_above(x)
    return P.restrict(lo + [x] + hi)


# -- order complexes ---------------------------------------------------------------

@dataclass
class OrderComplex:
    poset: Poset
    simplices_by_dim: list[list[tuple[int, ...]]]
    orbit_reps: list[list[tuple[tuple[int, ...], np.ndarray]]] | None = None

    @property
    def dim(self) -> int:
        return len(self.simplices_by_dim) - 1

    def counts(self) -> list[int]:
        return [len(s) for s in self.simplices_by_dim]

    def simplex_image(self, g: int, sigma: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(int(self.poset.action[g, v]) for v in sigma)

    def stabilizer(self, sigma: tuple[int, ...]) -> np.ndarray:
        """Elements fixing the chain; equals the intersection of the vertex stabilizers."""
        act = self.poset.action
        return np.flatnonzero((act[:, list(sigma)] == np.asarray(sigma)).all(axis=1))


def order_complex(P: Poset, with_orbits: bool = True) -> OrderComplex:
    """All strict chains x0 < x1 < ... < xk, grouped by k."""
    P.validate()
    n = len(P)
    lt = P.lt
    ups = [np.flatnonzero(lt[i]).tolist() for i in range(n)]
    by_dim: list[list[tuple[int, ...]]] = []
    layer = [(i,) for i in range(n)]
    while layer:
        by_dim.append(sorted(layer))
        layer = [s + (j,) for s in layer for j in ups[s[-1]]]
    X = OrderComplex(P, by_dim)
    if with_orbits and P.action is not None:
        reps = []
        for simplices in by_dim:
            seen: set = set()
            level = []
            arr = np.asarray(simplices, dtype=np.int64)
            imgs = P.action[:, arr]              # (|G|, count, k+1)
            for t, s in enumerate(simplices):
                if s in seen:
                    continue
                orbit = {tuple(r) for r in imgs[:, t, :].tolist()}
                seen |= orbit
                level.append((s, X.stabilizer(s)))
            reps.append(level)
        X.orbit_reps = reps
    return X


# -- homology ----------------------------------------------------------------------

def _invariant_factors(rows: list[dict[int, int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix given as sparse rows.

    Unit pivots are eliminated sparsely first; what is left goes through a
    dense Smith normal form.
    """
    work = [dict(r) for r in rows if r]
    by_col: dict[int, set[int]] = {}
    for i, r in enumerate(work):
        for c in r:
            by_col.setdefault(c, set()).add(i)
    alive = set(range(len(work)))
    factors: list[int] = []
    progress = True
    while progress:
        progress = False
        best = None
        for i in alive:
            r = work[i]
            for c, v in r.items():
                if v in (1, -1):
                    cost = len(r) * len(by_col[c])
                    if best is None or cost < best[0]:
                        best = (cost, i, c)
        if best is None:
            break
        _, i, c = best
        row = work[i]
        s = row[c]
        for k in list(by_col[c]):
            if k == i or k not in alive:
                continue
            other = work[k]
            f = other[c] * s
            for cc, vv in row.items():
                nv = other.get(cc, 0) - f * vv
                if nv:
                    if cc not in other:
                        by_col.setdefault(cc, set()).add(k)
                    other[cc] = nv
                elif cc in other:
                    del other[cc]
                    by_col[cc].discard(k)
        for cc in row:
            by_col[cc].discard(i)
        alive.discard(i)
        factors.append(1)
        progress = True
    rest = [work[i] for i in sorted(alive) if work[i]]
    if rest:
        cols = sorted({c for r in rest for c in r})
        pos = {c: j for j, c in enumerate(cols)}
        dense = [[0] * len(cols) for _ in rest]
        for a, r in enumerate(rest):
            for c, v in r.items():
                dense[a][pos[c]] = v
        factors.extend(smith_diagonal(dense))
    return sorted(factors)


def smith_diagonal(m: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of a dense integer matrix."""
    a = [row[:] for row in m]
    rows, cols = len(a), len(a[0]) if a else 0
    out = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must divide every remaining entry
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % piv), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nz = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            nz += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(nz)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


@dataclass
class HomologyReport:
    """Reduced homology; keys are degrees starting at -1, zero entries omitted."""

    prime: int
    betti_integral: dict[int, int]
    torsion: dict[int, list[int]]
    betti_mod_p: dict[int, int]
    euler: int

    @property
    def acyclic(self) -> bool:
        return not self.betti_integral and not self.torsion and not self.betti_mod_p

    def key(self) -> tuple:
        return (tuple(sorted(self.betti_integral.items())),
                tuple(sorted((k, tuple(v)) for k, v in self.torsion.items())),
                tuple(sorted(self.betti_mod_p.items())))

    def to_json(self) -> dict:
        return {"betti_integral": {str(k): v for k, v in self.betti_integral.items()},
                "torsion": {str(k): v for k, v in self.torsion.items()},
                "betti_mod_p": {str(k): v for k, v in self.betti_mod_p.items()},
                "euler": self.euler, "prime": self.prime}


def reduced_homology(X, p: int) -> HomologyReport:
    """Integral (via Smith normal form) and mod-p reduced homology of a complex or poset."""
    check_prime(p)
    if isinstance(X, Poset):
        X = order_complex(X, with_orbits=False)
    simp = X.simplices_by_dim
    # augmented chain complex: C_{-1} = Z, d_0 = augmentation
    sizes = [1] + [len(s) for s in simp]            # sizes[k+1] = rank of C_k
    factors: list[list[int]] = [[] for _ in range(len(sizes) + 1)]   # factors[k+1] for d_k
    if simp:
        factors[1] = [1]
    for k in range(1, len(simp)):
        index = {s: i for i, s in enumerate(simp[k - 1])}
        rows = []
        for s in simp[k]:
            r = {}
            for i in range(k + 1):
                r[index[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
            rows.append(r)
        factors[k + 1] = _invariant_factors(rows)
    bi, tor, bp = {}, {}, {}
    euler = 0
    for k in range(-1, len(simp)):
        n_k = sizes[k + 1]
        d_out = factors[k + 1]                        # d_k: C_k -> C_{k-1}
        d_in = factors[k + 2] if k + 2 < len(factors) else []
        free = n_k - len(d_out) - len(d_in)
        modp = n_k - sum(1 for d in d_out if d % p) - sum(1 for d in d_in if d % p)
        t = [d for d in d_in if d > 1]
        if free:
            bi[k] = free
        if t:
            tor[k] = t
        if modp:
            bp[k] = modp
        euler += (-1) ** k * n_k if k >= 0 else -n_k
    return HomologyReport(p, bi, tor, bp, euler)


# -- contraction certificates ----------------------------------------------------

@dataclass
class ContractionCertificate:
    """Zig-zag of monotone maps from the identity to a constant map.

    Each step is comparable to the previous map (starting from the identity)
    in the stated direction: GE means step(x) >= previous(x) for every x.
    """

    steps: list[tuple[np.ndarray, str]]
    terminal: int

    def to_json(self) -> dict:
        return {"steps": [{"map": [int(v) for v in f], "direction": d} for f, d in self.steps],
                "terminal": int(self.terminal)}

    @classmethod
    def from_json(cls, data: dict) -> "ContractionCertificate":
        return cls([(np.asarray(s["map"], dtype=np.int64), s["direction"]) for s in data["steps"]],
                   int(data["terminal"]))


def verify_certificate(P: Poset, cert: ContractionCertificate) -> bool:
    n = len(P)
    if n == 0 or not 0 <= cert.terminal < n:
        return False
    prev = np.arange(n)
    L = P.leq
    for f, direction in cert.steps:
        f = np.asarray(f, dtype=np.int64)
        if f.shape != (n,) or (f < 0).any() or (f >= n).any():
            raise ValueError("certificate step is not an endomorphism of the poset")
        if not L[np.ix_(f, f)][L].all():
            return False
        if direction == "GE":
            ok = L[prev, f].all()
        elif direction == "LE":
            ok = L[f, prev].all()
        else:
            return False
        if not ok:
            return False
        prev = f
    return bool((prev == cert.terminal).all())


def certificate_from_maps(P: Poset, maps) -> ContractionCertificate:
    """Package element-level maps (callables on elements) as a certificate."""
    n = len(P)
    prev = np.arange(n)
    steps = []
    for fn in maps:
        f = np.array([P.index_of(fn(e)) for e in P.elements], dtype=np.int64)
        if P.leq[prev, f].all():
            steps.append((f, "GE"))
        elif P.leq[f, prev].all():
            steps.append((f, "LE"))
        else:
            raise ValueError("map is not comparable to the previous step")
        prev = f
    return ContractionCertificate(steps, int(prev[0]) if n else -1)


def core_reduction(P: Poset) -> tuple[list[int], ContractionCertificate]:
    """Delete beat points until none remain.

    Returns the surviving indices and the zig-zag that retracts P onto them
    (its last map is constant exactly when one point survives).
    """
    n = len(P)
    lt = P.lt
    alive = np.ones(n, dtype=bool)
    current = np.arange(n)
    steps = []
    changed = True
    while changed and alive.sum() > 1:
        changed = False
        for x in np.flatnonzero(alive):
            up = np.flatnonzero(lt[x] & alive)
            if up.size:
                mins = up[~lt[np.ix_(up, up)].any(axis=0)]
                if mins.size == 1:
                    target, direction = int(mins[0]), "GE"
                else:
                    target = None
            else:
                target = None
            if target is None:
                down = np.flatnonzero(lt[:, x] & alive)
                if down.size:
                    maxs = down[~lt[np.ix_(down, down)].any(axis=1)]
                    if maxs.size == 1:
                        target, direction = int(maxs[0]), "LE"
            if target is None:
                continue
            alive[x] = False
            current = np.where(current == x, target, current)
            steps.append((current.copy(), direction))
            changed = True
            break
    survivors = [int(i) for i in np.flatnonzero(alive)]
    terminal = survivors[0] if len(survivors) == 1 else -1
    return survivors, ContractionCertificate(steps, terminal)


@dataclass
class ContractibilityResult:
    status: str          # CERTIFIED | NOT_CONTRACTIBLE | UNKNOWN
    certificate: ContractionCertificate | None = None
    homology: HomologyReport | None = None
    core_size: int = 0


def contractibility(P: Poset, p: int = 2) -> ContractibilityResult:
    if len(P) == 0:
        return ContractibilityResult("NOT_CONTRACTIBLE", None, reduced_homology(P, p), 0)
    survivors, cert = core_reduction(P)
    if len(survivors) == 1:
        return ContractibilityResult("CERTIFIED", cert, None, 1)
    core = P.restrict(survivors)
    if core.components() > 1:
        return ContractibilityResult("NOT_CONTRACTIBLE", None, reduced_homology(core, p),
                                     len(survivors))
    h = reduced_homology(core, p)
    status = "UNKNOWN" if h.acyclic else "NOT_CONTRACTIBLE"
    return ContractibilityResult(status, None, h, len(survivors))


def homology_via_core(P: Poset, p: int) -> HomologyReport:
    """Reduced homology computed on the core, which has the same homotopy type."""
    if len(P) == 0:
        return reduced_homology(P, p)
    survivors, _ = core_reduction(P)
    return reduced_homology(P.restrict(survivors), p)


# -- subposets attached to a collection ------------------------------------------

def fixed_indices(C: Collection, H: Subgroup) -> list[int]:
    """Members normalized by H."""
    gens = C.G.generators(H)
    if not gens:
        return list(range(len(C)))
    ok = (C.action[gens] == np.arange(len(C))).all(axis=0)
    return [int(i) for i in np.flatnonzero(ok)]


def above_indices(C: Collection, H: Subgroup) -> list[int]:
    return [i for i, Q in enumerate(C.members) if H <= Q]


def below_centralizer_indices(C: Collection, H: Subgroup) -> list[int]:
    cent = centralizer(C.G, H)
    return [i for i, Q in enumerate(C.members) if Q <= cent]


def row_indices(C: Collection, H: Subgroup, row: str) -> list[int]:
    if row == "subgroup":
        return above_indices(C, H)
    if row == "normalizer":
        return fixed_indices(C, H)
    if row == "centralizer":
        return below_centralizer_indices(C, H)
    raise ValueError(f"unknown row {row!r}; expected one of {', '.join(ROWS)}")


def sub_posets(C: Collection, H: Subgroup) -> dict[str, Poset]:
    P = Poset.from_collection(C)
    return {"fixed": P.restrict(fixed_indices(C, H)),
            "above": P.restrict(above_indices(C, H)),
            "below_centralizer": P.restrict(below_centralizer_indices(C, H))}


def row_poset(C: Collection, H: Subgroup, row: str) -> Poset:
    return Poset.from_collection(C).restrict(row_indices(C, H, row))


# -- explicit zig-zags ---------------------------------------------------------------

def normalizer_zigzag(C: Collection, P: Subgroup) -> tuple[Poset, ContractionCertificate]:
    """Q >= N_Q(P) <= N_Q(P) O_p(N_G(P)) >= O_p(N_G(P)) on C_{>P}."""
    G = C.G
    X = Poset.from_collection(C).restrict([i for i, Q in enumerate(C.members) if P < Q])
    O = o_p(G, C.p, within=normalizer(G, P))
    if not P < O:
        raise GroupError("P is radical: O_p(N_G(P)) does not lie strictly above P")
    cert = certificate_from_maps(X, [
        lambda Q: normalizer(G, P, within=Q),
        lambda Q: G.join(normalizer(G, P, within=Q), O),
        lambda Q: O,
    ])
    return X, cert


def frattini_zigzag(C: Collection, P: Subgroup) -> tuple[Poset, ContractionCertificate]:
    """Q <= Phi(P) Q >= Phi(P) on C_{<P}."""
    G = C.G
    X = Poset.from_collection(C).restrict([i for i, Q in enumerate(C.members) if Q < P])
    F = frattini(G, P, C.p)
    if F.order == 1:
        raise GroupError("P is elementary abelian: its Frattini subgroup is trivial")
    cert = certificate_from_maps(X, [lambda Q: G.join(F, Q), lambda Q: F])
    return X, cert


# -- equivalence evidence ----------------------------------------------------------

def probe_subgroups(G: GroupTable, p: int, scope: str) -> list[Subgroup]:
    if scope == "plain":
        return [G.trivial]
    if scope == "sylow":
        S = sylow_p(G, p)
        reps: dict[int, Subgroup] = {}
        for h in subgroups_all(G, within=S).subgroups:
            reps.setdefault(G.conjugates(h)[0].mask, h)
        return list(reps.values())
    if scope == "full":
        return subgroups_all(G).class_reps()
    raise ValueError(f"unknown scope {scope!r}; expected one of {', '.join(SCOPES)}")


@dataclass
class EvidenceReport:
    verdict: str                 # EVIDENCE_PASS | MISMATCH
    rows: list[dict]
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "rows": self.rows, "witness": self.witness}


def _summary(P: Poset, p: int) -> dict:
    h = homology_via_core(P, p)
    return {"size": len(P), "components": P.components(),
            "betti_integral": {str(k): v for k, v in sorted(h.betti_integral.items())},
            "torsion": {str(k): v for k, v in sorted(h.torsion.items())},
            "betti_mod_p": {str(k): v for k, v in sorted(h.betti_mod_p.items())}}


def equivalence_evidence(C1: Collection, C2: Collection, row: str, scope: str,
                         right_row: str | None = None) -> EvidenceReport:
    """Compare the row subposets of C1 and C2 (or two rows of one column) over test subgroups.

    ``right_row`` selects a different row on the C2 side, which is how the
    vertical lines of the equivalence table are tested.
    """
    if C1.G is not C2.G or C1.p != C2.p:
        raise ValueError("collections live over different groups or primes")
    right_row = right_row or row
    G, p = C1.G, C1.p
    rows = []
    witness = None
    for cid, H in enumerate(probe_subgroups(G, p, scope)):
        left = _summary(row_poset(C1, H, row), p)
        right = _summary(row_poset(C2, H, right_row), p)
        same = (left["components"] == right["components"]
                and all(left[k] == right[k] for k in ("betti_integral", "torsion", "betti_mod_p")))
        rec = {"H_class_id": cid, "H_order": H.order, "H_elements": [int(x) for x in H.members],
               "left_betti": left, "right_betti": right,
               "verdict": "MATCH" if same else "MISMATCH"}
        rows.append(rec)
        if not same and witness is None:
            witness = rec
    return EvidenceReport("MISMATCH" if witness else "EVIDENCE_PASS", rows, witness)


# -- class removal -----------------------------------------------------------------

CONCLUSIONS = {1: "subgroup row: EO_{C'} -> EO_C is a G-equivalence",
               2: "centralizer row: EA_{C'} -> EA_C is a G-equivalence",
               3: "normalizer row: |C'| -> |C| is a G-equivalence"}


@dataclass
class RemovalReport:
    passed: bool
    variant: int
    rows: list[dict]
    conclusion: str | None

    def to_json(self) -> dict:
        return {"passed": self.passed, "variant": self.variant, "rows": self.rows,
                "conclusion": self.conclusion}


def removal_check(C: Collection, Cp: Collection, variant: int) -> RemovalReport:
    if variant not in (1, 2, 3):
        raise ValueError("variant must be 1, 2 or 3")
    if any(Q not in C for Q in Cp.members):
        raise ValueError("C' is not contained in C")
    removed = [i for i in C.class_reps if C.members[i] not in Cp]
    removed.sort(key=lambda i: C.members[i].order, reverse=(variant == 2))
    P_all = Poset.from_collection(C)
    rows = []
    for i in removed:
        P = C.members[i]
        if variant == 1:
            res = contractibility(P_all.restrict(P_all.strictly_above(i)), C.p)
            rec = {"member": i, "order": P.order, "side": "above", "status": res.status,
                   "certificate": res.certificate.to_json() if res.certificate else None}
            ok = res.status == "CERTIFIED"
        elif variant == 2:
            res = contractibility(P_all.restrict(P_all.strictly_below(i)), C.p)
            rec = {"member": i, "order": P.order, "side": "below", "status": res.status,
                   "certificate": res.certificate.to_json() if res.certificate else None}
            ok = res.status == "CERTIFIED"
        else:
            rec, ok = _equivariant_contractible(C, P_all, i)
        rec["passed"] = ok
        rows.append(rec)
    passed = all(r["passed"] for r in rows)
    return RemovalReport(passed, variant, rows, CONCLUSIONS[variant] if passed else None)


def _equivariant_contractible(C: Collection, P_all: Poset, i: int) -> tuple[dict, bool]:
    """N_G(P)-contractibility of C_{>P} or C_{<P}, tested on K-fixed points for K <= N_G(P)."""
    G = C.G
    P = C.members[i]
    N = normalizer(G, P)
    Ks = subgroups_all(G, within=N).class_reps()
    for side, idx in (("above", P_all.strictly_above(i)), ("below", P_all.strictly_below(i))):
        statuses = []
        for K in Ks:
            fixed = set(fixed_indices(C, K))
            res = contractibility(P_all.restrict([j for j in idx if j in fixed]), C.p)
            statuses.append(res.status)
            if res.status != "CERTIFIED":
                break
        if all(s == "CERTIFIED" for s in statuses):
            return {"member": i, "order": P.order, "side": side, "status": "CERTIFIED",
                    "subgroups_checked": len(Ks)}, True
    return {"member": i, "order": P.order, "side": None, "status": statuses[-1]}, False


# -- the equivalence table -----------------------------------------------------------

TABLE_COLUMNS = ("D", "BCe", "Ce", "B", "I", "S", "A", "Z", "E")
STRENGTH_SCOPE = {"dotted": "plain", "dashed": "sylow", "solid": "full"}


@dataclass(frozen=True)
class TableLine:
    left: tuple[str, str]        # (kind, row)
    right: tuple[str, str]
    strength: str                # dotted | dashed | solid

    @property
    def scope(self) -> str:
        return STRENGTH_SCOPE[self.strength]

    def label(self) -> str:
        return f"{self.left[0]}/{self.left[1]} ~ {self.right[0]}/{self.right[1]} ({self.strength})"


def _table_lines() -> list[TableLine]:
    lines = []
    horizontal = {
        "subgroup": [("BCe", "Ce", "solid"), ("B", "I", "solid"), ("I", "S", "solid"),
                     ("S", "A", "dotted"), ("A", "Z", "solid")],
        "normalizer": [("BCe", "Ce", "solid"), ("B", "I", "solid"), ("I", "S", "solid"),
                       ("S", "A", "solid"), ("A", "Z", "solid")],
        "centralizer": [("BCe", "Ce", "dotted"), ("B", "I", "dotted"), ("I", "S", "dotted"),
                        ("S", "A", "solid"), ("A", "Z", "solid")],
    }
    for row, pairs in horizontal.items():
        for a, b, s in pairs:
            lines.append(TableLine((a, row), (b, row), s))
    upper = {"D": "dotted", "BCe": "dashed", "Ce": "dashed", "B": "dashed", "I": "dashed",
             "S": "dashed", "A": "dotted", "Z": "dotted", "E": "dotted"}
    lower = {"D": "dotted", "BCe": "dotted", "Ce": "dotted", "B": "dotted", "I": "dotted",
             "S": "dashed", "A": "dashed", "Z": "dashed", "E": "dashed"}
    for k in TABLE_COLUMNS:
        lines.append(TableLine((k, "subgroup"), (k, "normalizer"), upper[k]))
        lines.append(TableLine((k, "normalizer"), (k, "centralizer"), lower[k]))
    return lines


TABLE_LINES = _table_lines()


def check_line(G: GroupTable, p: int, line: TableLine, scope: str | None = None) -> EvidenceReport:
    from .collection import collect
    C1 = collect(G, p, line.left[0])
    C2 = collect(G, p, line.right[0])
    return equivalence_evidence(C1, C2, line.left[1], scope or line.scope,
                                right_row=line.right[1])


def simplicial_join_betti(bx: dict[int, int], by: dict[int, int]) -> dict[int, int]:
    """Reduced field Betti numbers of a join: b_n = sum over i+j=n-1 of b_i b_j."""
    out: dict[int, int] = {}
    for i, a in bx.items():
        for j, b in by.items():
            out[i + j + 1] = out.get(i + j + 1, 0) + a * b
    return {k: v for k, v in out.items() if v}


__all__ = [
    "Poset", "join", "link", "star", "OrderComplex", "order_complex", "HomologyReport",
    "reduced_homology", "smith_diagonal", "ContractionCertificate", "verify_certificate",
    "certificate_from_maps", "core_reduction", "contractibility", "homology_via_core",
    "sub_posets", "row_poset", "fixed_indices", "normalizer_zigzag", "frattini_zigzag",
    "probe_subgroups", "equivalence_evidence", "EvidenceReport", "removal_check",
    "RemovalReport", "TableLine", "TABLE_LINES", "check_line", "simplicial_join_betti",
]
