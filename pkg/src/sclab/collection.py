"""The nine standard collections of nontrivial p-subgroups and their endomorphisms."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import (
    GroupError, GroupTable, Subgroup, all_sylows, center, centralizer, check_prime,
    is_elementary_abelian, is_p_group, normalizer, o_p, omega1, p_part, quotient,
    rows_to_masks, subgroups_all, sylow_p,
)

KINDS = ("S", "B", "Ce", "BCe", "D", "I", "A", "Z", "E")


@dataclass
class Collection:
    """A conjugation-closed family of nontrivial p-subgroups of G, ordered by inclusion."""

    G: GroupTable
    p: int
    kind: str
    members: list[Subgroup]
    leq: np.ndarray = field(repr=False)
    action: np.ndarray = field(repr=False)   # action[g, i] = index of g P_i g^-1
    classes: list[list[int]] = field(repr=False)

    @property
    def empty(self) -> bool:
        return not self.members

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    def index(self, h: Subgroup) -> int:
        return self._index[h.mask]

    def __contains__(self, h: Subgroup) -> bool:
        return h.mask in self._index

    def __len__(self):
        return len(self.members)

    def __post_init__(self):
        self._index = {h.mask: i for i, h in enumerate(self.members)}

    def to_json(self) -> dict:
        reps = set(self.class_reps)
        return {
            "group": self.G.name,
            "prime": self.p,
            "kind": self.kind,
            "members": [{"elements": [int(x) for x in h.members], "order": h.order,
                         "class_rep": i in reps} for i, h in enumerate(self.members)],
            "order_relation": [[int(i), int(j)] for i, j in zip(*np.nonzero(self.leq)) if i != j],
            "empty": self.empty,
        }


def make_collection(G: GroupTable, p: int, kind: str, members) -> Collection:
    members = sorted({h.mask: h for h in members}.values(), key=lambda s: s.sort_key)
    m = len(members)
    masks = [h.mask for h in members]
    index = {mk: i for i, mk in enumerate(masks)}
    leq = np.zeros((m, m), dtype=bool)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            leq[i, j] = a & b == a
    action = np.zeros((G.order, m), dtype=np.int64)
    for i, h in enumerate(members):
        imgs = rows_to_masks(G.conj[:, h.members], G.order)
        try:
            action[:, i] = [index[x] for x in imgs]
        except KeyError:
            raise GroupError(f"collection {kind} is not closed under conjugation") from None
    classes, seen = [], set()
    for i in range(m):
        if i in seen:
            continue
        orbit = sorted(set(action[:, i].tolist()))
        seen.update(orbit)
        classes.append(orbit)
    return Collection(G, p, kind, members, leq, action, classes)


def p_subgroups(G: GroupTable, p: int) -> list[Subgroup]:
    """All nontrivial p-subgroups: subgroups of one Sylow, closed under conjugation."""
    key = ("psub", p)
    if key in G._cache:
        return G._cache[key]
    check_prime(p)
    S = sylow_p(G, p)
    out: dict[int, Subgroup] = {}
    if S.order > 1:
        for h in subgroups_all(G, within=S).subgroups:
            if h.order == 1 or h.mask in out:
                continue
            for k in G.conjugates(h):
                out[k.mask] = k
    res = sorted(out.values(), key=lambda s: s.sort_key)
    G._cache[key] = res
    return res


# -- membership tests -------------------------------------------------------------

def is_radical(G: GroupTable, p: int, Q: Subgroup) -> bool:
    N = normalizer(G, Q)
    Qt, _ = quotient(G, Q, within=N)
    return o_p(Qt, p).order == 1


def is_centric(G: GroupTable, p: int, Q: Subgroup) -> bool:
    return p_part(centralizer(G, Q).order, p) == center(G, Q).order


def is_principal_radical(G: GroupTable, p: int, Q: Subgroup) -> bool:
    if not is_centric(G, p, Q):
        return False
    N = normalizer(G, Q)
    QC = G.join(Q, centralizer(G, Q))
    Qt, _ = quotient(G, QC, within=N)
    return o_p(Qt, p).order == 1


def membership_tests(G: GroupTable, p: int, Q: Subgroup) -> dict[str, bool]:
    if Q.order == 1 or not is_p_group(Q, p):
        raise GroupError("membership tests need a nontrivial p-subgroup")
    return {
        "radical": is_radical(G, p, Q),
        "centric": is_centric(G, p, Q),
        "principal_radical": is_principal_radical(G, p, Q),
    }


def z_map(G: GroupTable, p: int, V: Subgroup) -> Subgroup:
    """Omega_1 O_p Z(C_G(V))."""
    Z = center(G, centralizer(G, V))
    return omega1(G, o_p(G, p, within=Z), p)


def sylow_intersection_closure(G: GroupTable, syl: list[Subgroup]) -> list[Subgroup]:
    found = {s.mask: s for s in syl}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(found.values()):
                c = G.intersection(a, b)
                if c.mask not in found:
                    found[c.mask] = c
                    nxt.append(c)
        frontier = nxt
    return [h for h in found.values() if h.order > 1]


def collect(G: GroupTable, p: int, kind: str) -> Collection:
    """The named collection of nontrivial p-subgroups (empty when p does not divide |G|)."""
    check_prime(p)
    if kind not in KINDS:
        raise ValueError(f"unknown collection kind {kind!r}; expected one of {' '.join(KINDS)}")
    key = ("coll", p, kind)
    if key in G._cache:
        return G._cache[key]
    S_all = p_subgroups(G, p)
    if kind == "S":
        members = S_all
    elif kind == "B":
        members = [q for q in S_all if is_radical(G, p, q)]
    elif kind == "Ce":
        members = [q for q in S_all if is_centric(G, p, q)]
    elif kind == "BCe":
        b = collect(G, p, "B")
        members = [q for q in collect(G, p, "Ce").members if q in b]
    elif kind == "D":
        members = [q for q in collect(G, p, "Ce").members if is_principal_radical(G, p, q)]
    elif kind == "I":
        members = sylow_intersection_closure(G, all_sylows(G, p))
    elif kind == "A":
        members = [q for q in S_all if is_elementary_abelian(G, q, p)]
    elif kind == "Z":
        members = [v for v in collect(G, p, "A").members if z_map(G, p, v).mask == v.mask]
    else:
        members = _collect_e(G, p)
    C = make_collection(G, p, kind, members)
    G._cache[key] = C
    return C


def _collect_e(G: GroupTable, p: int) -> list[Subgroup]:
    S = sylow_p(G, p)
    if S.order == 1:
        return []
    Z = center(G, S)
    seeds = {}
    for x in Z.members:
        if G.element_orders[x] == p:
            c = G.generate([x])
            for k in G.conjugates(c):
                seeds[k.mask] = k
    found = dict(seeds)
    frontier = list(found.values())
    while frontier:
        nxt = []
        for v in frontier:
            cv = centralizer(G, v)
            for w in list(found.values()):
                if w <= v or v <= w or not w <= cv:
                    continue
                u = G.join(v, w)
                if u.mask not in found:
                    for k in G.conjugates(u):
                        if k.mask not in found:
                            found[k.mask] = k
                            nxt.append(k)
        frontier = nxt
    return list(found.values())


def sub_collection(C: Collection, indices, kind: str = "custom") -> Collection:
    return make_collection(C.G, C.p, kind, [C.members[i] for i in indices])


# -- endomorphisms -----------------------------------------------------------------

@dataclass
class MonotoneEndomorphism:
    domain: Collection
    image_of: list[int]
    direction: str               # "GE" (F >= Id) or "LE" (F <= Id)
    centralizer_growth: bool
    name: str = ""

    def __call__(self, i: int) -> int:
        return self.image_of[i]

    def image(self) -> Collection:
        return sub_collection(self.domain, sorted(set(self.image_of)), kind=f"{self.name}(C)")

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.image_of) if i == j]


def _endo_from_map(C: Collection, f, direction: str, name: str) -> MonotoneEndomorphism:
    img = []
    growth = True
    for P in C.members:
        Q = f(P)
        if Q not in C:
            raise GroupError(f"{name} sends a member outside the collection")
        img.append(C.index(Q))
        if not centralizer(C.G, P) <= centralizer(C.G, Q):
            growth = False
    return MonotoneEndomorphism(C, img, direction, growth, name)


def endo_sylow_intersection(C: Collection) -> MonotoneEndomorphism:
    """P -> intersection of the Sylow p-subgroups containing P."""
    syl = all_sylows(C.G, C.p)

    def f(P):
        return C.G.intersection(*[s for s in syl if P <= s])

    return _endo_from_map(C, f, "GE", "sylow_intersection")


def endo_Z(C: Collection) -> MonotoneEndomorphism:
    """P -> Omega_1 O_p Z(C_G(P)) on elementary abelian subgroups."""
    return _endo_from_map(C, lambda P: z_map(C.G, C.p, P), "GE", "omega1_Op_Z_centralizer")


def endo_identity(C: Collection) -> MonotoneEndomorphism:
    return MonotoneEndomorphism(C, list(range(len(C))), "GE", True, "identity")


def iterate_to_fixpoint(F: MonotoneEndomorphism) -> MonotoneEndomorphism:
    img = list(F.image_of)
    for _ in range(F.domain.G.order + 1):
        nxt = [F.image_of[j] for j in img]
        if nxt == img:
            return MonotoneEndomorphism(F.domain, img, F.direction, F.centralizer_growth,
                                        F.name + "^inf")
        img = nxt
    raise GroupError("iteration did not stabilize")


@dataclass
class EndoCertificate:
    ok: bool
    conclusions: list[int]
    image: Collection | None
    violation: str | None = None
    witness: tuple | None = None
    directions: tuple[str, ...] = ()     # every pointwise comparison with Id that holds


def check_endomorphism(C: Collection, F: MonotoneEndomorphism) -> EndoCertificate:
    """Verify the hypotheses of the monotone endomorphism criterion and name what they license.

    Conclusion 1: EO_{F(C)} -> EO_C is a G-equivalence (needs F >= Id).
    Conclusion 2: EA_{F(C)} -> EA_C is a G-equivalence (needs C_G(P) <= C_G(F(P))).
    Conclusion 3: |F(C)| -> |C| is a G-equivalence (always).
    """
    img = np.asarray(F.image_of)
    m = len(C)
    if img.shape != (m,):
        return EndoCertificate(False, [], None, "map not defined on every member")
    act = C.action
    bad = np.argwhere(img[act] != act[:, img])
    if bad.size:
        g, i = bad[0]
        return EndoCertificate(False, [], None, "not G-equivariant", (int(g), int(i)))
    for i in range(m):
        for j in range(m):
            if C.leq[i, j] and not C.leq[img[i], img[j]]:
                return EndoCertificate(False, [], None, "not monotone", (i, j))
    if F.direction not in ("GE", "LE"):
        raise ValueError("direction must be GE or LE")
    failing = {"GE": [i for i in range(m) if not C.leq[i, img[i]]],
               "LE": [i for i in range(m) if not C.leq[img[i], i]]}
    directions = tuple(d for d in ("GE", "LE") if not failing[d])
    bad = failing[F.direction]
    if bad:
        return EndoCertificate(False, [], None, f"direction {F.direction} fails", (bad[0],))
    growth = all(centralizer(C.G, C.members[i]) <= centralizer(C.G, C.members[img[i]])
                 for i in range(m))
    if F.centralizer_growth and not growth:
        return EndoCertificate(False, [], None, "claimed centralizer growth fails")
    conclusions = []
    if "GE" in directions:
        conclusions.append(1)
    if growth:
        conclusions.append(2)
    conclusions.append(3)
    return EndoCertificate(True, conclusions, F.image(), directions=directions)


def closure_check(C: Collection, mode: str) -> tuple[bool, tuple | None]:
    """Closed under p-overgroups (mode 'overgroups') or nontrivial subgroups ('subgroups')."""
    allp = p_subgroups(C.G, C.p)
    for P in C.members:
        for Q in allp:
            if mode == "overgroups":
                if P <= Q and Q not in C:
                    return False, (P, Q)
            elif mode == "subgroups":
                if Q <= P and Q not in C:
                    return False, (P, Q)
            else:
                raise ValueError("mode must be 'overgroups' or 'subgroups'")
    return True, None
