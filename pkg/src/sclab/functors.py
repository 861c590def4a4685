"""Index categories, coefficient functors, higher limits, Bredon cochains, sharpness.

Variance convention (the one place it is fixed): a CoefficientFunctor is
always *covariant* on its ``category`` attribute.  The three coefficient functors
are realized as

* beta:  covariant on O_C^op,          G/H   -> F(H)
* alpha: covariant on A_C,             H     -> F(C_G(H))
* delta: covariant on ((sd C)/G)^op,   sigma -> F(G_sigma)

so every limit below is the ordinary limit of a covariant functor.  A
coefficient system F (cohomology in a fixed degree, or fixed points of a
module) supplies ``F.map(K, H, a)``: F(H) -> F(K) for a^-1 K a <= H.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .cohomology import engine
from .collection import Collection, collect
from .groups import GroupError, GroupTable, Subgroup, centralizer, indices_to_mask
from .linalg import Solver, SpanBuilder, nullspace, rank
from .topology import OrderComplex, Poset, order_complex


# -- finite categories --------------------------------------------------------------

@dataclass
class FiniteCategory:
    kind: str                        # orbit | conjugation | orbit_simplex | generic
    objects: list
    src: list[int]
    tgt: list[int]
    data: list                       # per-morphism payload (a conjugating element)
    identity: list[int]
    comp: dict[tuple[int, int], int] = field(repr=False)     # (g, f) -> g o f
    opposite_of: "FiniteCategory | None" = field(default=None, repr=False)
    collection: Collection | None = field(default=None, repr=False)

    def __post_init__(self):
        self.hom: dict[tuple[int, int], list[int]] = {}
        for f, (s, t) in enumerate(zip(self.src, self.tgt)):
            self.hom.setdefault((s, t), []).append(f)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    def homs(self, x: int, y: int) -> list[int]:
        return self.hom.get((x, y), [])

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    def opposite(self) -> "FiniteCategory":
        comp = {(f, g): h for (g, f), h in self.comp.items()}
        return FiniteCategory(self.kind, self.objects, list(self.tgt), list(self.src), self.data,
                              self.identity, comp, self, self.collection)

    @property
    def is_opposite(self) -> bool:
        return self.opposite_of is not None

    def check_laws(self) -> None:
        """Identity and associativity on every composable pair and triple."""
        for f in range(self.n_morphisms):
            s, t = self.src[f], self.tgt[f]
            if self.comp[(f, self.identity[s])] != f or self.comp[(self.identity[t], f)] != f:
                raise AssertionError(f"identity law fails at morphism {f}")
        for f in range(self.n_morphisms):
            for g in self._out(self.tgt[f]):
                gf = self.comp[(g, f)]
                if self.src[gf] != self.src[f] or self.tgt[gf] != self.tgt[g]:
                    raise AssertionError("composite has wrong endpoints")
                for h in self._out(self.tgt[g]):
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        raise AssertionError("composition is not associative")

    def _out(self, x: int) -> list[int]:
        if not hasattr(self, "_outs"):
            self._outs = [[] for _ in self.objects]
            for f, s in enumerate(self.src):
                self._outs[s].append(f)
        return self._outs[x]

    def reachability_order(self) -> list[int]:
        """Objects ordered so that y comes before x whenever y -> x and x -/-> y."""
        n = self.n_objects
        reach = np.zeros((n, n), dtype=bool)
        for s, t in zip(self.src, self.tgt):
            reach[s, t] = True
        for k in range(n):
            reach |= reach[:, [k]] & reach[[k], :]
        # number of objects that reach x without being reachable from x
        score = [int((reach[:, x] & ~reach[x, :]).sum()) for x in range(n)]
        return sorted(range(n), key=lambda x: (score[x], x))


def _check_nonempty(C: Collection) -> None:
    if C.empty:
        raise GroupError("empty collection: the index category has no objects")


def _object_members(C: Collection, skeleton: bool) -> list[int]:
    return list(C.class_reps) if skeleton else list(range(len(C)))


def build_orbit_category(G: GroupTable, C: Collection, skeleton: bool = False) -> FiniteCategory:
    """Objects G/H for H in C; morphisms G/K -> G/H are cosets aH with a^-1 K a <= H."""
    _check_nonempty(C)
    idx = _object_members(C, skeleton)
    objs = [C.members[i] for i in idx]
    coset_rep = {}
    in_sub = {}
    for H in objs:
        coset_rep[H.mask] = G.mult[:, H.members].min(axis=1)
        flags = np.zeros(G.order, dtype=bool)
        flags[H.members] = True
        in_sub[H.mask] = flags
    src, tgt, data = [], [], []
    lookup: dict[tuple[int, int, int], int] = {}
    for x, K in enumerate(objs):
        for y, H in enumerate(objs):
            for a in np.unique(coset_rep[H.mask]):
                a = int(a)
                if in_sub[H.mask][G.conj[G.inv[a], K.members]].all():
                    lookup[(x, y, a)] = len(src)
                    src.append(x)
                    tgt.append(y)
                    data.append(a)
    identity = [lookup[(x, x, 0)] for x in range(len(objs))]
    comp = {}
    for f in range(len(src)):            # f = bK : G/L -> G/K
        for g in range(len(src)):        # g = aH : G/K -> G/H
            if tgt[f] != src[g]:
                continue
            H = objs[tgt[g]]
            ba = int(coset_rep[H.mask][G.mult[data[f], data[g]]])
            comp[(g, f)] = lookup[(src[f], tgt[g], ba)]
    return FiniteCategory("orbit", objs, src, tgt, data, identity, comp, None, C)


def build_conjugation_category(G: GroupTable, C: Collection, skeleton: bool = False) -> FiniteCategory:
    """Objects the members; morphisms the distinct homomorphisms x -> g x g^-1 landing inside."""
    _check_nonempty(C)
    idx = _object_members(C, skeleton)
    objs = [C.members[i] for i in idx]
    src, tgt, data = [], [], []
    lookup: dict[tuple, int] = {}
    gens = [G.generators(K) for K in objs]
    for x, K in enumerate(objs):
        images = G.conj[:, K.members]                       # (|G|, |K|)
        for y, H in enumerate(objs):
            flags = np.zeros(G.order, dtype=bool)
            flags[H.members] = True
            ok = flags[images].all(axis=1)
            for g in np.flatnonzero(ok):
                key = (x, y, tuple(G.conj[g, gens[x]].tolist()))
                if key not in lookup:
                    lookup[key] = len(src)
                    src.append(x)
                    tgt.append(y)
                    data.append(int(g))
    identity = [lookup[(x, x, tuple(gens[x]))] for x in range(len(objs))]
    comp = {}
    for f in range(len(src)):
        for g in range(len(src)):
            if tgt[f] != src[g]:
                continue
            h = int(G.mult[data[g], data[f]])
            comp[(g, f)] = lookup[(src[f], tgt[g], tuple(G.conj[h, gens[src[f]]].tolist()))]
    return FiniteCategory("conjugation", objs, src, tgt, data, identity, comp, None, C)


@dataclass
class ChainClasses:
    """G-classes of strict chains: representatives and a chain -> (class, conjugator) table."""

    reps: list[tuple[int, ...]]
    locate: dict[tuple[int, ...], tuple[int, int]]
    stabilizers: list[Subgroup]


def chain_classes(C: Collection, X: OrderComplex | None = None) -> ChainClasses:
    G = C.G
    if X is None:
        X = order_complex(Poset.from_collection(C))
    reps, stabs = [], []
    locate: dict[tuple[int, ...], tuple[int, int]] = {}
    act = C.action
    for level in X.orbit_reps:
        for sigma, stab in level:
            cls = len(reps)
            reps.append(sigma)
            stabs.append(G.from_mask(indices_to_mask(stab, G.order)))
            imgs = act[:, list(sigma)]
            for g in range(G.order):
                key = tuple(int(v) for v in imgs[g])
                if key not in locate:
                    locate[key] = (cls, g)
    return ChainClasses(reps, locate, stabs)


def build_orbit_simplex_category(G: GroupTable, C: Collection) -> FiniteCategory:
    """Objects G-classes of strict chains; sigma -> tau when tau is conjugate to a face of sigma.

    A face of a chain is determined by its set of subgroup orders, so each
    Hom-set has at most one element and the category is a poset.  The payload
    of sigma -> tau is a g with g tau g^-1 equal to that face.
    """
    _check_nonempty(C)
    cc = chain_classes(C)
    objs = list(range(len(cc.reps)))
    src, tgt, data = [], [], []
    lookup: dict[tuple[int, int], int] = {}
    for s, sigma in enumerate(cc.reps):
        k = len(sigma)
        for r in range(1, k + 1):
            for pos in _subsets(k, r):
                face = tuple(sigma[i] for i in pos)
                t, g = cc.locate[face]
                if (s, t) in lookup:
                    raise AssertionError("two faces of one chain lie in the same class")
                lookup[(s, t)] = len(src)
                src.append(s)
                tgt.append(t)
                data.append(g)
    identity = [lookup[(x, x)] for x in objs]
    comp = {}
    for f in range(len(src)):
        for g in range(len(src)):
            if tgt[f] != src[g]:
                continue
            key = (src[f], tgt[g])
            if key not in lookup:
                raise AssertionError("composite of refinements is missing")
            comp[(g, f)] = lookup[key]
    cat = FiniteCategory("orbit_simplex", [cc.reps[i] for i in objs], src, tgt, data, identity,
                         comp, None, C)
    cat.chain_data = cc
    return cat


def _subsets(k: int, r: int):
    from itertools import combinations
    return combinations(range(k), r)


# -- coefficient systems -------------------------------------------------------------

class CohomologySystem:
    """H -> H^n(H; F_p)."""

    def __init__(self, G: GroupTable, p: int, n: int, method: str = "auto"):
        self.G, self.p, self.n = G, p, n
        self.engine = engine(G, p, method)

    def dim(self, H: Subgroup) -> int:
        return self.engine.dim(H, self.n)

    def map(self, K: Subgroup, H: Subgroup, a: int) -> np.ndarray:
        return self.engine.map(K, H, a, self.n)

    def label(self) -> str:
        return f"H^{self.n}"


@dataclass
class GroupModule:
    """A finite F_p G-module: rho[g] is the matrix of g."""

    G: GroupTable
    p: int
    rho: np.ndarray                  # (|G|, d, d)

    @property
    def dim(self) -> int:
        return self.rho.shape[1]


def trivial_module(G: GroupTable, p: int) -> GroupModule:
    return GroupModule(G, p, np.ones((G.order, 1, 1), dtype=np.int64))


def permutation_module(G: GroupTable, p: int, action: np.ndarray) -> GroupModule:
    """action[g, i] = image of point i under g."""
    n = action.shape[1]
    rho = np.zeros((G.order, n, n), dtype=np.int64)
    for g in range(G.order):
        rho[g, action[g], np.arange(n)] = 1
    return GroupModule(G, p, rho)


def regular_module(G: GroupTable, p: int) -> GroupModule:
    return permutation_module(G, p, G.mult)


class FixedPointSystem:
    """H -> M^H; the map for a^-1 K a <= H is v -> a v."""

    def __init__(self, M: GroupModule):
        self.M, self.G, self.p = M, M.G, M.p
        self._basis: dict[int, np.ndarray] = {}

    def basis(self, H: Subgroup) -> np.ndarray:
        if H.mask not in self._basis:
            d = self.M.dim
            gens = self.G.generators(H)
            if gens:
                A = np.concatenate([self.M.rho[g] - np.eye(d, dtype=np.int64) for g in gens])
                self._basis[H.mask] = nullspace(A, self.p)
            else:
                self._basis[H.mask] = np.eye(d, dtype=np.int64)
        return self._basis[H.mask]

    def dim(self, H: Subgroup) -> int:
        return self.basis(H).shape[0]

    def map(self, K: Subgroup, H: Subgroup, a: int) -> np.ndarray:
        BH, BK = self.basis(H), self.basis(K)
        out = np.zeros((BK.shape[0], BH.shape[0]), dtype=np.int64)
        if out.size == 0:
            return out
        S = Solver(BK.T, self.p)
        for j, v in enumerate(BH):
            out[:, j] = S.solve(self.M.rho[a] @ v % self.p)
        return out

    def label(self) -> str:
        return "fixed points"


# -- coefficient functors -------------------------------------------------------------

@dataclass
class CoefficientFunctor:
    category: FiniteCategory         # covariant on this category
    dims: list[int]
    mats: list[np.ndarray]
    p: int
    values: list[Subgroup]           # subgroup whose coefficient value sits at each object
    system: object
    kind: str

    def check_functoriality(self) -> None:
        cat, p = self.category, self.p
        for x, f in enumerate(cat.identity):
            if not (self.mats[f] % p == np.eye(self.dims[x], dtype=np.int64)).all():
                raise AssertionError(f"identity at object {x} is not sent to the identity")
        for (g, f), h in cat.comp.items():
            if not ((self.mats[g] @ self.mats[f]) % p == self.mats[h] % p).all():
                raise AssertionError(f"functoriality fails for the pair ({g}, {f})")


def make_functor(kind: str, category: FiniteCategory, n: int | None = None,
                 module: GroupModule | None = None, p: int | None = None,
                 method: str = "auto") -> CoefficientFunctor:
    """beta / alpha / delta in degree n, or fixed_points of a module on any of the three categories."""
    C = category.collection
    G = C.G
    p = C.p if p is None else p
    if kind == "fixed_points":
        if module is None:
            module = trivial_module(G, p)
        system = FixedPointSystem(module)
        p = module.p
        shape = {"orbit": "beta", "conjugation": "alpha", "orbit_simplex": "delta"}[category.kind]
    elif kind in ("beta", "alpha", "delta"):
        if n is None:
            raise ValueError("cohomological functors need a degree n")
        system = CohomologySystem(G, p, n, method)
        shape = kind
    else:
        raise ValueError(f"unknown functor kind {kind!r}")
    expected = {"beta": "orbit", "alpha": "conjugation", "delta": "orbit_simplex"}[shape]
    if category.kind != expected or category.is_opposite:
        raise ValueError(f"{kind} needs the {expected} category")
    F = _assemble(shape, category, system, p)
    F.kind = kind
    F.check_functoriality()
    return F


def _assemble(shape: str, cat: FiniteCategory, system, p: int) -> CoefficientFunctor:
    G = cat.collection.G
    if shape == "beta":
        values = list(cat.objects)
        target = cat.opposite()
        mats = [system.map(values[cat.src[f]], values[cat.tgt[f]], cat.data[f]) % p
                for f in range(cat.n_morphisms)]
    elif shape == "alpha":
        values = [centralizer(G, H) for H in cat.objects]
        target = cat
        mats = [system.map(values[cat.tgt[f]], values[cat.src[f]], cat.data[f]) % p
                for f in range(cat.n_morphisms)]
    else:
        values = list(cat.chain_data.stabilizers)
        target = cat.opposite()
        mats = [system.map(values[cat.src[f]], values[cat.tgt[f]], cat.data[f]) % p
                for f in range(cat.n_morphisms)]
    dims = [system.dim(v) for v in values]
    return CoefficientFunctor(target, dims, mats, p, values, system, shape)


# -- limits ---------------------------------------------------------------------------

def lim0(F: CoefficientFunctor) -> np.ndarray:
    """Compatible families: basis rows of {(v_x) : F(f) v_src = v_tgt for all f}."""
    cat = F.category
    off = np.concatenate([[0], np.cumsum(F.dims)]).astype(int)
    total = int(off[-1])
    rows = []
    for f in range(cat.n_morphisms):
        s, t = cat.src[f], cat.tgt[f]
        if s == t and f == cat.identity[s]:
            continue
        block = np.zeros((F.dims[t], total), dtype=np.int64)
        block[:, off[s]:off[s + 1]] += F.mats[f]
        block[:, off[t]:off[t + 1]] -= np.eye(F.dims[t], dtype=np.int64)
        rows.append(block)
    if not rows or total == 0:
        return np.eye(total, dtype=np.int64)
    return nullspace(np.concatenate(rows) % F.p, F.p)


class _FreeModule:
    """Direct sum of representables k Hom(d_j, -) on a category."""

    def __init__(self, cat: FiniteCategory, gen_objs: list[int]):
        self.cat = cat
        self.gen_objs = gen_objs
        self.basis = {x: [] for x in range(cat.n_objects)}
        for j, d in enumerate(gen_objs):
            for x in range(cat.n_objects):
                for f in cat.homs(d, x):
                    self.basis[x].append((j, f))
        self.index = {x: {b: i for i, b in enumerate(bs)} for x, bs in self.basis.items()}
        self._push: dict[int, np.ndarray] = {}

    def dim(self, x: int) -> int:
        return len(self.basis[x])

    def push(self, f: int, v: np.ndarray) -> np.ndarray:
        cat = self.cat
        if f not in self._push:
            s, t = cat.src[f], cat.tgt[f]
            self._push[f] = np.array([self.index[t][(j, cat.compose(f, u))]
                                      for j, u in self.basis[s]], dtype=np.int64)
        out = np.zeros(self.dim(cat.tgt[f]), dtype=np.int64)
        if v.size:
            np.add.at(out, self._push[f], v)
        return out


class _ConstantModule:
    def __init__(self, cat: FiniteCategory):
        self.cat = cat

    def dim(self, x: int) -> int:
        return 1

    def push(self, f: int, v: np.ndarray) -> np.ndarray:
        return v.copy()


def _choose_generators(cat, module, kernel: dict[int, np.ndarray], p: int):
    """Greedy generators of a subfunctor given by bases of its values."""
    spans = {x: SpanBuilder(module.dim(x), p) for x in range(cat.n_objects)}
    gens = []
    for x in cat.reachability_order():
        for v in kernel[x]:
            if spans[x].contains(v):
                continue
            gens.append((x, v.copy()))
            for f in cat._out(x):
                spans[cat.tgt[f]].add(module.push(f, v))
    return gens


@dataclass
class ProjectiveResolution:
    """k <- P_0 <- P_1 <- ... with P_n free on ``gens[n]`` = [(object, image in P_{n-1})]."""

    cat: FiniteCategory
    p: int
    modules: list
    gens: list[list[tuple[int, np.ndarray]]]


def resolve_constant(cat: FiniteCategory, p: int, length: int) -> ProjectiveResolution:
    key = ("constant_resolution", p)
    store = cat.__dict__.setdefault("_resolutions", {})
    res = store.get(key)
    if res is None:
        const = _ConstantModule(cat)
        gens0 = _choose_generators(cat, const, {x: np.ones((1, 1), dtype=np.int64)
                                                for x in range(cat.n_objects)}, p)
        res = ProjectiveResolution(cat, p, [const, _FreeModule(cat, [x for x, _ in gens0])], [gens0])
        store[key] = res
    while len(res.gens) <= length:
        n = len(res.gens)              # build P_n from the kernel of P_{n-1} -> previous
        prev, below = res.modules[n], res.modules[n - 1]
        kernel = {}
        for x in range(cat.n_objects):
            D = _differential_at(prev, below, res.gens[n - 1], x, p)
            kernel[x] = nullspace(D, p) if prev.dim(x) else np.zeros((0, 0), dtype=np.int64)
        gens = _choose_generators(cat, prev, kernel, p)
        res.gens.append(gens)
        res.modules.append(_FreeModule(cat, [x for x, _ in gens]))
    return res


def _differential_at(P: _FreeModule, M, gens, x: int, p: int) -> np.ndarray:
    """Matrix at object x of the map P -> M sending generator j to gens[j][1]."""
    D = np.zeros((M.dim(x), P.dim(x)), dtype=np.int64)
    for col, (j, f) in enumerate(P.basis[x]):
        D[:, col] = M.push(f, gens[j][1])
    return D % p


@dataclass
class HigherLimitReport:
    dims: list[int]
    lim0_families: int
    comparison: dict | None = None

    def to_json(self) -> dict:
        return {"dims": self.dims, "lim0_families": self.lim0_families,
                "comparison": self.comparison}


def higher_limits(F: CoefficientFunctor, i_max: int) -> HigherLimitReport:
    """lim^i F = Ext^i(constant, F) from a projective resolution of the constant functor."""
    if i_max > engine(F.category.collection.G, F.p).cap:
        raise ValueError(f"i_max {i_max} exceeds the degree cap")
    cat, p = F.category, F.p
    res = resolve_constant(cat, p, i_max + 1)
    cochain_dims = []
    deltas = []
    for n in range(i_max + 2):
        cochain_dims.append(sum(F.dims[d] for d, _ in res.gens[n]))
    for n in range(i_max + 1):
        deltas.append(_ext_coboundary(F, res, n))
    ranks = [rank(D, p) if D.size else 0 for D in deltas]
    dims = []
    for n in range(i_max + 1):
        before = ranks[n - 1] if n > 0 else 0
        dims.append(cochain_dims[n] - ranks[n] - before)
    fam = lim0(F).shape[0]
    return HigherLimitReport(dims, fam)


def _ext_coboundary(F: CoefficientFunctor, res: ProjectiveResolution, n: int) -> np.ndarray:
    """Hom(P_n, F) -> Hom(P_{n+1}, F), both written as sums of values at generators."""
    src_gens = res.gens[n]
    tgt_gens = res.gens[n + 1]
    P = res.modules[n + 1]
    off_s = np.concatenate([[0], np.cumsum([F.dims[d] for d, _ in src_gens])]).astype(int)
    off_t = np.concatenate([[0], np.cumsum([F.dims[d] for d, _ in tgt_gens])]).astype(int)
    D = np.zeros((int(off_t[-1]), int(off_s[-1])), dtype=np.int64)
    for g, (d, q) in enumerate(tgt_gens):
        for pos in np.flatnonzero(q):
            i, u = P.basis[d][pos]
            D[off_t[g]:off_t[g + 1], off_s[i]:off_s[i + 1]] += int(q[pos]) * F.mats[u]
    return D % F.p


def comparison_map(G: GroupTable, n: int, F: CoefficientFunctor) -> dict:
    """Restriction H^n(G) -> prod_x F(x); reports rank against dim H^n(G) and dim lim^0."""
    p = F.p
    eng = F.system.engine if isinstance(F.system, CohomologySystem) else engine(G, p)
    source = eng.dim(G.whole, n)
    blocks = [eng.map(v, G.whole, 0, n) for v in F.values]
    M = np.concatenate(blocks) % p if blocks else np.zeros((0, source), dtype=np.int64)
    fam = lim0(F)
    rk = rank(M, p) if M.size else 0
    # every restricted class must be a compatible family
    inside = rank(np.concatenate([fam, M.T]) % p, p) == fam.shape[0] if M.size else True
    return {"source_dim": source, "lim0_dim": int(fam.shape[0]), "rank": rk,
            "injective": rk == source, "surjective": rk == fam.shape[0],
            "lands_in_lim0": bool(inside)}


# -- Bredon cochains on |C| ----------------------------------------------------------

def bredon_cohomology(X: OrderComplex, system, i_max: int, seed: int | None = None) -> list[int]:
    """Cohomology of prod_{[sigma] in X_k/G} F(G_sigma) with face maps twisted by conjugators.

    With a seed, orbit representatives and conjugators are re-chosen at random.
    """
    P = X.poset
    if P.action is None:
        raise ValueError("the complex carries no group action")
    G = P.group
    rng = random.Random(seed) if seed is not None else None
    act = P.action
    reps_by_dim: list[list[tuple[int, ...]]] = []
    locate: list[dict[tuple[int, ...], tuple[int, list[int]]]] = []
    for level in (X.orbit_reps or []):
        reps, table = [], {}
        for sigma, _ in level:
            if rng is not None:
                g0 = rng.randrange(G.order)
                sigma = tuple(int(act[g0, v]) for v in sigma)
            cls = len(reps)
            reps.append(sigma)
            imgs = act[:, list(sigma)]
            for g in range(G.order):
                key = tuple(int(v) for v in imgs[g])
                table.setdefault(key, (cls, []))[1].append(g)
        reps_by_dim.append(reps)
        locate.append(table)

    def stab(sigma):
        return G.from_mask(indices_to_mask(X.stabilizer(sigma), G.order))

    stabs = [[stab(s) for s in reps] for reps in reps_by_dim]
    dims = [[system.dim(H) for H in level] for level in stabs]
    total = [sum(d) for d in dims]
    p = system.p
    deltas = []
    for k in range(1, len(reps_by_dim)):
        off_s = np.concatenate([[0], np.cumsum(dims[k - 1])]).astype(int)
        off_t = np.concatenate([[0], np.cumsum(dims[k])]).astype(int)
        D = np.zeros((total[k], total[k - 1]), dtype=np.int64)
        for t, sigma in enumerate(reps_by_dim[k]):
            for i in range(len(sigma)):
                face = sigma[:i] + sigma[i + 1:]
                cls, conjugators = locate[k - 1][face]
                c = conjugators[0] if rng is None else rng.choice(conjugators)
                block = system.map(stabs[k][t], stabs[k - 1][cls], c)
                D[off_t[t]:off_t[t + 1], off_s[cls]:off_s[cls + 1]] += (-1) ** i * block
        deltas.append(D % p)
    out = []
    for k in range(i_max + 1):
        if k >= len(total):
            out.append(0)
            continue
        r_out = rank(deltas[k], p) if k < len(deltas) and deltas[k].size else 0
        r_in = rank(deltas[k - 1], p) if k >= 1 and deltas[k - 1].size else 0
        out.append(total[k] - r_out - r_in)
    return out


# -- sharpness -----------------------------------------------------------------------

TYPES = ("subgroup", "normalizer", "centralizer")


@dataclass
class SharpnessReport:
    verdict: str                      # SHARP_UP_TO_BOUNDS | FAILS | VACUOUS
    kind: str
    type: str
    n_max: int
    i_max: int
    records: list[dict]
    failure: dict | None = None
    note: str = ""
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "collection": self.kind, "type": self.type,
                "n_max": self.n_max, "i_max": self.i_max, "records": self.records,
                "failure": self.failure, "failures": self.failures, "note": self.note}


def index_category(G: GroupTable, C: Collection, type_: str) -> FiniteCategory:
    if type_ == "subgroup":
        return build_orbit_category(G, C, skeleton=True)
    if type_ == "centralizer":
        return build_conjugation_category(G, C, skeleton=True)
    if type_ == "normalizer":
        return build_orbit_simplex_category(G, C)
    raise ValueError(f"unknown sharpness type {type_!r}")


FUNCTOR_OF_TYPE = {"subgroup": "beta", "normalizer": "delta", "centralizer": "alpha"}


def sharpness_check(G: GroupTable, p: int, kind: str, type_: str, n_max: int = 3,
                    i_max: int = 3, bredon_check: bool = True,
                    method: str = "auto") -> SharpnessReport:
    C = collect(G, p, kind)
    if C.empty:
        return SharpnessReport("VACUOUS", kind, type_, n_max, i_max, [], None,
                               f"the collection {kind} is empty at p={p}")
    cat = index_category(G, C, type_)
    X = order_complex(Poset.from_collection(C)) if type_ == "normalizer" and bredon_check else None
    records = []
    failures: list[dict] = []
    for n in range(n_max + 1):
        F = make_functor(FUNCTOR_OF_TYPE[type_], cat, n=n, method=method)
        rep = higher_limits(F, i_max)
        cmp_ = comparison_map(G, n, F)
        rec = {"n": n, "dims": rep.dims, "lim0_families": rep.lim0_families, "comparison": cmp_}
        if X is not None:
            rec["bredon_dims"] = bredon_cohomology(X, F.system, i_max)
            rec["bredon_agrees"] = rec["bredon_dims"] == rep.dims
        records.append(rec)
        if not (cmp_["injective"] and cmp_["surjective"]):
            failures.append({"n": n, "i": 0, "source_dim": cmp_["source_dim"],
                             "lim0_dim": cmp_["lim0_dim"], "rank": cmp_["rank"]})
        failures.extend({"n": n, "i": i, "lim_dim": rep.dims[i]}
                        for i in range(1, i_max + 1) if rep.dims[i])
    # rank failures by limit degree first: a broken comparison map outranks higher limits
    failure = min(failures, key=lambda f: (f["i"], f["n"])) if failures else None
    verdict = "FAILS" if failure else "SHARP_UP_TO_BOUNDS"
    note = ""
    if type_ == "normalizer":
        note = "orbit-simplex category read as the poset of chain classes under refinement"
    return SharpnessReport(verdict, kind, type_, n_max, i_max, records, failure, note, failures)
