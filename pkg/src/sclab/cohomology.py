"""Mod-p group cohomology from free resolutions over the group algebra F_p[H].

A free module F = F_p[H]^r is stored as vectors of length r*|H|; coordinate
(j, h) holds the coefficient of h*e_j.  The group acts on the left, so a
module map is fixed by the images of the generators e_j and the F_p-matrix
of d sends the basis vector h*e_j to h*d(e_j).

Non-p-groups take one of two exact routes.  "resolution" resolves F_p over
F_p[H] directly with greedy (non-minimal) generators; "stable" realizes
H^n(H) as the stable elements inside H^n(S) for a Sylow subgroup S of H and
computes every map between p-groups.  The default picks the direct route for
ambient groups of order at most RESOLUTION_ORDER_LIMIT, where it stays cheap
and doubles as an independent check of the other route.

Orientation: a homomorphism c: K -> H, k -> a^-1 k a (needs a^-1 K a <= H)
induces c^*: H^n(H) -> H^n(K).  Every map this module returns has that
shape, (dim H^n(K)) x (dim H^n(H)), whether it is a restriction
(a = identity) or a conjugation.
"""
from __future__ import annotations

import os

import numpy as np

from .groups import GroupError, GroupTable, Subgroup, is_p_group, subgroup_table, sylow_p
from .linalg import Solver, SpanBuilder, Subquotient, nullspace, rank, rref, row_space

DEFAULT_DEGREE_CAP = 4
RESOLUTION_ORDER_LIMIT = 120
METHODS = ("auto", "resolution", "stable")


class DegreeCapError(GroupError):
    pass


def degree_cap() -> int:
    return int(os.environ.get("SCLAB_DEGREE_CAP", DEFAULT_DEGREE_CAP))


def _expand(vecs: np.ndarray, R: int, acts, mult: np.ndarray) -> np.ndarray:
    """F_p-matrix whose column (j, s) is acts[s] * vecs[j] in F_p[H]^R."""
    r = vecs.shape[0]
    m = mult.shape[0]
    acts = list(acts)
    V = vecs.reshape(r, R, m)
    out = np.zeros((r, len(acts), R, m), dtype=np.int64)
    for s, h in enumerate(acts):
        out[:, s][:, :, mult[h]] = V
    return out.reshape(r * len(acts), R * m).T


class Resolution:
    """Free resolution F_* -> F_p over F_p[H]; minimal when H is a p-group."""

    def __init__(self, G: GroupTable, H: Subgroup, p: int):
        self.G, self.H, self.p = G, H, p
        self.table, self.emb = subgroup_table(G, H)
        self.m = H.order
        self.local = np.full(G.order, -1, dtype=np.int64)
        self.local[self.emb] = np.arange(self.m)
        self.minimal = is_p_group(H, p)
        self.ranks = [1]
        self.images: list[np.ndarray | None] = [None]     # d_n(e_j) in F_{n-1}
        self.big = [np.ones((1, self.m), dtype=np.int64)]  # F_p-matrix of d_n
        self.eps: list[np.ndarray | None] = [None]        # augmented images, r_n x r_{n-1}
        self._solvers: dict[int, Solver] = {}
        self._cohom: dict[int, Subquotient] = {}

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def extend_to(self, N: int) -> None:
        p, m, mult = self.p, self.m, self.table.mult
        while self.length < N:
            n = self.length
            R = self.ranks[n]
            K = nullspace(self.big[n], p)
            if K.shape[0] == 0:
                gens = np.zeros((0, R * m), dtype=np.int64)
            elif self.minimal:
                gens = self._radical_complement(K, R)
            else:
                gens = self._greedy_generators(K, R)
            r = gens.shape[0]
            self.images.append(gens)
            self.big.append(_expand(gens, R, range(m), mult) % p if r else
                            np.zeros((R * m, 0), dtype=np.int64))
            self.eps.append(gens.reshape(r, R, m).sum(axis=2) % p)
            self.ranks.append(r)

    def _radical_complement(self, K: np.ndarray, R: int) -> np.ndarray:
        """Lift a basis of K / (I K): a minimal generating set for a p-group."""
        p, m, mult = self.p, self.m, self.table.mult
        parts = []
        for g in self.table.gens or list(range(1, m)):
            moved = _expand(K, R, [g], mult).T
            parts.append((moved - K) % p)
        IK = row_space(np.concatenate(parts), p) if parts else np.zeros((0, K.shape[1]), dtype=np.int64)
        cols = np.concatenate([IK, K]).T
        _, piv = rref(cols, p)
        chosen = [c - IK.shape[0] for c in piv if c >= IK.shape[0]]
        return K[chosen]

    def _greedy_generators(self, K: np.ndarray, R: int) -> np.ndarray:
        p, m, mult = self.p, self.m, self.table.mult
        span = SpanBuilder(K.shape[1], p)
        gens = []
        for v in K:
            if span.rank == K.shape[0]:
                break
            if span.contains(v):
                continue
            gens.append(v)
            for w in _expand(v[None, :], R, range(m), mult).T:
                span.add(w)
        return np.array(gens, dtype=np.int64)

    def solver(self, n: int) -> Solver:
        if n not in self._solvers:
            self._solvers[n] = Solver(self.big[n], self.p)
        return self._solvers[n]

    def cohomology(self, n: int) -> Subquotient:
        """H^n as cocycles modulo coboundaries in Hom(F_n, F_p) = F_p^{r_n}."""
        if n not in self._cohom:
            self.extend_to(n + 1)
            r = self.ranks[n]
            Z = nullspace(self.eps[n + 1], self.p) if self.ranks[n + 1] else np.eye(r, dtype=np.int64)
            B = self.eps[n].T if n > 0 else np.zeros((0, r), dtype=np.int64)
            self._cohom[n] = Subquotient(Z, B, self.p, r)
        return self._cohom[n]

    def check(self, N: int) -> None:
        """d^2 = 0, exactness, and (for p-groups) minimality through degree N."""
        self.extend_to(N + 1)
        p = self.p
        for n in range(1, N + 1):
            if np.any((self.big[n - 1] @ self.big[n]) % p):
                raise AssertionError(f"d^2 != 0 in degree {n}")
        for n in range(0, N + 1):
            ker = self.big[n].shape[1] - rank(self.big[n], p)
            if rank(self.big[n + 1], p) != ker:
                raise AssertionError(f"resolution not exact in degree {n}")
        if self.minimal:
            for n in range(1, N + 1):
                if np.any(self.eps[n]):
                    raise AssertionError(f"resolution not minimal in degree {n}")


class CohomologyEngine:
    """Resolutions and induced maps for subgroups of one group at one prime (the cache)."""

    def __init__(self, G: GroupTable, p: int, cap: int | None = None, method: str = "auto"):
        if method not in METHODS:
            raise ValueError(f"unknown cohomology method {method!r}")
        self.G, self.p = G, p
        self.cap = degree_cap() if cap is None else cap
        if method == "auto":
            method = "resolution" if G.order <= RESOLUTION_ORDER_LIMIT else "stable"
        self.method = method
        self._sylow: dict[int, Subgroup] = {}
        self._stable: dict[tuple[int, int], np.ndarray] = {}
        self._res: dict[int, Resolution] = {}
        self._chain: dict[tuple, list[np.ndarray]] = {}
        self._maps: dict[tuple, np.ndarray] = {}
        self._requests: dict[tuple[int, int, int, int], tuple[Subgroup, Subgroup]] = {}

    def _check_degree(self, n: int) -> None:
        if n < 0:
            raise ValueError("degree must be nonnegative")
        if n > self.cap:
            raise DegreeCapError(f"degree {n} exceeds cap {self.cap}")

    def trivial_in(self, H: Subgroup, n: int) -> bool:
        """True when H^n(H;F_p) is known to vanish without computation."""
        return n > 0 and H.order % self.p != 0

    def resolution(self, H: Subgroup) -> Resolution:
        if H.mask not in self._res:
            self._res[H.mask] = Resolution(self.G, H, self.p)
        return self._res[H.mask]

    def dim(self, H: Subgroup, n: int) -> int:
        self._check_degree(n)
        if n == 0:
            return 1
        if self.trivial_in(H, n):
            return 0
        if self._direct(H):
            return self.resolution(H).cohomology(n).dim
        return self.stable_basis(H, n).shape[0]

    def _direct(self, H: Subgroup) -> bool:
        return self.method == "resolution" or is_p_group(H, self.p)

    def sylow(self, H: Subgroup) -> Subgroup:
        if H.mask not in self._sylow:
            self._sylow[H.mask] = H if is_p_group(H, self.p) else sylow_p(self.G, self.p, within=H)
        return self._sylow[H.mask]

    def stable_basis(self, H: Subgroup, n: int) -> np.ndarray:
        """Rows spanning the stable elements of H^n(S) for the chosen Sylow S of H."""
        key = (H.mask, n)
        if key in self._stable:
            return self._stable[key]
        G, p = self.G, self.p
        S = self.sylow(H)
        d = self.dim(S, n)
        rows = []
        covered = np.zeros(G.order, dtype=bool)
        for g in H.members:
            if covered[g]:
                continue
            dc = G.mult[G.mult[S.members, g]][:, S.members]
            covered[dc.ravel()] = True
            T = G.intersection(S, G.conjugate(S, int(g)))
            diff = (self._map_direct(T, S, 0, n) - self._map_direct(T, S, int(g), n)) % p
            if diff.any():
                rows.append(diff)
        B = nullspace(np.concatenate(rows), p) if rows else np.eye(d, dtype=np.int64)
        self._stable[key] = B
        return B

    def chain_map(self, K: Subgroup, H: Subgroup, a: int, N: int) -> list[np.ndarray]:
        """Lift of the identity of F_p along k -> a^-1 k a, through degree N."""
        G, p = self.G, self.p
        P, Q = self.resolution(K), self.resolution(H)
        inv_a = int(G.inv[a])
        glob = G.conj[inv_a, K.members]           # a^-1 k a for k in K, in K's local order
        alpha = Q.local[glob]
        if (alpha < 0).any():
            raise GroupError("a^-1 K a is not contained in H")
        key = (K.mask, H.mask, tuple(alpha[list(P.table.gens)].tolist()))
        T = self._chain.get(key)
        if T is None:
            T0 = np.zeros((1, Q.m), dtype=np.int64)
            T0[0, 0] = 1
            T = [T0]
            self._chain[key] = T
        P.extend_to(N)
        Q.extend_to(N)
        while len(T) <= N:
            n = len(T)
            prev = _expand(T[n - 1], Q.ranks[n - 1], alpha, Q.table.mult)
            rhs = (prev @ P.images[n].T) % p
            S = Q.solver(n)
            cols = [S.solve(rhs[:, j]) for j in range(rhs.shape[1])]
            T.append(np.array(cols, dtype=np.int64).reshape(len(cols), Q.ranks[n] * Q.m))
        return T

    def map(self, K: Subgroup, H: Subgroup, a: int, n: int) -> np.ndarray:
        """c^*: H^n(H) -> H^n(K) for c(k) = a^-1 k a."""
        self._check_degree(n)
        if n == 0:
            return np.ones((1, 1), dtype=np.int64)
        dk, dh = self.dim(K, n), self.dim(H, n)
        if dk == 0 or dh == 0:
            return np.zeros((dk, dh), dtype=np.int64)
        self._requests.setdefault((K.mask, H.mask, int(a), n), (K, H))
        if self._direct(K) and self._direct(H):
            return self._map_direct(K, H, a, n)
        G, p = self.G, self.p
        SK, SH = self.sylow(K), self.sylow(H)
        inSH = np.zeros(G.order, dtype=bool)
        inSH[SH.members] = True
        b = next((int(G.mult[a, h]) for h in H.members
                  if inSH[G.conj[G.inv[G.mult[a, h]], SK.members]].all()), None)
        if b is None:
            raise GroupError("a^-1 K a is not contained in H")
        BH = self.stable_basis(H, n) if not self._direct(H) else np.eye(dh, dtype=np.int64)
        BK = self.stable_basis(K, n) if not self._direct(K) else np.eye(dk, dtype=np.int64)
        Y = (self._map_direct(SK, SH, b, n) @ BH.T) % p
        S = Solver(BK.T, p)
        return np.array([S.solve(Y[:, j]) for j in range(dh)], dtype=np.int64).T % p

    def audit(self, max_pairs: int = 5000) -> int:
        """Recheck every map requested so far; returns the number of identities verified.

        Two families are tested: conjugation by an element of the source
        subgroup acts trivially (a and a*h give the same map), and composites
        of requested maps agree with the map of the composite conjugation.
        """
        G, p = self.G, self.p
        reqs = list(self._requests.items())
        checked = 0
        for (_, _, a, n), (K, H) in reqs:
            M = self.map(K, H, a, n) % p
            for h in H.members[:3].tolist():
                if not np.array_equal(self.map(K, H, int(G.mult[a, h]), n) % p, M):
                    raise AssertionError(f"inner conjugation acts nontrivially on H^{n}")
                checked += 1
        by_source: dict[tuple[int, int], list] = {}
        for (km, hm, a, n), (K, H) in reqs:
            by_source.setdefault((km, n), []).append((a, K, H))
        pairs = 0
        for (lm, km, b, n), (L, K) in reqs:
            for a, _, H in by_source.get((km, n), []):
                if pairs >= max_pairs:
                    return checked
                left = self.map(L, K, b, n) @ self.map(K, H, a, n) % p
                if not np.array_equal(left, self.map(L, H, int(G.mult[b, a]), n) % p):
                    raise AssertionError(f"restriction is not transitive in degree {n}")
                pairs += 1
                checked += 1
        return checked

    def _map_direct(self, K: Subgroup, H: Subgroup, a: int, n: int) -> np.ndarray:
        if n == 0:
            return np.ones((1, 1), dtype=np.int64)
        dk, dh = self.dim(K, n), self.dim(H, n)
        if dk == 0 or dh == 0:
            return np.zeros((dk, dh), dtype=np.int64)
        G = self.G
        inv_a = int(G.inv[a])
        key = (K.mask, H.mask, tuple(G.conj[inv_a, G.generators(K)].tolist()), n)
        if key in self._maps:
            return self._maps[key]
        P, Q = self.resolution(K), self.resolution(H)
        T = self.chain_map(K, H, a, n)[n]
        E = T.reshape(P.ranks[n], Q.ranks[n], Q.m).sum(axis=2) % self.p
        src = Q.cohomology(n)
        dst = P.cohomology(n)
        images = (E @ src.reps.T).T % self.p
        M = dst.coords_matrix(images) % self.p
        self._maps[key] = M
        return M


def engine(G: GroupTable, p: int, method: str = "auto") -> CohomologyEngine:
    key = ("cohomology", p, method)
    if key not in G._cache:
        G._cache[key] = CohomologyEngine(G, p, method=method)
    return G._cache[key]


def group_cohomology(G: GroupTable, H: Subgroup, n: int, p: int) -> int:
    """dim over F_p of H^n(H; F_p)."""
    return engine(G, p).dim(H, n)


def restriction_map(G: GroupTable, K: Subgroup, H: Subgroup, n: int, p: int) -> np.ndarray:
    """res: H^n(H) -> H^n(K) for K <= H."""
    if not K <= H:
        raise GroupError("restriction needs K <= H")
    return engine(G, p).map(K, H, 0, n)


def conjugation_map(G: GroupTable, g: int, H: Subgroup, n: int, p: int) -> np.ndarray:
    """H^n(H) -> H^n(gHg^-1), induced by gHg^-1 -> H, y -> g^-1 y g."""
    return engine(G, p).map(G.conjugate(H, g), H, g, n)


def bar_cohomology_dims(G: GroupTable, H: Subgroup, p: int, n_max: int = 2) -> list[int]:
    """dim H^n(H;F_p) for n <= n_max from inhomogeneous cochains (independent oracle)."""
    T, _ = subgroup_table(G, H)
    m = T.order
    mult = T.mult

    def delta(n: int) -> np.ndarray:
        # (df)(g_1..g_{n+1}) = f(g_2..) + sum_i (-1)^i f(..g_i g_{i+1}..) + (-1)^{n+1} f(g_1..g_n)
        rows = m ** (n + 1)
        D = np.zeros((rows, m ** n), dtype=np.int64)
        tup = np.array(np.unravel_index(np.arange(rows), (m,) * (n + 1))).T if n + 1 else None
        r = np.arange(rows)

        def col(args):
            if not args:
                return np.zeros(rows, dtype=np.int64)
            return np.ravel_multi_index(tuple(args), (m,) * len(args))

        np.add.at(D, (r, col([tup[:, k] for k in range(1, n + 1)])), 1)
        for i in range(1, n + 1):
            args = [tup[:, k] for k in range(i - 1)] + [mult[tup[:, i - 1], tup[:, i]]] + \
                   [tup[:, k] for k in range(i + 1, n + 1)]
            np.add.at(D, (r, col(args)), (-1) ** i)
        np.add.at(D, (r, col([tup[:, k] for k in range(n)])), (-1) ** (n + 1))
        return D % p

    dims = []
    prev_rank = 0
    for n in range(n_max + 1):
        D = delta(n)
        rk = rank(D, p)
        dims.append(m ** n - rk - prev_rank)
        prev_rank = rk
    return dims
