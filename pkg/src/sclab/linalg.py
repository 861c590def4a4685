"""Exact linear algebra over the prime field F_p on numpy int64 arrays.

Vectors are rows unless stated otherwise.  All routines reduce mod p on
entry, so callers may pass arbitrary integer arrays.
"""
from __future__ import annotations

import numpy as np


def as_fp(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns).

    Pivots are taken lowest row index first so results are reproducible.
    """
    m = as_fp(a, p).copy()
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            m[rows] = (m[rows] - np.outer(col[rows], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of {x : a @ x = 0 mod p}."""
    a = as_fp(a, p)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def row_space(a, p: int) -> np.ndarray:
    a = np.asarray(a)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64)
    return rref(a, p)[0]


class Solver:
    """Solves a @ x = b repeatedly for a fixed matrix a (columns = unknowns)."""

    def __init__(self, a, p: int):
        a = as_fp(a, p)
        self.p = p
        self.m, self.n = a.shape
        aug = np.concatenate([a, np.eye(self.m, dtype=np.int64)], axis=1)
        red, piv = rref(aug, p)
        self.pivots = [c for c in piv if c < self.n]
        self.rank = len(self.pivots)
        # rows of red = T @ [a | I]; the transform T sits in the right block
        full = np.zeros((self.m, self.n + self.m), dtype=np.int64)
        full[: red.shape[0]] = red
        self._r = full[:, : self.n]
        self._t = full[:, self.n:]
        # rows beyond rank of a describe the left kernel: consistency checks
        self._check = self._t[self.rank:]

    def solve(self, b) -> np.ndarray:
        b = as_fp(b, self.p)
        if self._check.size and np.any((self._check @ b) % self.p):
            raise ValueError("system is inconsistent")
        tb = (self._t[: self.rank] @ b) % self.p
        x = np.zeros(self.n, dtype=np.int64)
        x[self.pivots] = tb
        return x

    def solvable(self, b) -> bool:
        b = as_fp(b, self.p)
        return not (self._check.size and np.any((self._check @ b) % self.p))


class Subquotient:
    """Coordinates on Z / B for subspaces B <= Z of F_p^n (given by spanning rows)."""

    def __init__(self, z, b, p: int, dim: int):
        self.p = p
        self.ambient = dim
        zb = row_space(np.asarray(z, dtype=np.int64).reshape(-1, dim), p)
        bb = row_space(np.asarray(b, dtype=np.int64).reshape(-1, dim), p)
        nb = bb.shape[0]
        # extend a basis of B to one of Z using the vectors of Z in order
        basis = [row for row in bb]
        reps = []
        cur = nb
        for row in zb:
            trial = np.array(basis + [row]) if basis else row[None, :]
            if rank(trial, p) > cur:
                basis.append(row)
                reps.append(row)
                cur += 1
        self.nb = nb
        self.reps = np.array(reps, dtype=np.int64).reshape(-1, dim)
        self.dim = len(reps)
        full = np.array(basis, dtype=np.int64).reshape(-1, dim)
        self._solver = Solver(full.T, p) if full.shape[0] else None

    def coords(self, v) -> np.ndarray:
        """Coordinates of the class of v (v must lie in Z)."""
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        x = self._solver.solve(v)
        return x[self.nb:]

    def coords_matrix(self, vectors) -> np.ndarray:
        """Columns are coords of the given row vectors."""
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.ambient)
        out = np.zeros((self.dim, vectors.shape[0]), dtype=np.int64)
        for k, v in enumerate(vectors):
            out[:, k] = self.coords(v)
        return out


def sparse_rank_mod_p(rows: list[dict[int, int]], p: int) -> int:
    """Rank mod p of a sparse matrix given as a list of {col: value} rows."""
    work = [{c: v % p for c, v in r.items() if v % p} for r in rows]
    work = [r for r in work if r]
    by_col: dict[int, set[int]] = {}
    for i, r in enumerate(work):
        for c in r:
            by_col.setdefault(c, set()).add(i)
    alive = set(range(len(work)))
    rk = 0
    while alive:
        # shortest row first keeps fill-in low
        i = min(alive, key=lambda k: len(work[k]))
        row = work[i]
        alive.discard(i)
        if not row:
            continue
        c = min(row, key=lambda k: len(by_col[k]))
        inv = pow(row[c], -1, p)
        for k in list(by_col[c]):
            if k == i or k not in alive:
                continue
            other = work[k]
            f = (other[c] * inv) % p
            for cc, vv in row.items():
                nv = (other.get(cc, 0) - f * vv) % p
                if nv:
                    if cc not in other:
                        by_col.setdefault(cc, set()).add(k)
                    other[cc] = nv
                elif cc in other:
                    del other[cc]
                    by_col[cc].discard(k)
        for cc in row:
            by_col[cc].discard(i)
        rk += 1
    return rk


class SpanBuilder:
    """Incrementally grown subspace of F_p^dim kept in semi-echelon form."""

    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v) -> np.ndarray:
        v = as_fp(v, self.p).copy()
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v) -> bool:
        """Add v; returns False when v was already in the span."""
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, self.p)) % self.p
        self.rows.append(v)
        self.pivots.append(c)
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def basis(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.dim), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)
