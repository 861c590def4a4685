"""Finite groups as dense Cayley tables, subgroups as element bitmasks.

Element 0 is always the identity.  ``mult[a, b]`` is the index of the
product ``a * b``; for permutation groups ``a * b`` means "apply b, then a".
Conjugation ``g . x`` is ``g x g^-1``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_ORDER_CAP = 2000


class GroupError(ValueError):
    pass


def order_cap() -> int:
    return int(os.environ.get("SCLAB_ORDER_CAP", DEFAULT_ORDER_CAP))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def check_prime(p: int) -> None:
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


# -- bitmask helpers ---------------------------------------------------------

def mask_to_indices(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n]
    return np.flatnonzero(bits)


def bools_to_mask(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def indices_to_mask(idx, n: int) -> int:
    flags = np.zeros(n, dtype=bool)
    flags[np.asarray(idx, dtype=np.int64)] = True
    return bools_to_mask(flags)


def rows_to_masks(images: np.ndarray, n: int) -> list[int]:
    """One mask per row of an index array."""
    flags = np.zeros((images.shape[0], n), dtype=bool)
    flags[np.arange(images.shape[0])[:, None], images] = True
    packed = np.packbits(flags, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a fixed ambient GroupTable, identified by its member bitmask."""

    mask: int
    order: int
    n: int = field(compare=False, repr=False)

    @cached_property
    def members(self) -> np.ndarray:
        return mask_to_indices(self.mask, self.n)

    @cached_property
    def sort_key(self) -> tuple:
        return (self.order, tuple(int(x) for x in self.members))

    def __contains__(self, x) -> bool:
        return bool((self.mask >> int(x)) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self <= other

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    def __gt__(self, other: "Subgroup") -> bool:
        return other < self

    def is_trivial(self) -> bool:
        return self.order == 1


class GroupTable:
    """A validated finite group given by its multiplication table."""

    def __init__(self, mult, gens=(), name: str = "", labels=None,
                 generator_labels=None, check: bool = True):
        mult = np.asarray(mult, dtype=np.int32)
        n = mult.shape[0]
        if mult.shape != (n, n):
            raise GroupError("multiplication table must be square")
        self.mult = mult
        self.mult.setflags(write=False)
        self.order = n
        self.gens = tuple(int(g) for g in gens)
        self.name = name
        self.labels = labels
        self.generator_labels = generator_labels
        self._cache: dict = {}
        inv = np.argmax(mult == 0, axis=1).astype(np.int32)
        self.inv = inv
        if check:
            self._validate()

    def __repr__(self):
        return f"GroupTable({self.name or '?'}, order={self.order})"

    def _validate(self) -> None:
        n, m = self.order, self.mult
        ar = np.arange(n)
        if not (np.array_equal(m[0], ar) and np.array_equal(m[:, 0], ar)):
            raise GroupError("index 0 is not the identity")
        if not np.all(m[ar, self.inv] == 0) or not np.all(m[self.inv, ar] == 0):
            raise GroupError("inverse axiom fails")
        for row in m:
            if np.unique(row).size != n:
                raise GroupError("table is not a Latin square")
        if n <= 512:
            for a in range(n):
                # (a*b)*c == a*(b*c) for all b, c
                if not np.array_equal(m[m[a]], m[a][m]):
                    raise GroupError("associativity fails")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            if not np.array_equal(m[m[a, b], c], m[a, m[b, c]]):
                raise GroupError("associativity fails")

    # -- cached tables --------------------------------------------------------
    @cached_property
    def conj(self) -> np.ndarray:
        """conj[g, x] = g x g^-1."""
        m = self.mult
        return m[m, self.inv[:, None]]  # (g x) g^-1

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        todo = np.ones(n, dtype=bool)
        while todo.any():
            hit = todo & (cur == 0)
            orders[hit] = k
            todo &= ~hit
            cur = self.mult[cur, np.arange(n)]
            k += 1
        return orders

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = int(self.mult[r, x])
        return r

    def powers(self, k: int) -> np.ndarray:
        """x -> x^k for every element."""
        n = self.order
        cur = np.zeros(n, dtype=np.int64)
        ar = np.arange(n)
        for _ in range(k):
            cur = self.mult[cur, ar]
        return cur

    # -- subgroup construction ------------------------------------------------
    def subgroup(self, elems) -> Subgroup:
        """Wrap an element set already known to be a subgroup."""
        elems = np.unique(np.asarray(elems, dtype=np.int64))
        return Subgroup(indices_to_mask(elems, self.order), int(elems.size), self.order)

    def from_mask(self, mask: int) -> Subgroup:
        return Subgroup(mask, bin(mask).count("1"), self.order)

    @cached_property
    def whole(self) -> Subgroup:
        return self.subgroup(np.arange(self.order))

    @cached_property
    def trivial(self) -> Subgroup:
        return self.subgroup([0])

    def generate(self, elems) -> Subgroup:
        gens = np.unique(np.asarray([int(e) for e in elems if int(e) != 0], dtype=np.int64))
        n = self.order
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        if gens.size == 0:
            return self.trivial
        frontier = np.array([0])
        while frontier.size:
            nxt = np.unique(self.mult[np.ix_(frontier, gens)].ravel())
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        sub = Subgroup(bools_to_mask(seen), int(seen.sum()), n)
        self._cache.setdefault("gens", {}).setdefault(sub.mask, [int(g) for g in gens])
        return sub

    def generators(self, h: Subgroup) -> list[int]:
        """A small generating set of h (greedy)."""
        store = self._cache.setdefault("gens", {})
        if h.mask in store:
            return store[h.mask]
        gens: list[int] = []
        cur = self.trivial
        # try elements of large order first to keep the set small
        members = sorted(h.members.tolist(), key=lambda x: (-int(self.element_orders[x]), x))
        for x in members:
            if cur.order == h.order:
                break
            if x in cur:
                continue
            gens.append(x)
            cur = self.generate(gens)
        store[h.mask] = gens
        return gens

    def is_subgroup_set(self, elems) -> bool:
        elems = np.unique(np.asarray(elems, dtype=np.int64))
        if elems.size == 0 or 0 not in elems:
            return False
        inside = np.zeros(self.order, dtype=bool)
        inside[elems] = True
        return bool(inside[self.mult[np.ix_(elems, elems)]].all())

    # -- conjugation ------------------------------------------------------------
    def conjugate(self, h: Subgroup, g: int) -> Subgroup:
        """g h g^-1."""
        return Subgroup(indices_to_mask(self.conj[g, h.members], self.order), h.order, self.order)

    def conjugates(self, h: Subgroup, within: Subgroup | None = None) -> list[Subgroup]:
        els = np.arange(self.order) if within is None else within.members
        images = self.conj[np.ix_(els, h.members)]
        masks = sorted(set(rows_to_masks(images, self.order)))
        out = [Subgroup(m, h.order, self.order) for m in masks]
        return sorted(out, key=lambda s: s.sort_key)

    def intersection(self, *hs: Subgroup) -> Subgroup:
        mask = hs[0].mask
        for h in hs[1:]:
            mask &= h.mask
        return self.from_mask(mask)

    def join(self, *hs: Subgroup) -> Subgroup:
        gens: list[int] = []
        for h in hs:
            gens.extend(self.generators(h))
        return self.generate(gens)


def centralizer(G: GroupTable, s: Subgroup, within: Subgroup | None = None) -> Subgroup:
    gens = G.generators(s)
    cand = np.arange(G.order) if within is None else within.members
    if not gens:
        return G.subgroup(cand)
    g = np.asarray(gens)
    ok = np.all(G.mult[np.ix_(cand, g)] == G.mult[np.ix_(g, cand)].T, axis=1)
    return G.subgroup(cand[ok])


def normalizer(G: GroupTable, s: Subgroup, within: Subgroup | None = None) -> Subgroup:
    gens = G.generators(s)
    cand = np.arange(G.order) if within is None else within.members
    if not gens:
        return G.subgroup(cand)
    inside = np.zeros(G.order, dtype=bool)
    inside[s.members] = True
    ok = np.all(inside[G.conj[np.ix_(cand, np.asarray(gens))]], axis=1)
    return G.subgroup(cand[ok])


def center(G: GroupTable, h: Subgroup) -> Subgroup:
    return centralizer(G, h, within=h)


def is_normal(G: GroupTable, n: Subgroup, within: Subgroup | None = None) -> bool:
    amb = G.whole if within is None else within
    return normalizer(G, n, within=amb).order == amb.order


def is_p_group(h: Subgroup, p: int) -> bool:
    return is_p_power(h.order, p)


def is_abelian(G: GroupTable, h: Subgroup) -> bool:
    return center(G, h).order == h.order


def is_elementary_abelian(G: GroupTable, h: Subgroup, p: int) -> bool:
    if h.order == 1 or not is_p_power(h.order, p):
        return False
    if not is_abelian(G, h):
        return False
    return bool(np.all(G.element_orders[h.members] <= p))


def sylow_p(G: GroupTable, p: int, within: Subgroup | None = None) -> Subgroup:
    """One Sylow p-subgroup of ``within`` (default G); trivial if p does not divide the order."""
    check_prime(p)
    amb = G.whole if within is None else within
    target = p_part(amb.order, p)
    P = G.trivial
    pw = G.powers(p)
    while P.order < target:
        N = normalizer(G, P, within=amb)
        cand = N.members
        inP = np.zeros(G.order, dtype=bool)
        inP[P.members] = True
        ok = cand[(~inP[cand]) & inP[pw[cand]]]
        if ok.size == 0:
            raise GroupError("Sylow search stalled")
        P = G.generate(G.generators(P) + [int(ok[0])])
    return P


def all_sylows(G: GroupTable, p: int, within: Subgroup | None = None) -> list[Subgroup]:
    """The conjugation orbit of a Sylow p-subgroup; empty if p does not divide the order."""
    P = sylow_p(G, p, within)
    if P.order == 1:
        return []
    return G.conjugates(P, within)


def o_p(G: GroupTable, p: int, within: Subgroup | None = None) -> Subgroup:
    syl = all_sylows(G, p, within)
    if not syl:
        return G.trivial
    return G.intersection(*syl)


def omega1(G: GroupTable, a: Subgroup, p: int) -> Subgroup:
    if not is_p_power(a.order, p):
        raise GroupError("omega1 needs a p-group")
    if not is_abelian(G, a):
        raise GroupError("omega1 is only defined here on abelian p-groups")
    els = a.members
    return G.subgroup(els[G.powers(p)[els] == 0])


def frattini(G: GroupTable, P: Subgroup, p: int | None = None) -> Subgroup:
    """Phi(P) = P' P^p for a p-group P."""
    if P.order == 1:
        return P
    if p is None:
        p = _prime_of(P.order)
    if not is_p_power(P.order, p):
        raise GroupError("frattini needs a p-group")
    els = P.members
    m, inv = G.mult, G.inv
    xy = m[np.ix_(els, els)]
    yx = m[np.ix_(els, els)].T
    comm = m[xy, inv[yx]].ravel()  # (xy)(yx)^-1 = x y x^-1 y^-1
    powers = G.powers(p)[els]
    return G.generate(np.concatenate([comm, powers]))


def _prime_of(n: int) -> int:
    k = 2
    while n % k:
        k += 1
    return k


def product_subgroup(G: GroupTable, a: Subgroup, b: Subgroup) -> Subgroup:
    """AB, assuming one of the factors normalizes the other."""
    return G.join(a, b)


def subgroup_table(G: GroupTable, h: Subgroup) -> tuple[GroupTable, np.ndarray]:
    """h as a GroupTable with local indices; returns (table, embedding local->global)."""
    emb = h.members
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[emb] = np.arange(emb.size)
    local = pos[G.mult[np.ix_(emb, emb)]]
    gens = [int(pos[g]) for g in G.generators(h)]
    return GroupTable(local, gens, name=f"sub({h.order})", check=False), emb


def quotient(G: GroupTable, n: Subgroup, within: Subgroup | None = None
             ) -> tuple[GroupTable, np.ndarray]:
    """within / n as a GroupTable plus the projection (index -1 outside ``within``)."""
    amb = G.whole if within is None else within
    if not n <= amb or not is_normal(G, n, within=amb):
        raise GroupError("subgroup is not normal")
    proj = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in amb.members:  # ascending, so the identity coset gets label 0
        if proj[x] >= 0:
            continue
        coset = G.mult[x, n.members]
        proj[coset] = len(reps)
        reps.append(int(x))
    reps = np.asarray(reps)
    table = proj[G.mult[np.ix_(reps, reps)]]
    gens = sorted({int(proj[g]) for g in G.generators(amb)} - {0})
    return GroupTable(table, gens, name="quotient", check=False), proj


def subgroup_of_quotient_preimage(G: GroupTable, proj: np.ndarray, qsub: Subgroup) -> Subgroup:
    return G.subgroup(np.flatnonzero(np.isin(proj, qsub.members)))


# -- subgroup enumeration -------------------------------------------------------

@dataclass
class SubgroupLattice:
    """All subgroups of an ambient subgroup, with conjugacy classes."""

    subgroups: list[Subgroup]
    classes: list[list[int]]          # indices into subgroups, per conjugacy class
    class_of: list[int]

    def class_reps(self) -> list[Subgroup]:
        return [self.subgroups[c[0]] for c in self.classes]


def cyclic_subgroups(G: GroupTable, within: Subgroup | None = None) -> list[Subgroup]:
    els = range(G.order) if within is None else within.members.tolist()
    seen: dict[int, Subgroup] = {}
    for x in els:
        c = G.generate([x])
        seen.setdefault(c.mask, c)
    return sorted(seen.values(), key=lambda s: s.sort_key)


def subgroups_all(G: GroupTable, within: Subgroup | None = None) -> SubgroupLattice:
    """Every subgroup of ``within`` (default G), each once, sorted by (order, members).

    Built by joining cyclic subgroups onto conjugacy-class representatives;
    every subgroup is a join of its cyclic subgroups, so the closure is
    complete, including perfect subgroups.
    """
    amb = G.whole if within is None else within
    if amb.order > order_cap():
        raise GroupError(f"order {amb.order} exceeds cap {order_cap()}")
    cyc = cyclic_subgroups(G, amb)
    found: dict[int, Subgroup] = {}
    for c in cyc:
        for k in G.conjugates(c, amb):
            found.setdefault(k.mask, k)
    pending = sorted({_class_min(G, c, amb).mask: _class_min(G, c, amb) for c in cyc}.values(),
                     key=lambda s: s.sort_key)
    done: set[int] = set()
    while pending:
        h = pending.pop(0)
        if h.mask in done:
            continue
        done.add(h.mask)
        hg = G.generators(h)
        for c in cyc:
            if c <= h:
                continue
            j = G.generate(hg + G.generators(c))
            if j.mask in found:
                continue
            conj = G.conjugates(j, amb)
            for k in conj:
                found[k.mask] = k
            pending.append(conj[0])
        pending.sort(key=lambda s: s.sort_key)
    subs = sorted(found.values(), key=lambda s: s.sort_key)
    return _attach_classes(G, subs, amb)


def _class_min(G: GroupTable, h: Subgroup, amb: Subgroup) -> Subgroup:
    return G.conjugates(h, amb)[0]


def _attach_classes(G: GroupTable, subs: list[Subgroup], amb: Subgroup) -> SubgroupLattice:
    index = {s.mask: i for i, s in enumerate(subs)}
    class_of = [-1] * len(subs)
    classes: list[list[int]] = []
    for i, s in enumerate(subs):
        if class_of[i] >= 0:
            continue
        members = sorted(index[k.mask] for k in G.conjugates(s, amb))
        for j in members:
            class_of[j] = len(classes)
        classes.append(members)
    return SubgroupLattice(subs, classes, class_of)


def subgroups_naive(G: GroupTable) -> list[Subgroup]:
    """Independent oracle: subgroups as unions of cyclic subgroups closed under mult.

    Exponential in the number of cyclic subgroups; meant for orders <= 48.
    """
    cyc = cyclic_subgroups(G)[1:]  # drop the trivial one
    n = G.order
    found = {G.trivial.mask}
    cyc_masks = [c.mask for c in cyc]

    def closed(mask: int) -> bool:
        els = mask_to_indices(mask, n)
        flags = np.zeros(n, dtype=bool)
        flags[els] = True
        return bool(flags[G.mult[np.ix_(els, els)]].all())

    def rec(start: int, mask: int) -> None:
        for i in range(start, len(cyc_masks)):
            cm = cyc_masks[i]
            if cm & mask == cm:
                continue
            new = mask | cm
            # a subgroup is the union of the cyclic subgroups it contains:
            # only recurse on sets that do not skip a contained earlier cyclic
            if any(cyc_masks[j] & new == cyc_masks[j] and cyc_masks[j] & mask != cyc_masks[j]
                   for j in range(i)):
                continue
            if closed(new):
                found.add(new)
            rec(i + 1, new)

    rec(0, G.trivial.mask)
    subs = [G.from_mask(m) for m in found]
    return sorted(subs, key=lambda s: s.sort_key)
