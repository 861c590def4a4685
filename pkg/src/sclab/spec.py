"""One-line group specifications and the constructions behind them.

Grammar::

    cyclic:N | dihedral:N | quaternion:N | elemab:p^k | extraspecial:p
    | sym:N | alt:N | SL:2,4 | SL:3,2 | perm:<cycles>[;degree=d]
    | product(<spec>,<spec>,...) | semidirect(<normal>,<actor>,<action>)

``dihedral:N`` and ``quaternion:N`` name the group of order N.  Permutation
points are 1-based; generators are separated by commas, e.g.
``perm:(1 2 3 4),(1 3)``.

The semidirect action lists, for each generator of the actor, the images
of the normal factor's generators, entries separated by ``;``.  An entry
is either cycle notation over the (1-based) generator indices, e.g.
``(1 2)``, or a space separated list of words such as ``x2 x1 x3^-1``.
The keyword ``invert`` sends every generator to its inverse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .groups import GroupError, GroupTable, is_prime, order_cap


class SpecError(GroupError):
    def __init__(self, msg: str, text: str = "", col: int | None = None):
        where = f" (line 1, column {col + 1})" if col is not None else ""
        super().__init__(f"{msg}{where}" + (f": {text!r}" if text else ""))
        self.col = col


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    args: tuple = ()
    parts: tuple = field(default=())
    text: str = ""

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        return _parse(text.strip(), 0)

    def __str__(self):
        return self.text


def _split_args(body: str, offset: int) -> list[tuple[str, int]]:
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise SpecError("unbalanced parenthesis", body, offset + i)
        elif ch == "," and depth == 0:
            pieces.append((body[start:i], offset + start))
            start = i + 1
    if depth:
        raise SpecError("unbalanced parenthesis", body, offset + len(body))
    pieces.append((body[start:], offset + start))
    # glue bare cycles back onto a preceding perm: spec
    out: list[tuple[str, int]] = []
    for s, o in pieces:
        if out and s.strip().startswith("(") and out[-1][0].strip().startswith("perm:"):
            out[-1] = (out[-1][0] + "," + s, out[-1][1])
        else:
            out.append((s, o))
    return [(s.strip(), o + (len(s) - len(s.lstrip()))) for s, o in out]


_SIMPLE = {"cyclic", "dihedral", "quaternion", "elemab", "extraspecial", "sym", "alt", "SL", "perm"}


def _parse(text: str, offset: int) -> GroupSpec:
    if not text:
        raise SpecError("empty group spec", text, offset)
    m = re.match(r"^(product|semidirect)\s*\((.*)\)$", text, re.S)
    if m:
        kind = m.group(1)
        pieces = _split_args(m.group(2), offset + m.start(2))
        if kind == "product":
            if len(pieces) < 2:
                raise SpecError("product needs at least two factors", text, offset)
            return GroupSpec("product", (), tuple(_parse(s, o) for s, o in pieces), text)
        if len(pieces) != 3:
            raise SpecError("semidirect needs (normal, actor, action)", text, offset)
        normal, actor = _parse(*pieces[0]), _parse(*pieces[1])
        return GroupSpec("semidirect", (pieces[2][0],), (normal, actor), text)
    if ":" not in text:
        raise SpecError("expected '<family>:<args>'", text, offset)
    fam, arg = text.split(":", 1)
    fam = fam.strip()
    if fam not in _SIMPLE:
        raise SpecError(f"unknown family {fam!r}", text, offset)
    arg_off = offset + text.index(":") + 1
    arg = arg.strip()
    if fam == "perm":
        return GroupSpec("perm", _parse_perm_args(arg, arg_off), (), text)
    try:
        if fam == "elemab":
            p, k = arg.split("^")
            args = (int(p), int(k))
        elif fam == "SL":
            n, q = arg.split(",")
            args = (int(n), int(q))
        else:
            args = (int(arg),)
    except ValueError:
        raise SpecError(f"bad arguments for {fam}", text, arg_off) from None
    return GroupSpec(fam, args, (), text)


def _parse_perm_args(arg: str, offset: int) -> tuple:
    degree = None
    if ";" in arg:
        arg, extra = arg.split(";", 1)
        m = re.fullmatch(r"\s*degree\s*=\s*(\d+)\s*", extra)
        if not m:
            raise SpecError("expected ';degree=d'", extra, offset + len(arg) + 1)
        degree = int(m.group(1))
    gens = []
    for piece, o in _split_args(arg, offset):
        cycles = []
        pos = 0
        s = piece
        while pos < len(s):
            if s[pos].isspace():
                pos += 1
                continue
            if s[pos] != "(":
                raise SpecError("malformed cycle notation", piece, o + pos)
            end = s.find(")", pos)
            if end < 0:
                raise SpecError("unterminated cycle", piece, o + pos)
            body = s[pos + 1:end].replace(",", " ").split()
            if not body or not all(t.isdigit() for t in body):
                raise SpecError("malformed cycle notation", piece, o + pos)
            pts = [int(t) for t in body]
            if len(set(pts)) != len(pts) or min(pts) < 1:
                raise SpecError("malformed cycle notation", piece, o + pos)
            cycles.append(tuple(pts))
            pos = end + 1
        gens.append(tuple(cycles))
    return (tuple(gens), degree)


# -- builders ------------------------------------------------------------------

def build_group(spec, cap: int | None = None) -> GroupTable:
    """Resolve a GroupSpec (or its text) to a validated GroupTable."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    cap = order_cap() if cap is None else cap
    G = _build(spec, cap)
    G.name = spec.text or G.name
    return G


def _build(spec: GroupSpec, cap: int) -> GroupTable:
    k, a = spec.kind, spec.args
    if k == "cyclic":
        return cyclic(a[0], cap)
    if k == "dihedral":
        return dihedral(a[0], cap)
    if k == "quaternion":
        return dicyclic(a[0], cap)
    if k == "elemab":
        p, e = a
        if not is_prime(p):
            raise SpecError("elemab needs a prime base", spec.text)
        G = cyclic(p, cap)
        for _ in range(e - 1):
            G = direct_product(G, cyclic(p, cap), cap)
        return G
    if k == "extraspecial":
        return extraspecial(a[0], cap)
    if k == "sym":
        n = a[0]
        gens = [tuple(range(1, n + 1))] if n > 1 else []
        if n > 2:
            gens.append((1, 2))
        return perm_group([(c,) for c in gens], n, cap)
    if k == "alt":
        n = a[0]
        gens = [((1, 2, j),) for j in range(3, n + 1)]
        return perm_group(gens, max(n, 1), cap)
    if k == "SL":
        return special_linear(a[0], a[1], cap)
    if k == "perm":
        gens, degree = a
        pts = [x for g in gens for c in g for x in c]
        d = degree if degree is not None else max(pts, default=1)
        if pts and max(pts) > d:
            raise SpecError("point exceeds degree", spec.text)
        return perm_group(gens, d, cap)
    if k == "product":
        G = _build(spec.parts[0], cap)
        for part in spec.parts[1:]:
            G = direct_product(G, _build(part, cap), cap)
        return G
    if k == "semidirect":
        N = _build(spec.parts[0], cap)
        K = _build(spec.parts[1], cap)
        return semidirect(N, K, parse_action(spec.args[0], N, K), cap)
    raise SpecError(f"unknown spec kind {k}", spec.text)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise GroupError(f"group order {n} exceeds cap {cap}")


def cyclic(n: int, cap: int | None = None) -> GroupTable:
    if n < 1:
        raise SpecError("cyclic order must be positive")
    _check_cap(n, order_cap() if cap is None else cap)
    ar = np.arange(n)
    return GroupTable((ar[:, None] + ar[None, :]) % n, [1] if n > 1 else [], name=f"cyclic:{n}")


def closure_group(gens, mul, identity, cap: int, name: str = "", check: bool = True) -> GroupTable:
    """Enumerate the group generated by hashable elements under ``mul``."""
    elems = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        raise GroupError(f"group order exceeds cap {cap}")
        frontier = nxt
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    for i, x in enumerate(elems):
        table[i] = [index[mul(x, y)] for y in elems]
    gidx = [index[g] for g in gens if g != identity]
    return GroupTable(table, gidx, name=name, labels=elems, check=check)


def perm_group(gens, degree: int, cap: int | None = None) -> GroupTable:
    """Permutation group from generators given as tuples of 1-based cycles."""
    cap = order_cap() if cap is None else cap
    arrays = []
    for cycles in gens:
        img = list(range(degree))
        for c in cycles:
            for i, x in enumerate(c):
                img[x - 1] = c[(i + 1) % len(c)] - 1
        if sorted(img) != list(range(degree)):
            raise SpecError("cycles do not define a permutation")
        arrays.append(tuple(img))
    ident = tuple(range(degree))
    # enumerate elements with tuples, then build the table with numpy
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in arrays:
                y = tuple(x[i] for i in g)  # x after g: apply g first
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        raise GroupError(f"group order exceeds cap {cap}")
        frontier = nxt
    P = np.asarray(elems, dtype=np.int64).reshape(len(elems), degree)
    n = len(elems)
    base = degree ** np.arange(degree, dtype=np.int64)
    keys = P @ base
    order = np.argsort(keys)
    table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        comp = P[a][P]                       # (a*b)(x) = a(b(x))
        pos = np.searchsorted(keys[order], comp @ base)
        table[a] = order[pos]
    gidx = [index[g] for g in arrays if g != ident]
    return GroupTable(table, gidx, name="perm", labels=elems)


def dihedral(n: int, cap: int | None = None) -> GroupTable:
    if n < 2 or n % 2:
        raise SpecError("dihedral order must be even")
    m = n // 2

    def mul(x, y):
        (i, s), (j, t) = x, y
        return ((i + (j if s == 0 else -j)) % m, s ^ t)

    gens = [(1 % m, 0), (0, 1)] if m > 1 else [(0, 1)]
    return closure_group(gens, mul, (0, 0), order_cap() if cap is None else cap, f"dihedral:{n}")


def dicyclic(n: int, cap: int | None = None) -> GroupTable:
    """Dicyclic group of order n (quaternion when n is a power of 2)."""
    if n < 8 or n % 4:
        raise SpecError("quaternion order must be a multiple of 4, at least 8")
    m = n // 4  # a has order 2m, x^2 = a^m, x a x^-1 = a^-1

    def mul(u, v):
        (i, s), (j, t) = u, v
        if s == 0:
            return ((i + j) % (2 * m), t)
        if t == 0:
            return ((i - j) % (2 * m), 1)
        return ((i - j + m) % (2 * m), 0)

    return closure_group([(1, 0), (0, 1)], mul, (0, 0), order_cap() if cap is None else cap,
                         f"quaternion:{n}")


def extraspecial(p: int, cap: int | None = None) -> GroupTable:
    """p^{1+2}_+: exponent p Heisenberg group for odd p, D8 for p = 2."""
    if not is_prime(p):
        raise SpecError("extraspecial needs a prime")
    if p == 2:
        G = dihedral(8, cap)
        G.name = "extraspecial:2"
        return G

    def mul(u, v):
        a, b, c = u
        x, y, z = v
        return ((a + x) % p, (b + y) % p, (c + z + a * y) % p)

    return closure_group([(1, 0, 0), (0, 1, 0)], mul, (0, 0, 0),
                         order_cap() if cap is None else cap, f"extraspecial:{p}")


_F4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def special_linear(n: int, q: int, cap: int | None = None) -> GroupTable:
    """SL(n, q) for the hard-coded cases (2, 4) and (3, 2), by matrices."""
    if (n, q) == (3, 2):
        add = lambda a, b: a ^ b
        mul1 = lambda a, b: a & b
        scalars = [1]
    elif (n, q) == (2, 4):
        add = lambda a, b: a ^ b  # F4 = {0, 1, w, w^2} with w^2 = w + 1
        mul1 = lambda a, b: _F4_MUL[a][b]
        scalars = [1, 2]
    else:
        raise SpecError("only SL:2,4 and SL:3,2 are supported")

    def matmul(x, y):
        out = []
        for i in range(n):
            for j in range(n):
                s = 0
                for k in range(n):
                    s = add(s, mul1(x[i * n + k], y[k * n + j]))
                out.append(s)
        return tuple(out)

    ident = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for t in scalars:
                    e = list(ident)
                    e[i * n + j] = t
                    gens.append(tuple(e))
    return closure_group(gens, matmul, ident, order_cap() if cap is None else cap, f"SL:{n},{q}")


def direct_product(A: GroupTable, B: GroupTable, cap: int | None = None) -> GroupTable:
    n, m = A.order, B.order
    _check_cap(n * m, order_cap() if cap is None else cap)
    ma = A.mult.astype(np.int64)
    mb = B.mult.astype(np.int64)
    table = (ma[:, None, :, None] * m + mb[None, :, None, :]).reshape(n * m, n * m)
    gens = [g * m for g in A.gens] + list(B.gens)
    return GroupTable(table, gens, name=f"{A.name}x{B.name}")


def _words(G: GroupTable) -> list[tuple[int, int]]:
    """(parent, generator) with element = parent * generator, by BFS from 1."""
    parent = [(-1, -1)] * G.order
    seen = [False] * G.order
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in G.gens:
                y = int(G.mult[x, g])
                if not seen[y]:
                    seen[y] = True
                    parent[y] = (x, g)
                    nxt.append(y)
        frontier = nxt
    if not all(seen):
        raise GroupError("generators do not generate the group")
    return parent


def _extend_hom(G: GroupTable, H: GroupTable, images: dict[int, int]) -> np.ndarray:
    """Extend generator images to a map G -> H and check it is a homomorphism."""
    parent = _words(G)
    phi = np.zeros(G.order, dtype=np.int64)
    order = _bfs_order(parent)
    for y in order[1:]:
        x, g = parent[y]
        phi[y] = H.mult[phi[x], images[g]]
    lhs = phi[G.mult]
    rhs = H.mult[phi[:, None], phi[None, :]]
    if not np.array_equal(lhs, rhs):
        raise GroupError("generator images do not define a homomorphism")
    return phi


def _bfs_order(parent) -> list[int]:
    children: dict[int, list[int]] = {}
    for y, (x, _) in enumerate(parent):
        if x >= 0:
            children.setdefault(x, []).append(y)
    out, stack = [], [0]
    while stack:
        x = stack.pop(0)
        out.append(x)
        stack.extend(children.get(x, []))
    return out


def parse_action(text: str, N: GroupTable, K: GroupTable) -> list[dict[int, int]]:
    """Images of N's generators for each generator of K."""
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    ng = list(N.gens)
    if text == "invert":
        return [{g: int(N.inv[g]) for g in ng} for _ in K.gens]
    entries = [e.strip() for e in text.split(";")]
    if len(entries) != len(K.gens):
        raise SpecError(f"action needs {len(K.gens)} entries, got {len(entries)}", text)
    out = []
    for e in entries:
        if e.startswith("("):
            perm = list(range(len(ng)))
            for c in re.findall(r"\(([^)]*)\)", e):
                pts = [int(t) - 1 for t in c.replace(",", " ").split()]
                for i, x in enumerate(pts):
                    perm[x] = pts[(i + 1) % len(pts)]
            out.append({ng[i]: ng[perm[i]] for i in range(len(ng))})
            continue
        words = e.split()
        if len(words) != len(ng):
            raise SpecError("one image word per normal generator expected", e)
        out.append({ng[i]: _eval_word(w, N) for i, w in enumerate(words)})
    return out


def _eval_word(w: str, N: GroupTable) -> int:
    if w == "1":
        return 0
    r = 0
    for f in w.split("*"):
        m = re.fullmatch(r"x(\d+)(?:\^(-?\d+))?", f)
        if not m:
            raise SpecError("bad word factor", f)
        i, e = int(m.group(1)) - 1, int(m.group(2) or 1)
        if not 0 <= i < len(N.gens):
            raise SpecError("generator index out of range", f)
        g = N.gens[i] if e >= 0 else int(N.inv[N.gens[i]])
        for _ in range(abs(e)):
            r = int(N.mult[r, g])
    return r


def semidirect(N: GroupTable, K: GroupTable, action: list[dict[int, int]],
               cap: int | None = None) -> GroupTable:
    """N x| K with (n1, k1)(n2, k2) = (n1 theta_k1(n2), k1 k2); index n*|K| + k."""
    n, m = N.order, K.order
    _check_cap(n * m, order_cap() if cap is None else cap)
    autos = {}
    for kg, images in zip(K.gens, action):
        a = _extend_hom(N, N, images)
        if np.unique(a).size != n:
            raise GroupError("action is not an automorphism")
        autos[kg] = a
    # theta: K -> Aut(N), theta(k g) = theta(k) o theta(g)
    parent = _words(K)
    theta = np.zeros((m, n), dtype=np.int64)
    theta[0] = np.arange(n)
    for y in _bfs_order(parent)[1:]:
        x, g = parent[y]
        theta[y] = theta[x][autos[g]]
    for k1 in range(m):
        lhs = theta[K.mult[k1]]                 # theta(k1 k2) for all k2
        rhs = theta[k1][theta]                  # theta(k1) o theta(k2)
        if not np.array_equal(lhs, rhs):
            raise GroupError("action does not respect the actor's relations")
    mn = N.mult.astype(np.int64)
    mk = K.mult.astype(np.int64)
    # first = N.mult[n1, theta[k1, n2]]
    first = mn[np.arange(n)[:, None, None, None],
               theta[np.arange(m)[None, :, None, None], np.arange(n)[None, None, :, None]]]
    first = np.broadcast_to(first, (n, m, n, m))
    second = np.broadcast_to(mk[None, :, None, :], (n, m, n, m))
    table = (first * m + second).reshape(n * m, n * m)
    gens = [g * m for g in N.gens] + list(K.gens)
    return GroupTable(table, gens, name=f"({N.name})x|({K.name})")
