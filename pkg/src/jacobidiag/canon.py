"""Canonical forms of diagrams and formal Q-linear sums of them.

The diagram becomes a node/arc-labeled digraph: one node per vertex and per edge, an
arc from each edge node to each endpoint labeled by the edge label read away from
that endpoint (so reversing an edge together with barring its label changes
nothing), and an arc v -> w for every nonzero linking. Colour refinement with
individualization enumerates the discrete orderings; the smallest certificate wins.
The sign compares each stored cyclic order with the order of its half-edges sorted by
(edge position, outgoing label).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from .diagram import HEAD, TAIL, Diagram

_CACHE: dict = {}
_CACHE_LIMIT = 400_000


class CanonicalForm(tuple):
    """(key, sign, representative) with D = sign * representative."""

    __slots__ = ()

    @property
    def key(self):
        return self[0]

    @property
    def sign(self) -> int:
        return self[1]

    @property
    def rep(self) -> Diagram:
        return self[2]


def _parity(seq: list) -> int:
    """+1 for an even permutation sorting seq, -1 for odd, 0 when seq has ties."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def _refine(col: list[int], out_adj, in_adj) -> list[int]:
    n = len(col)
    ncol = len(set(col))
    while True:
        sigs = [
            (col[x],
             tuple(sorted((l, col[y]) for y, l in out_adj[x])),
             tuple(sorted((l, col[y]) for y, l in in_adj[x])))
            for x in range(n)
        ]
        uniq = sorted(set(sigs))
        idx = {s: i for i, s in enumerate(uniq)}
        new = [idx[s] for s in sigs]
        if len(uniq) == ncol:
            return new
        col, ncol = new, len(uniq)


def canonical_form(D: Diagram) -> CanonicalForm:
    """Key, sign and representative; the key is shared exactly by isomorphic diagrams."""
    if D.is_zero():
        return CanonicalForm((None, 0, None))
    rk = D.raw_key()
    hit = _CACHE.get(rk)
    if hit is not None:
        key, sign, rep = hit
        if rep is None or rep.module is D.module:
            return hit
        return CanonicalForm((key, sign, rep.replace(module=D.module)))
    res = _canonical(D)
    if len(_CACHE) >= _CACHE_LIMIT:
        _CACHE.clear()
    _CACHE[rk] = res
    return res


def clear_cache() -> None:
    _CACHE.clear()


def _canonical(D: Diagram) -> CanonicalForm:
    verts = sorted([*D.tri, *D.uni, *D.iso])
    eids = sorted(D.edges)
    node_of_v = {v: i for i, v in enumerate(verts)}
    node_of_e = {e: len(verts) + i for i, e in enumerate(eids)}
    n = len(verts) + len(eids)

    raw_colors = []
    for v in verts:
        if v in D.tri:
            raw_colors.append((0,))
        elif v in D.uni:
            raw_colors.append((1, D.uni[v].key()))
        else:
            raw_colors.append((2, D.iso[v]))
    raw_colors.extend((3,) for _ in eids)
    node_table = tuple(sorted(set(raw_colors)))
    nidx = {c: i for i, c in enumerate(node_table)}
    col0 = [nidx[c] for c in raw_colors]

    arcs_raw = []  # (src, dst, label key)
    for e in eids:
        a, b, L = D.edges[e]
        arcs_raw.append((node_of_e[e], node_of_v[a], ("E", L.key())))
        arcs_raw.append((node_of_e[e], node_of_v[b], ("E", L.bar().key())))
    for (v, w), f in D.linking.items():
        arcs_raw.append((node_of_v[v], node_of_v[w], ("L", f.key())))
    label_table = tuple(sorted({a[2] for a in arcs_raw}))
    lidx = {l: i for i, l in enumerate(label_table)}
    arcs = [(s, d, lidx[l]) for s, d, l in arcs_raw]
    out_adj = [[] for _ in range(n)]
    in_adj = [[] for _ in range(n)]
    for s, d, l in arcs:
        out_adj[s].append((d, l))
        in_adj[d].append((s, l))

    # outgoing label index at each half-edge
    def out_label(h):
        e, end = h
        L = D.edges[e][2]
        return lidx[("E", (L if end == TAIL else L.bar()).key())]

    tri_nodes = [(v, D.tri[v]) for v in verts if v in D.tri]

    best = None  # (cert, pos)
    signs: set[int] = set()

    def leaf(col):
        nonlocal best
        pos = col
        cert = (tuple(col0[x] for x in sorted(range(n), key=pos.__getitem__)),
                tuple(sorted((pos[s], pos[d], l) for s, d, l in arcs)))
        sign = 1
        for v, hs in tri_nodes:
            sign *= _parity([(pos[node_of_e[e]], out_label((e, end))) for e, end in hs])
            if sign == 0:
                break
        if best is None or cert < best[0]:
            best = (cert, pos)
            signs.clear()
            signs.add(sign)
        elif cert == best[0]:
            signs.add(sign)

    def search(col):
        col = _refine(col, out_adj, in_adj)
        if len(set(col)) == n:
            leaf(col)
            return
        sizes: dict[int, int] = {}
        for c in col:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, k in sizes.items() if k > 1)
        for u in range(n):
            if col[u] == target:
                search([2 * c + (0 if x == u else 1) for x, c in enumerate(col)])

    search(col0)
    cert, pos = best
    sign = signs.pop() if len(signs) == 1 else 0
    key = (node_table, label_table, cert)
    if sign == 0:
        return CanonicalForm((key, 0, None))
    return CanonicalForm((key, sign, _representative(D, pos, verts, eids, node_of_v, node_of_e, out_label)))


def _representative(D, pos, verts, eids, node_of_v, node_of_e, out_label) -> Diagram:
    vorder = sorted(verts, key=lambda v: pos[node_of_v[v]])
    eorder = sorted(eids, key=lambda e: pos[node_of_e[e]])
    vmap = {v: i for i, v in enumerate(vorder)}
    emap = {e: i for i, e in enumerate(eorder)}
    edges = {}
    tail_half: dict[int, tuple[int, int]] = {}  # old edge -> old half-edge that becomes the tail
    for e in eids:
        a, b, L = D.edges[e]
        if a != b:
            if pos[node_of_v[a]] < pos[node_of_v[b]]:
                tail_half[e] = (e, TAIL)
                edges[emap[e]] = (vmap[a], vmap[b], L)
            else:
                tail_half[e] = (e, HEAD)
                edges[emap[e]] = (vmap[b], vmap[a], L.bar())
        else:
            if out_label((e, TAIL)) <= out_label((e, HEAD)):
                tail_half[e] = (e, TAIL)
                edges[emap[e]] = (vmap[a], vmap[a], L)
            else:
                tail_half[e] = (e, HEAD)
                edges[emap[e]] = (vmap[a], vmap[a], L.bar())
    tri = {}
    for v, hs in D.tri.items():
        ordered = sorted(hs, key=lambda h: (pos[node_of_e[h[0]]], out_label(h)))
        tri[vmap[v]] = tuple((emap[e], TAIL if (e, end) == tail_half[e] else HEAD) for e, end in ordered)
    return Diagram(
        tri=tri,
        uni={vmap[v]: c for v, c in D.uni.items()},
        iso={vmap[v]: p for v, p in D.iso.items()},
        edges=edges,
        linking={(vmap[v], vmap[w]): f for (v, w), f in D.linking.items()},
        module=D.module,
    )


def isomorphic(D1: Diagram, D2: Diagram) -> bool:
    return canonical_form(D1).key == canonical_form(D2).key


# ---------------------------------------------------------------------------

class FormalSum:
    """Finite Q-linear combination of diagrams, indexed by canonical key."""

    __slots__ = ("terms", "reps")

    def __init__(self, items: Iterable[tuple] = ()):
        self.terms: dict = {}
        self.reps: dict = {}
        for c, D in items:
            self.add_diagram(D, c)

    @classmethod
    def of(cls, D: Diagram, c=1) -> "FormalSum":
        return cls([(c, D)])

    def add_diagram(self, D: Diagram, c=1) -> "FormalSum":
        """In-place accumulation (builder use only)."""
        c = Fraction(c)
        if not c:
            return self
        key, sign, rep = canonical_form(D)
        if sign == 0:
            return self
        self._acc(key, c * sign, rep)
        return self

    def _acc(self, key, c: Fraction, rep: Diagram) -> None:
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = v
            self.reps.setdefault(key, rep)
        else:
            self.terms.pop(key, None)

    def copy(self) -> "FormalSum":
        out = FormalSum()
        out.terms = dict(self.terms)
        out.reps = dict(self.reps)
        return out

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = self.copy()
        for k, c in other.terms.items():
            out._acc(k, c, other.reps[k])
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + other * -1

    def __mul__(self, c) -> "FormalSum":
        c = Fraction(c)
        out = FormalSum()
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
            out.reps = dict(self.reps)
        return out

    __rmul__ = __mul__

    def __neg__(self) -> "FormalSum":
        return self * -1

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, D: Diagram) -> Fraction:
        key, sign, _ = canonical_form(D)
        if sign == 0:
            return Fraction(0)
        return self.terms.get(key, Fraction(0)) * sign

    def sorted_keys(self) -> list:
        return sorted(self.terms, key=repr)

    def items(self) -> Iterator[tuple[Fraction, Diagram]]:
        for k in self.sorted_keys():
            yield self.terms[k], self.reps[k]

    def __iter__(self):
        return self.items()

    def __repr__(self) -> str:
        return f"FormalSum({len(self.terms)} terms)"
