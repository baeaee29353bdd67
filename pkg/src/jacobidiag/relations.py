"""Relation instances on colored diagrams.

Every instance is a FormalSum that vanishes in the diagram space. Generators take a
diagram and return all single applications of one relation at every admissible site.

A diagram is *normal* when every edge label is a monomial t^k with coefficient 1,
every leg reads 1 toward its univalent vertex, every color is a single generator
monomial t^k g (0 <= k < deg of the slot order) or zero, and every linking equals
its reduced representative. ``normalizing_instance`` returns the next EV/LE/LD/LV
step that moves a diagram toward normal form, restricted to the allowed relations.
Linkings are reduced before colors are split, so every LV piece inherits a proper
fraction and pieces in different orthogonal summands end up with zero linking.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .blanchfield import (
    BlanchfieldModule,
    ModuleAutomorphism,
    ModuleElement,
    default_aut_generators,
    rotation_automorphism,
    scalar_automorphism,
    permutation_automorphism,
)
from .canon import FormalSum
from .diagram import HEAD, TAIL, Diagram, HalfEdge
from .laurent import ONE, ZERO, LaurentFraction, LaurentPoly, T, normalize_fraction, ordinary_part

RELATIONS = ("AS", "IHX", "LE", "OR", "Hol", "Hol'", "LV", "EV", "LD", "Aut")
_ALIASES = {"Aut_res": "Aut", "Holp": "Hol'", "Hol′": "Hol'", "HOL": "Hol"}
ALL_RELATIONS = frozenset(RELATIONS)
T_INV = LaurentPoly.monomial(-1)


class RelationError(ValueError):
    pass


def parse_relations(names: Iterable[str] | str) -> frozenset[str]:
    if isinstance(names, str):
        names = [n for n in names.replace(",", " ").split() if n]
    out = set()
    for n in names:
        n = _ALIASES.get(n, n)
        if n == "all":
            out |= ALL_RELATIONS
            continue
        if n not in RELATIONS:
            raise RelationError(f"unknown relation {n!r}; known: {', '.join(RELATIONS)}")
        out.add(n)
    return frozenset(out)


@dataclass(frozen=True)
class RelationInstance:
    name: str
    site: str
    terms: FormalSum = field(compare=False)

    def __str__(self) -> str:
        return f"{self.name}[{self.site}]"


@dataclass
class Window:
    """Search bounds: label exponents in [-W, W], a cap on working-set size,
    the automorphism generators used by Aut, and an optional univalent-vertex cap."""

    W: int = 3
    cap: int = 5000
    aut: Sequence[ModuleAutomorphism] | None = None
    max_univalent: int | None = None

    def __post_init__(self):
        if self.W < 0 or self.cap <= 0:
            raise RelationError("window bounds must be positive")
        if self.max_univalent is not None and self.max_univalent < 0:
            raise RelationError("univalent cap must be non-negative")

    def generators(self, M: BlanchfieldModule | None) -> list[ModuleAutomorphism]:
        if self.aut is not None:
            return list(self.aut)
        if M is None or not M.ngens:
            return []
        return default_aut_generators(M)

    def admits(self, D: Diagram) -> bool:
        if self.max_univalent is not None and len(D.uni) > self.max_univalent:
            return False
        W = self.W
        for _, _, L in D.edges.values():
            p = L.num if L.is_polynomial() else normalize_fraction(L)[0]
            if not p.is_zero() and (p.min_exp() < -W or p.max_exp() > W):
                return False
        for (v, w), f in D.linking.items():
            if v < w:
                p = normalize_fraction(f)[0]
                if not p.is_zero() and (p.min_exp() < -W or p.max_exp() > W):
                    return False
        return True


def aut_family(M: BlanchfieldModule, families: Iterable[str] = ("perm", "neg", "t", "chi")) -> list[ModuleAutomorphism]:
    """Automorphism generators by family name: perm, neg, t, chi."""
    fam = set(families)
    copies = M.copies
    out: list[ModuleAutomorphism] = []
    if "perm" in fam:
        for a in range(len(copies)):
            for b in range(a + 1, len(copies)):
                out.append(permutation_automorphism(M, copies[a], copies[b]))
    for c in copies:
        if "neg" in fam:
            out.append(scalar_automorphism(M, c, -1, 0))
        if "t" in fam:
            out.append(scalar_automorphism(M, c, 1, 1))
            out.append(scalar_automorphism(M, c, 1, -1))
    if "chi" in fam:
        for a in copies:
            for b in copies:
                if a != b:
                    out.append(rotation_automorphism(M, a, b))
    return out


# ---------------------------------------------------------------------------
# small diagram surgery helpers

def _frac(p) -> LaurentFraction:
    return LaurentFraction.of(p)


def _set_label_out(edges: dict, h: HalfEdge, new_out: LaurentFraction) -> None:
    """Set the label of h's edge so that it reads ``new_out`` leaving h's vertex."""
    e, end = h
    a, b, _ = edges[e]
    edges[e] = (a, b, new_out if end == TAIL else new_out.bar())


def _sum(*pairs) -> FormalSum:
    fs = FormalSum()
    for c, D in pairs:
        fs.add_diagram(D, c)
    return fs


def flip_vertex(D: Diagram, v: int) -> Diagram:
    a, b, c = D.tri[v]
    tri = dict(D.tri)
    tri[v] = (b, a, c)
    return D.replace(tri=tri)


def reverse_edge(D: Diagram, e: int) -> Diagram:
    a, b, L = D.edges[e]
    edges = dict(D.edges)
    edges[e] = (b, a, L.bar())

    def swap(h):
        return (h[0], 1 - h[1]) if h[0] == e else h

    tri = {v: tuple(swap(h) for h in hs) for v, hs in D.tri.items()}
    return D.replace(edges=edges, tri=tri)


def _monomials(p: LaurentPoly) -> list[tuple[Fraction, int]]:
    return [(c, e) for e, c in p.terms]


def _is_unit_monomial(L: LaurentFraction) -> bool:
    return L.is_polynomial() and L.num.is_monomial() and L.num.terms[0][1] == 1


def _leg_edges(D: Diagram) -> set[int]:
    legs = set()
    for e, (a, b, _) in D.edges.items():
        if a in D.uni or b in D.uni:
            legs.add(e)
    return legs


def _color_pieces(M: BlanchfieldModule, c: ModuleElement) -> list[tuple[Fraction, ModuleElement]]:
    """Split a reduced color into coefficient * (t^k g_s) pieces, sorted by (slot, k)."""
    out = []
    for s, p in enumerate(c.coords):
        for e, coeff in p.terms:
            out.append((coeff, M.generator(s, LaurentPoly.monomial(e))))
    return out


def _is_normal_color(M: BlanchfieldModule, c: ModuleElement) -> bool:
    nz = [p for p in c.coords if not p.is_zero()]
    if not nz:
        return True
    return len(nz) == 1 and nz[0].is_monomial() and nz[0].terms[0][1] == 1


# ---------------------------------------------------------------------------
# instance generators

def as_instances(D: Diagram) -> list[RelationInstance]:
    return [RelationInstance("AS", f"v{v}", _sum((1, D), (1, flip_vertex(D, v)))) for v in sorted(D.tri)]


def or_instances(D: Diagram) -> list[RelationInstance]:
    return [RelationInstance("OR", f"e{e}", _sum((1, D), (-1, reverse_edge(D, e)))) for e in sorted(D.edges)]


def le_instances(D: Diagram, legs_too: bool = True) -> list[RelationInstance]:
    out = []
    legs = _leg_edges(D)
    for e in sorted(D.edges):
        a, b, L = D.edges[e]
        if not L.is_polynomial() or _is_unit_monomial(L) or (not legs_too and e in legs):
            continue
        fs = FormalSum.of(D)
        for c, k in _monomials(L.num):
            edges = dict(D.edges)
            edges[e] = (a, b, _frac(LaurentPoly.monomial(k)))
            fs.add_diagram(D.replace(edges=edges), -c)
        out.append(RelationInstance("LE", f"e{e}", fs))
    return out


def ev_move(D: Diagram, v: int, Q: LaurentPoly) -> Diagram:
    """EV: leg toward v labeled P*Q with color g  ->  leg labeled P, color Q g, f(v, .) -> Q f(v, .)."""
    M = D.module
    e, far, toward = D.leg(v)
    edges = dict(D.edges)
    new_toward = toward / _frac(Q)
    _set_label_out(edges, far, new_toward)
    uni = dict(D.uni)
    uni[v] = M.scale(Q, D.uni[v])
    linking = {}
    Qf = _frac(Q)
    for (x, y), f in D.linking.items():
        if x == v:
            linking[(x, y)] = Qf * f
        elif y == v:
            linking[(x, y)] = Qf.bar() * f
        else:
            linking[(x, y)] = f
    return D.replace(edges=edges, uni=uni, linking=linking)


def ev_instances(D: Diagram) -> list[RelationInstance]:
    out = []
    for v in sorted(D.uni):
        _, _, toward = D.leg(v)
        if toward == ONE or not toward.is_polynomial() or toward.is_zero():
            continue
        D2 = ev_move(D, v, toward.num)
        out.append(RelationInstance("EV", f"v{v}", _sum((1, D), (-1, D2))))
    return out


def lv_split(D: Diagram, v: int):
    """LV decomposition of the color at v into generator monomials.

    Returns a list of (coefficient, diagram); an empty list means D = 0 (zero color
    and zero linkings at v); None means the color is already normal.
    """
    M = D.module
    c = D.uni[v]
    links = {w: D.link(v, w) for w in D.uni if w != v}
    if c.is_zero():
        if all(f.is_zero() for f in links.values()):
            return []
        return None
    if _is_normal_color(M, c):
        return None
    pieces = _color_pieces(M, c)
    c1, m1 = pieces[0]
    rest_links = {w: LaurentFraction(0) for w in links}
    out = []
    for cj, mj in pieces[1:]:
        lk = {}
        for w in links:
            fj = M.pair(mj, D.uni[w])
            lk[w] = fj
            rest_links[w] = rest_links[w] + fj * _frac(LaurentPoly.constant(cj))
        out.append((cj, _recolor(D, v, mj, lk)))
    lk1 = {w: (links[w] - rest_links[w]) * _frac(LaurentPoly.constant(1 / c1)) for w in links}
    out.insert(0, (c1, _recolor(D, v, m1, lk1)))
    return out


def _recolor(D: Diagram, v: int, color: ModuleElement, links: dict) -> Diagram:
    uni = dict(D.uni)
    uni[v] = color
    linking = {k: f for k, f in D.linking.items() if v not in k}
    for w, f in links.items():
        if not f.is_zero():
            linking[(v, w)] = f
            linking[(w, v)] = f.bar()
    return D.replace(uni=uni, linking=linking)


def lv_instances(D: Diagram) -> list[RelationInstance]:
    out = []
    for v in sorted(D.uni):
        parts = lv_split(D, v)
        if parts is None:
            continue
        fs = FormalSum.of(D)
        for c, Dj in parts:
            fs.add_diagram(Dj, -c)
        out.append(RelationInstance("LV", f"v{v}", fs))
    return out


def ld_glue(D: Diagram, v1: int, v2: int, P: LaurentPoly) -> Diagram:
    """D'': drop v1, v2 and their legs; join the far ends by an edge labeled P from v1's side."""
    e1, far1, _ = D.leg(v1)
    e2, far2, _ = D.leg(v2)
    x1, x2 = D.vertex_of(far1), D.vertex_of(far2)
    ne = D.fresh_id()
    edges = {e: val for e, val in D.edges.items() if e not in (e1, e2)}
    edges[ne] = (x1, x2, _frac(P))
    sub = {far1: (ne, TAIL), far2: (ne, HEAD)}
    tri = {v: tuple(sub.get(h, h) for h in hs) for v, hs in D.tri.items()}
    uni = {v: c for v, c in D.uni.items() if v not in (v1, v2)}
    linking = {k: f for k, f in D.linking.items() if v1 not in k and v2 not in k}
    return D.replace(tri=tri, uni=uni, edges=edges, linking=linking)


def _with_link(D: Diagram, v: int, w: int, f: LaurentFraction) -> Diagram:
    linking = dict(D.linking)
    linking.pop((v, w), None)
    linking.pop((w, v), None)
    if not f.is_zero():
        linking[(v, w)] = f
        linking[(w, v)] = f.bar()
    return D.replace(linking=linking)


def ld_pairs(D: Diagram):
    """Pairs of legs reading 1 whose linking has a nonzero polynomial part."""
    us = sorted(D.uni)
    for i, v1 in enumerate(us):
        if D.leg(v1)[2] != ONE:
            continue
        for v2 in us[i + 1:]:
            if D.leg(v2)[2] != ONE:
                continue
            P, red = normalize_fraction(D.link(v1, v2))
            if not P.is_zero():
                yield v1, v2, P, red


def ld_instances(D: Diagram, unglue: bool = True) -> list[RelationInstance]:
    out = []
    for v1, v2, P, red in ld_pairs(D):
        fs = _sum((1, D), (-1, _with_link(D, v1, v2, red)), (-1, ld_glue(D, v1, v2, P)))
        out.append(RelationInstance("LD", f"v{v1},v{v2}", fs))
    if unglue and D.module is not None:
        for e in sorted(D.edges):
            a, b, L = D.edges[e]
            if a not in D.tri or b not in D.tri or not L.is_polynomial() or L.is_zero():
                continue
            Du, v1, v2 = unglue_edge(D, e)
            fs = _sum((1, Du), (-1, _with_link(Du, v1, v2, LaurentFraction(0))), (-1, D))
            out.append(RelationInstance("LD", f"e{e}", fs))
    return out


def unglue_edge(D: Diagram, e: int) -> tuple[Diagram, int, int]:
    """Cut edge e into two legs labeled 1 with zero colors and linking equal to its label."""
    a, b, L = D.edges[e]
    M = D.module
    v1 = D.fresh_id()
    v2 = v1 + 1
    e1, e2 = v2 + 1, v2 + 2
    edges = {k: val for k, val in D.edges.items() if k != e}
    edges[e1] = (a, v1, _frac(ONE))
    edges[e2] = (b, v2, _frac(ONE))
    sub = {(e, TAIL): (e1, TAIL), (e, HEAD): (e2, TAIL)}
    tri = {v: tuple(sub.get(h, h) for h in hs) for v, hs in D.tri.items()}
    uni = dict(D.uni)
    uni[v1] = M.zero()
    uni[v2] = M.zero()
    linking = dict(D.linking)
    linking[(v1, v2)] = L
    linking[(v2, v1)] = L.bar()
    return D.replace(tri=tri, uni=uni, edges=edges, linking=linking), v1, v2


def _multiply_out(D: Diagram, hs: Iterable[HalfEdge], factor: LaurentPoly) -> Diagram:
    edges = dict(D.edges)
    f = _frac(factor)
    for h in hs:
        e, end = h
        a, b, _ = edges[e]
        cur = edges[e][2]
        out = cur if end == TAIL else cur.bar()
        _set_label_out(edges, h, f * out)
    return D.replace(edges=edges)


def hol_instances(D: Diagram, both: bool = True) -> list[RelationInstance]:
    out = []
    for v in sorted(D.tri):
        if D.has_loop_at(v):
            continue
        for fac, tag in ((T, "t"), (T_INV, "t^-1")) if both else ((T, "t"),):
            fs = _sum((1, D), (-1, _multiply_out(D, D.tri[v], fac)))
            out.append(RelationInstance("Hol", f"v{v}:{tag}", fs))
    return out


def holp_instances(D: Diagram, both: bool = True) -> list[RelationInstance]:
    out = []
    for v in sorted(D.tri):
        if not D.has_loop_at(v):
            continue
        stem = [h for h in D.tri[v] if D.edges[h[0]][0] != D.edges[h[0]][1]]
        for fac, tag in ((T, "t"), (T_INV, "t^-1")) if both else ((T, "t"),):
            fs = _sum((1, D), (-1, _multiply_out(D, stem, fac)))
            out.append(RelationInstance("Hol'", f"v{v}:{tag}", fs))
    return out


def _move_half_edges(D: Diagram, assign: dict[int, tuple[HalfEdge, HalfEdge, HalfEdge]]) -> Diagram:
    edges = dict(D.edges)
    for v, hs in assign.items():
        for e, end in hs:
            a, b, L = edges[e]
            edges[e] = (v, b, L) if end == TAIL else (a, v, L)
    tri = dict(D.tri)
    tri.update(assign)
    return D.replace(tri=tri, edges=edges)


def _rotate_to(hs: tuple, h) -> tuple:
    i = hs.index(h)
    return hs[i:] + hs[:i]


def ihx_instances(D: Diagram) -> list[RelationInstance]:
    """Jacobi form at each internal non-loop edge labeled 1: T1 + T2 + T3 = 0."""
    out = []
    for e in sorted(D.edges):
        x, y, L = D.edges[e]
        if x == y or x not in D.tri or y not in D.tri or L != ONE:
            continue
        hx, hy = (e, TAIL), (e, HEAD)
        _, a, b = _rotate_to(D.tri[x], hx)
        _, c, d = _rotate_to(D.tri[y], hy)
        t2 = _move_half_edges(D, {y: (d, hy, a), x: (hx, b, c)})
        t3 = _move_half_edges(D, {y: (d, hy, b), x: (hx, c, a)})
        out.append(RelationInstance("IHX", f"e{e}", _sum((1, D), (1, t2), (1, t3))))
    return out


def apply_automorphism(D: Diagram, a: ModuleAutomorphism) -> Diagram:
    M = D.module
    return D.replace(uni={v: a.apply(M, c) for v, c in D.uni.items()})


def aut_instances(D: Diagram, gens: Sequence[ModuleAutomorphism]) -> list[RelationInstance]:
    out = []
    if not D.uni:
        return out
    for a in gens:
        D2 = apply_automorphism(D, a)
        if D2 == D:
            continue
        out.append(RelationInstance("Aut", a.name or a.family, _sum((1, D), (-1, D2))))
    return out


# ---------------------------------------------------------------------------

def normalizing_instance(D: Diagram, allowed: frozenset[str],
                         gens: Sequence[ModuleAutomorphism] = ()) -> RelationInstance | None:
    """The first applicable normalization step (EV, LE, LD, LV, parity order), or None.

    The parity step fires on a diagram whose colors are normal and which has an odd
    number of univalent vertices colored in some copy, provided ``gens`` contains
    the negation of that copy: D - a(D) with a(D) = -D after LV.
    """
    if D.uni and "EV" in allowed:
        for v in sorted(D.uni):
            _, _, toward = D.leg(v)
            if toward != ONE and toward.is_polynomial() and not toward.is_zero():
                D2 = ev_move(D, v, toward.num)
                return RelationInstance("EV", f"v{v}", _sum((1, D), (-1, D2)))
    if "LE" in allowed:
        legs = _leg_edges(D) if "EV" in allowed else set()
        for e in sorted(D.edges):
            a, b, L = D.edges[e]
            if e in legs or not L.is_polynomial() or _is_unit_monomial(L):
                continue
            fs = FormalSum.of(D)
            for c, k in _monomials(L.num):
                edges = dict(D.edges)
                edges[e] = (a, b, _frac(LaurentPoly.monomial(k)))
                fs.add_diagram(D.replace(edges=edges), -c)
            return RelationInstance("LE", f"e{e}", fs)
    if D.uni and "LD" in allowed:
        for v1, v2, P, red in ld_pairs(D):
            fs = _sum((1, D), (-1, _with_link(D, v1, v2, red)), (-1, ld_glue(D, v1, v2, P)))
            return RelationInstance("LD", f"v{v1},v{v2}", fs)
    if D.uni and "LV" in allowed:
        for v in sorted(D.uni):
            parts = lv_split(D, v)
            if parts is None:
                continue
            fs = FormalSum.of(D)
            for c, Dj in parts:
                fs.add_diagram(Dj, -c)
            return RelationInstance("LV", f"v{v}", fs)
    if D.uni and "Aut" in allowed and gens:
        a = _parity_generator(D, gens)
        if a is not None:
            return RelationInstance("Aut", a.name or a.family, _sum((1, D), (-1, apply_automorphism(D, a))))
    return None


def _negates_copy(M: BlanchfieldModule, a: ModuleAutomorphism, tag: int) -> bool:
    n = M.ngens
    own = set(M.slots_of_copy(tag))
    minus = LaurentPoly.constant(-1)
    for i in range(n):
        for j in range(n):
            want = (minus if i in own else ONE) if i == j else ZERO
            if a.matrix[i][j] != want:
                return False
    return True


def _parity_generator(D: Diagram, gens: Sequence[ModuleAutomorphism]) -> ModuleAutomorphism | None:
    M = D.module
    counts: dict[int, int] = {}
    for c in D.uni.values():
        slots = [i for i, p in enumerate(c.coords) if not p.is_zero()]
        if len(slots) != 1:
            return None
        tag = M.slot_copy(slots[0])
        counts[tag] = counts.get(tag, 0) + 1
    for tag in sorted(counts):
        if counts[tag] % 2:
            for a in gens:
                if _negates_copy(M, a, tag):
                    return a
    return None


def relation_instances(D: Diagram, relations, window: Window | None = None,
                       both_directions: bool = False) -> list[RelationInstance]:
    """Every single application of the named relations at every admissible site of D."""
    rels = parse_relations(relations)
    window = window or Window()
    out: list[RelationInstance] = []
    if "AS" in rels:
        out += as_instances(D)
    if "OR" in rels:
        out += or_instances(D)
    if "IHX" in rels:
        out += ihx_instances(D)
    if "LE" in rels:
        out += le_instances(D)
    if "EV" in rels:
        out += ev_instances(D)
    if "LV" in rels:
        out += lv_instances(D)
    if "LD" in rels:
        out += ld_instances(D, unglue=True)
    if "Hol" in rels:
        out += hol_instances(D, both=both_directions)
    if "Hol'" in rels:
        out += holp_instances(D, both=both_directions)
    if "Aut" in rels:
        out += aut_instances(D, window.generators(D.module))
    return [r for r in out if all(window.admits(Dj) for _, Dj in r.terms.items())]


def expansion_instances(D: Diagram, rels: frozenset[str], window: Window,
                        gens: Sequence[ModuleAutomorphism]) -> list[RelationInstance]:
    """Instances used by the span search at a diagram already in normal form."""
    out: list[RelationInstance] = []
    if "Hol" in rels:
        out += hol_instances(D, both=True)
    if "Hol'" in rels:
        out += holp_instances(D, both=True)
    if "IHX" in rels:
        out += ihx_instances(D)
    if "Aut" in rels:
        out += aut_instances(D, gens)
    if "LD" in rels and D.module is not None:
        out += [r for r in ld_instances(D, unglue=True) if r.site.startswith("e")]
    return out
