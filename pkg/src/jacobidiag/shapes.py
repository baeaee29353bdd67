"""Builders for the small diagram shapes used in fixtures, tests and benchmarks.

Legs are oriented from the trivalent vertex toward the univalent vertex. Colors are
given as module elements or as coordinate lists.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .blanchfield import BlanchfieldModule, ModuleElement
from .diagram import HEAD, TAIL, Diagram, disjoint_union
from .laurent import frac


def _color(M: BlanchfieldModule, c) -> ModuleElement:
    return c if isinstance(c, ModuleElement) else M.element(list(c))


def _links(linking: Mapping | None) -> dict:
    return {k: frac(f) for k, f in (linking or {}).items()}


def theta(a="1", b="1", c="1") -> Diagram:
    """Two trivalent vertices joined by three edges 0 -> 1 with labels a, b, c."""
    edges = {0: (0, 1, frac(a)), 1: (0, 1, frac(b)), 2: (0, 1, frac(c))}
    tri = {0: ((0, TAIL), (1, TAIL), (2, TAIL)), 1: ((0, HEAD), (2, HEAD), (1, HEAD))}
    return Diagram(tri=tri, edges=edges)


def y_shape(M: BlanchfieldModule, colors: Sequence, linking: Mapping | None = None,
            legs: Sequence = ("1", "1", "1")) -> Diagram:
    """One trivalent vertex 0 with legs to univalent vertices 1, 2, 3."""
    edges = {10 + i: (0, 1 + i, frac(legs[i])) for i in range(3)}
    tri = {0: ((10, TAIL), (11, TAIL), (12, TAIL))}
    uni = {1 + i: _color(M, colors[i]) for i in range(3)}
    return Diagram(tri=tri, uni=uni, edges=edges, linking=_links(linking), module=M)


def tadpole(M: BlanchfieldModule, color, loop="1", stem="1") -> Diagram:
    """Trivalent vertex 0 with a loop and one leg to univalent vertex 1."""
    edges = {10: (0, 0, frac(loop)), 11: (0, 1, frac(stem))}
    tri = {0: ((10, TAIL), (10, HEAD), (11, TAIL))}
    return Diagram(tri=tri, uni={1: _color(M, color)}, edges=edges, module=M)


def h_shape(M: BlanchfieldModule, colors: Sequence, linking: Mapping | None = None,
            middle="1", legs: Sequence = ("1", "1", "1", "1")) -> Diagram:
    """Edge 0 -> 1 between trivalent vertices; legs 0 -> 2, 0 -> 3, 1 -> 4, 1 -> 5."""
    edges = {20: (0, 1, frac(middle)),
             10: (0, 2, frac(legs[0])), 11: (0, 3, frac(legs[1])),
             12: (1, 4, frac(legs[2])), 13: (1, 5, frac(legs[3]))}
    tri = {0: ((20, TAIL), (10, TAIL), (11, TAIL)), 1: ((20, HEAD), (12, TAIL), (13, TAIL))}
    uni = {2 + i: _color(M, colors[i]) for i in range(4)}
    return Diagram(tri=tri, uni=uni, edges=edges, linking=_links(linking), module=M)


def ladder(M: BlanchfieldModule, colors: Sequence, f="0", rungs=("1", "1"), legs=("1", "1")) -> Diagram:
    """Trivalent vertices 0, 1 joined by two edges, one leg each (to 2 and 3)."""
    edges = {20: (0, 1, frac(rungs[0])), 21: (0, 1, frac(rungs[1])),
             10: (0, 2, frac(legs[0])), 11: (1, 3, frac(legs[1]))}
    tri = {0: ((20, TAIL), (21, TAIL), (10, TAIL)), 1: ((20, HEAD), (11, TAIL), (21, HEAD))}
    uni = {2: _color(M, colors[0]), 3: _color(M, colors[1])}
    return Diagram(tri=tri, uni=uni, edges=edges, linking={(2, 3): frac(f)}, module=M)


def looped(M: BlanchfieldModule, colors: Sequence, linking: Mapping | None = None,
           loop="1", stem="1") -> Diagram:
    """Degree 2: vertex 0 carries a loop and a stem to vertex 1, which has legs to 2 and 3."""
    edges = {20: (0, 0, frac(loop)), 21: (0, 1, frac(stem)),
             10: (1, 2, frac("1")), 11: (1, 3, frac("1"))}
    tri = {0: ((20, TAIL), (20, HEAD), (21, TAIL)), 1: ((21, HEAD), (10, TAIL), (11, TAIL))}
    uni = {2: _color(M, colors[0]), 3: _color(M, colors[1])}
    return Diagram(tri=tri, uni=uni, edges=edges, linking=_links(linking), module=M)


def star(M: BlanchfieldModule, colors: Sequence, linking: Mapping | None = None) -> Diagram:
    """Caterpillar tree: ``len(colors)`` legs on a path of ``len(colors) - 2`` trivalent vertices."""
    n = len(colors)
    if n < 3:
        raise ValueError("a trivalent tree needs at least three legs")
    k = n - 2
    edges, tri = {}, {}
    uni = {}
    eid = 100
    spine = []
    for i in range(k - 1):
        edges[eid] = (i, i + 1, frac("1"))
        spine.append(eid)
        eid += 1
    legs_at: dict[int, list] = {i: [] for i in range(k)}
    owners = [0, 0] + list(range(1, k - 1)) + [k - 1, k - 1] if k > 1 else [0, 0, 0]
    for j, c in enumerate(colors):
        v = k + j
        edges[eid] = (owners[j], v, frac("1"))
        legs_at[owners[j]].append((eid, TAIL))
        uni[v] = _color(M, c)
        eid += 1
    for i in range(k):
        hs = []
        if i > 0:
            hs.append((spine[i - 1], HEAD))
        if i < k - 1:
            hs.append((spine[i], TAIL))
        tri[i] = tuple(hs + legs_at[i])
    return Diagram(tri=tri, uni=uni, edges=edges, linking=_links(linking), module=M)


def two_thetas(a=("1", "1", "1"), b=("1", "1", "1")) -> Diagram:
    return disjoint_union(theta(*a), theta(*b))


def tetrahedron(labels: Sequence = ("1",) * 6) -> Diagram:
    """Complete graph on trivalent vertices 0..3, edge i -> j for i < j in lexicographic order."""
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = {k: (a, b, frac(labels[k])) for k, (a, b) in enumerate(pairs)}
    tri: dict[int, list] = {v: [] for v in range(4)}
    for k, (a, b) in enumerate(pairs):
        tri[a].append((k, TAIL))
        tri[b].append((k, HEAD))
    return Diagram(tri={v: tuple(hs) for v, hs in tri.items()}, edges=edges)
