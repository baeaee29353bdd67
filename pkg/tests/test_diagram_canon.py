import random

import networkx as nx
import pytest
from conftest import DELTA, FIXTURES
from hypothesis import given
from hypothesis import strategies as st

from jacobidiag.blanchfield import cyclic_module, direct_sum
from jacobidiag.canon import FormalSum, canonical_form, isomorphic
from jacobidiag.diagram import (
    Diagram,
    DiagramError,
    is_prime,
    isolated,
    parse_diagram,
    parse_diagram_list,
    relabel,
    serialize_diagram,
    validate,
)
from jacobidiag.laurent import frac
from jacobidiag.maps import is_distributed
from jacobidiag.relations import flip_vertex, reverse_edge
from jacobidiag.shapes import h_shape, ladder, star, tetrahedron, theta, two_thetas, y_shape

LABELS = ["1", "t", "t^-1", "2", "1+t", f"1/{DELTA}", f"t/{DELTA}", "t^2 - 3"]
M = cyclic_module()
G = M.generator(0)


def asym_y():
    tg = M.scale("t", G)
    return y_shape(M, [G, tg, G], {(1, 2): f"t^-1/{DELTA}", (1, 3): f"1/{DELTA} + t", (2, 3): f"t/{DELTA}"})


def shuffled(D: Diagram, seed: int) -> Diagram:
    rng = random.Random(seed)
    vs = [*D.tri, *D.uni, *D.iso]
    new = rng.sample(range(100, 100 + 3 * len(vs)), len(vs))
    es = sorted(D.edges)
    enew = rng.sample(range(500, 500 + 3 * len(es)), len(es))
    R = relabel(D, dict(zip(vs, new)), dict(zip(es, enew)))
    # rotate each cyclic order, which preserves the orientation
    tri = {}
    for v, hs in R.tri.items():
        k = rng.randrange(3)
        tri[v] = hs[k:] + hs[:k]
    return R.replace(tri=tri)


def nx_graph(D: Diagram) -> nx.MultiDiGraph:
    """Labeled multigraph with each edge stored in both directions (label, barred label),
    so edge reversal is invisible; cyclic orders are forgotten."""
    g = nx.MultiDiGraph()
    for v in D.tri:
        g.add_node(v, kind="tri")
    for v, c in D.uni.items():
        g.add_node(v, kind=("uni", c.key()))
    for v, p in D.iso.items():
        g.add_node(v, kind=("iso", p))
    for e, (a, b, L) in D.edges.items():
        g.add_edge(a, b, label=L.key())
        g.add_edge(b, a, label=L.bar().key())
    return g


def nx_isomorphic(D1, D2) -> bool:
    return nx.is_isomorphic(nx_graph(D1), nx_graph(D2),
                            node_match=lambda x, y: x["kind"] == y["kind"],
                            edge_match=lambda x, y: sorted(d["label"] for d in x.values())
                            == sorted(d["label"] for d in y.values()))


def test_validate_examples():
    assert validate(theta()) == []
    assert theta().degree == 2
    bad = validate(parse_diagram((FIXTURES / "strut.dg").read_text(), check=False))
    assert any(v.startswith("strut") for v in bad)
    text = f"""module
  cyclic pi=t-1+t^-1
vertices
  0 tri 10.t 11.t 12.t
  1 uni 1
  2 uni t^-1
  3 uni 1
edges
  10 0 -> 1 : 1
  11 0 -> 2 : 1
  12 0 -> 3 : 1
linking
  1 2 : t/{DELTA}
  2 1 : t/{DELTA}
  1 3 : 1/{DELTA}
  2 3 : t^-1/{DELTA}
"""
    bad = validate(parse_diagram(text, check=False))
    assert any(v.startswith("hermitian") for v in bad)
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_validate_other_violations():
    D = theta().replace(iso={7: 4})
    assert any(v.startswith("prime") for v in validate(D))
    D = y_shape(M, [G, G, G], {(1, 2): "t"})
    assert any(v.startswith("congruence") for v in validate(D))
    D = theta().replace(tri={0: ((0, 0), (1, 0)), 1: ((0, 1), (2, 1), (1, 1))})
    assert any(v.startswith("orientation") for v in validate(D))


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_flip_changes_sign_and_relabel_keeps_form():
    D = theta("1", "t", f"1/{DELTA}")
    k0, s0, _ = canonical_form(D)
    k1, s1, _ = canonical_form(flip_vertex(D, 0))
    assert k0 == k1 and s1 == -s0
    assert canonical_form(shuffled(D, 3))[:2] == (k0, s0)


def test_reversed_edge_with_barred_label_is_same():
    D = theta("1", "t", f"1/{DELTA}")
    for e in D.edges:
        assert canonical_form(reverse_edge(D, e))[:2] == canonical_form(D)[:2]


def test_symmetric_diagram_vanishes():
    # swapping two legs of this Y reverses one cyclic order
    link = f"1/{DELTA}"
    Y = y_shape(M, [G, G, G], {(1, 2): link, (1, 3): link, (2, 3): link})
    assert validate(Y) == []
    assert canonical_form(Y).sign == 0
    assert FormalSum.of(Y).is_zero()
    # every automorphism of the theta preserves all orientations
    assert canonical_form(theta()).sign != 0
    assert canonical_form(theta("1", "t", "t^2")).sign != 0


def test_zero_label_gives_zero_sum():
    assert FormalSum.of(theta("0", "1", "t")).is_zero()


@given(st.lists(st.sampled_from(LABELS), min_size=6, max_size=6), st.integers(0, 10**6),
       st.lists(st.integers(0, 3), max_size=5))
def test_flips_give_sign_power(labels, seed, flips):
    D = tetrahedron(labels)
    key, sign, _ = canonical_form(D)
    E = shuffled(D, seed)
    order = sorted(E.tri)
    for i in flips:
        E = flip_vertex(E, order[i])
    k2, s2, _ = canonical_form(E)
    assert k2 == key and s2 == sign * (-1) ** len(flips)


@given(st.lists(st.sampled_from(LABELS), min_size=6, max_size=6),
       st.lists(st.sampled_from(LABELS), min_size=6, max_size=6))
def test_key_equality_matches_networkx(l1, l2):
    D1, D2 = tetrahedron(l1), tetrahedron(l2)
    if canonical_form(D1).key == canonical_form(D2).key:
        assert nx_isomorphic(D1, D2)
    if isomorphic(D1, D2):
        assert nx_isomorphic(D1, D2)


def test_networkx_separates_known_nonisomorphic():
    assert not isomorphic(theta("1", "t", "t^2"), theta("1", "t", "t^3"))
    assert isomorphic(two_thetas(("1", "t", "2"), ("t", "3", "1")), two_thetas(("t", "3", "1"), ("1", "t", "2")))


@pytest.mark.parametrize("builder", [
    lambda: theta(f"1/{DELTA}", "t", "1"),
    lambda: tetrahedron(["1", "t", "2", f"1/{DELTA}", "t^-1", "3"]),
    asym_y,
    lambda: isolated(2, 3),
    lambda: ladder(M, [G, G], f"1/{DELTA}"),
])
def test_text_roundtrip(builder):
    D = builder()
    text = serialize_diagram(D)
    E = parse_diagram(text)
    assert validate(E) == validate(D)
    assert canonical_form(E)[:2] == canonical_form(D)[:2]
    assert serialize_diagram(E) == text


def test_list_roundtrip_with_shared_module():
    from jacobidiag.diagram import serialize_diagram_list

    items = [(2, asym_y()), (-1, asym_y())]
    module, back = parse_diagram_list(serialize_diagram_list(items, M))
    assert module == M and [c for c, _ in back] == [2, -1]


def test_parse_errors():
    for text in ("vertices\n  0 tri 0.x\n", "edges\n  0 0 => 1 : 1\n", "garbage\n",
                 "vertices\n  0 uni 1\n"):
        with pytest.raises(DiagramError):
            parse_diagram(text)


def test_is_distributed_examples():
    S = direct_sum(M, 2)
    c1 = S.element(["1", "0"])
    two = Diagram(tri={0: ((0, 0), (1, 0), (2, 0)), 1: ((0, 1), (2, 1), (3, 0))},
                  uni={2: c1, 3: c1}, edges={0: (0, 1, frac(1)), 2: (0, 1, frac(1)), 1: (0, 2, frac(1)),
                                            3: (1, 3, frac(1))}, module=S)
    assert is_distributed(two)
    four = h_shape(S, [c1] * 4)
    assert not is_distributed(four)
    c2 = S.element(["0", "1"])
    split = h_shape(S, [c1, c1, c2, c2])
    assert is_distributed(split)
    assert is_distributed(shuffled(split, 11))
    linked = h_shape(S, [c1, c1, c2, c2], {(2, 4): "t"})
    assert not is_distributed(linked)


def test_star_degree():
    assert star(M, [G] * 5).degree == 3
    link = f"1/{DELTA}"
    links = {(v, w): link for v in range(4, 10) for w in range(v + 1, 10)}
    assert validate(star(M, [G] * 6, links)) == []
