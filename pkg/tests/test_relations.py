import pytest
from conftest import DELTA

from jacobidiag.blanchfield import cyclic_module, direct_sum
from jacobidiag.canon import FormalSum
from jacobidiag.diagram import validate
from jacobidiag.laurent import poly
from jacobidiag.relations import (
    RELATIONS,
    RelationError,
    Window,
    as_instances,
    hol_instances,
    ld_glue,
    ld_instances,
    lv_split,
    normalizing_instance,
    parse_relations,
    relation_instances,
)
from jacobidiag.shapes import h_shape, looped, tetrahedron, theta, y_shape

M = cyclic_module()
G = M.generator(0)
TG = M.scale("t", G)


def asym_y():
    return y_shape(M, [G, TG, G], {(1, 2): f"t^-1/{DELTA}", (1, 3): f"1/{DELTA} + t", (2, 3): f"t/{DELTA}"})


def sample_diagrams():
    S = direct_sum(M, 2)
    c1 = S.element(["1", "0"])
    c2 = S.element(["0", "1"])
    c2t = S.element(["0", "t"])
    return [
        theta("1", "t", "2 + t^-1"),
        tetrahedron(["1", "t", "1", "t^-1", "1", "2"]),
        asym_y(),
        y_shape(M, [M.scale("1 + t", G), TG, G],
                {(1, 2): f"(1+t^-1)/{DELTA}", (1, 3): f"(1+t)/{DELTA}", (2, 3): f"t/{DELTA}"}, legs=("t", "1", "1 - t")),
        looped(M, [TG, G], {(2, 3): f"t/{DELTA}"}, loop="t^-1"),
        h_shape(S, [c1, S.element(["t", "0"]), c2, c2t],
                {(2, 3): f"t^-1/{DELTA} + 1", (4, 5): f"t^-1/{DELTA}"}),
    ]


def test_parse_relations():
    assert parse_relations("all") == frozenset(RELATIONS)
    assert parse_relations("Aut_res,LV") == {"Aut", "LV"}
    assert parse_relations(["Holp"]) == {"Hol'"}
    with pytest.raises(RelationError):
        parse_relations("AS,Nope")


def test_window_checks():
    with pytest.raises(RelationError):
        Window(W=-1)
    with pytest.raises(RelationError):
        Window(cap=0)
    assert not Window(W=1).admits(theta("1", "t^2", "1"))
    assert Window(W=2).admits(theta("1", "t^2", f"t/{DELTA}"))
    # the polynomial part of t^5/delta has degree 3
    assert not Window(W=2).admits(theta("1", "1", f"t^5/{DELTA}"))


@pytest.mark.parametrize("idx", range(6))
def test_instances_are_valid_and_homogeneous(idx):
    D = sample_diagrams()[idx]
    assert validate(D) == []
    insts = relation_instances(D, "all", Window(W=4), both_directions=True)
    assert insts
    for inst in insts:
        degrees = {Dj.degree for _, Dj in inst.terms.items()}
        assert len(degrees) <= 1, inst
        for _, Dj in inst.terms.items():
            assert validate(Dj) == [], (inst, validate(Dj))


@pytest.mark.parametrize("idx", range(6))
def test_as_instances_vanish_after_canonicalization(idx):
    D = sample_diagrams()[idx]
    for inst in as_instances(D):
        assert inst.terms.is_zero()


@pytest.mark.parametrize("idx", range(6))
def test_instance_generation_is_deterministic(idx):
    D = sample_diagrams()[idx]

    def run():
        return [(i.name, i.site, sorted((repr(k), c) for k, c in i.terms.terms.items()))
                for i in relation_instances(D, "all", Window(W=4), both_directions=True)]

    assert run() == run()


def test_hol_example():
    D = theta("1", "t", "2 + t^-1")
    inst = hol_instances(D, both=False)[0]
    assert inst.site == "v0:t"
    expected = FormalSum.of(D) - FormalSum.of(theta("t", "t^2", "2*t + 1"))
    assert inst.terms == expected


def test_hol_skips_looped_vertices():
    D = looped(M, [TG, G], {(2, 3): f"t/{DELTA}"}, loop="t^-1")
    assert [i.site for i in hol_instances(D)] == ["v1:t", "v1:t^-1"]


def test_ld_example():
    D = asym_y()
    insts = {i.site: i for i in ld_instances(D, unglue=False)}
    # t/delta = 1 + (t - 1)/(t^2 - t + 1) also has a polynomial part
    assert sorted(insts) == ["v1,v3", "v2,v3"]
    inst = insts["v1,v3"]
    reduced = y_shape(M, [G, TG, G], {(1, 2): f"t^-1/{DELTA}", (1, 3): f"1/{DELTA}", (2, 3): f"t/{DELTA}"})
    glued = ld_glue(D, 1, 3, poly("t"))
    assert glued.degree == 1 and len(glued.uni) == 1
    assert inst.terms == FormalSum.of(D) - FormalSum.of(reduced) - FormalSum.of(glued)
    # swapping legs 1 and 3 is an orientation-reversing symmetry of the reduced Y
    assert FormalSum.of(reduced).is_zero() and len(inst.terms) == 2


def test_lv_split_of_sum_color():
    D = sample_diagrams()[3]
    pieces = lv_split(D, 1)
    assert pieces is not None and len(pieces) == 2
    for _, piece in pieces:
        assert validate(piece) == []


def test_normalizing_order():
    D = asym_y()
    assert normalizing_instance(D, frozenset(RELATIONS)).name == "LD"
    legged = sample_diagrams()[3]
    assert normalizing_instance(legged, frozenset(RELATIONS)).name == "EV"
    assert normalizing_instance(theta("1", "t", "t^2"), frozenset(RELATIONS)) is None
