from fractions import Fraction
from math import factorial

import pytest
import sympy as sp
from conftest import DELTA
from hypothesis import given
from hypothesis import strategies as st
from oracle import double_factorial_odd

from jacobidiag.blanchfield import cyclic_module, direct_sum, permutation_automorphism
from jacobidiag.canon import FormalSum, isomorphic
from jacobidiag.diagram import disjoint_union, isolated, relabel, validate
from jacobidiag.laurent import frac, reduce_mod_poly
from jacobidiag.maps import (
    DiagramSeries,
    MapError,
    augment_series,
    distribute,
    distribute_terms,
    exp_union,
    iota,
    is_distributed,
    isolated_monomial,
    phi,
    psi,
    psi_aug,
    psi_terms,
    roundtrip_check,
)
from jacobidiag.relations import apply_automorphism
from jacobidiag.shapes import h_shape, ladder, star, theta, two_thetas, y_shape

M = cyclic_module()
G = M.generator(0)
TG = M.scale("t", G)
INV_DELTA = f"1/{DELTA}"


def links_for(colors, extra=None):
    """Linking matrix equal to the pairing of the colors, plus optional polynomial parts."""
    extra = extra or {}
    out = {}
    n = len(colors)
    for i in range(n):
        for j in range(i + 1, n):
            out[(i, j)] = M.pair(colors[i], colors[j]) + frac(extra.get((i, j), "0"))
    return out


def star_with_links(colors):
    D = star(M, colors)
    us = sorted(D.uni)
    base = links_for(colors)
    return star(M, colors, {(us[i], us[j]): f for (i, j), f in base.items()})


@pytest.mark.parametrize("legs", [2, 3, 4, 5, 6])
def test_psi_term_counts(legs):
    if legs == 2:
        D = ladder(M, [G, G], INV_DELTA)
    else:
        D = star_with_links([G if i % 2 else TG for i in range(legs)])
    assert len(psi_terms(D)) == double_factorial_odd(legs)
    if legs % 2:
        assert psi(D).is_zero()


def test_psi_of_ladder_is_theta():
    f = f"{INV_DELTA} + t"
    assert psi(ladder(M, [G, G], f)) == FormalSum.of(theta("1", "1", f))


def test_psi_reads_leg_labels():
    D = ladder(M, [G, G], INV_DELTA, legs=("t", "2"))
    # label P * bar(Q) * f with P = t, Q = 2
    assert psi(D) == FormalSum.of(theta("1", "1", f"2*t/{DELTA}"))


def test_psi_aug_keeps_isolated_vertices():
    L = ladder(M, [G, G], INV_DELTA)
    assert psi_aug(disjoint_union(L, isolated(2))) == FormalSum.of(disjoint_union(theta("1", "1", INV_DELTA), isolated(2)))
    assert psi_aug(isolated(2, 3)) == FormalSum.of(isolated(2, 3))
    Y = y_shape(M, [G, TG, G], {(1, 2): f"t^-1/{DELTA}", (1, 3): INV_DELTA, (2, 3): f"t/{DELTA}"})
    assert psi_aug(disjoint_union(Y, isolated(5))).is_zero()


def test_psi_invariant_under_copy_permutation():
    S = direct_sum(M, 2)
    c1, c2 = S.element(["1", "0"]), S.element(["0", "t"])
    D = h_shape(S, [c1, S.element(["t", "0"]), c2, c2], {(2, 3): f"t^-1/{DELTA} + 2", (4, 5): INV_DELTA})
    assert psi(apply_automorphism(D, permutation_automorphism(S, 1, 2))) == psi(D)


def test_phi_single_fraction():
    out = phi(theta(INV_DELTA, "1", "1"), M, 3)
    assert validate(out) == [] and is_distributed(out)
    (v, w) = sorted(out.uni)
    Mbar = out.module
    assert out.uni[v] == out.uni[w] == Mbar.generator(0)
    assert out.link(v, w) == frac(INV_DELTA)


def test_phi_polynomial_diagram_is_reinterpreted():
    D = theta("1", "t", "2")
    out = phi(D, M, 2)
    assert not out.uni and isomorphic(out.replace(module=None), D)


def test_phi_two_fractions_use_two_copies():
    out = phi(theta(INV_DELTA, f"t/{DELTA}", "1"), M, 3)
    Mbar = out.module
    copies = sorted({next(i for i, c in enumerate(col.coords) if not c.is_zero()) for col in out.uni.values()})
    assert copies == [0, 1]
    for v, w in out.linking:
        assert Mbar.pair(out.uni[v], out.uni[w]) == reduce_mod_poly(out.link(v, w))
    assert validate(out) == [] and is_distributed(out)


def test_phi_errors():
    with pytest.raises(MapError):
        phi(theta(INV_DELTA, INV_DELTA, INV_DELTA), M, 2)
    with pytest.raises(MapError):
        phi(theta("1/(t+1)", "1", "1"), M, 1)
    with pytest.raises(MapError):
        phi(ladder(M, [G, G], INV_DELTA), M, 1)


def test_phi_independent_of_edge_order():
    D = theta(INV_DELTA, f"t/{DELTA}", "1")
    swapped = relabel(D, {0: 0, 1: 1}, {0: 1, 1: 0, 2: 2})
    a, b = phi(D, M, 2), phi(swapped, M, 2)
    xi = permutation_automorphism(a.module, 1, 2)
    assert isomorphic(apply_automorphism(a, xi), b)


@pytest.mark.parametrize("D", [
    theta(INV_DELTA, "1", "1"),
    theta("1", "t", "1 + t^-1"),
    two_thetas((INV_DELTA, "1", "t"), (f"t^2/{DELTA}", "1", "2")),
    theta(INV_DELTA, f"t/{DELTA}", f"(1+t)/{DELTA}"),
])
def test_roundtrip(D):
    assert roundtrip_check(D, M, 3)


def test_iota_and_distribution():
    assert iota(theta(), 3).uni == {}
    D = h_shape(M, [G, TG, G, TG], {(2, 3): f"t^-1/{DELTA}", (2, 4): INV_DELTA, (2, 5): f"t^-1/{DELTA}+1",
                                    (3, 4): f"t/{DELTA}", (3, 5): INV_DELTA, (4, 5): f"t^-1/{DELTA}"})
    I = iota(D, 2)
    assert not is_distributed(I)
    terms = distribute_terms(I)
    # maps from 4 vertices to 2 labels with fibers of size 2: C(4, 2)
    assert len(terms) == 6 and all(c == Fraction(1, 2) for c, _ in terms)
    for _, E in terms:
        assert is_distributed(E) and validate(E) == []
    L = ladder(M, [G, G], INV_DELTA)
    assert distribute(iota(L, 1)) == FormalSum.of(iota(L, 1))


def test_exp_union_examples():
    assert exp_union(DiagramSeries({}, 3), 3) == DiagramSeries.one(3)
    S = DiagramSeries.of([(-2, isolated(2))], 2)
    expected = DiagramSeries.of([(1, isolated()), (-2, isolated(2)), (2, isolated(2, 2))], 2)
    assert exp_union(S, 2) == expected


def test_augment_examples():
    one = DiagramSeries.one(3)
    assert augment_series(one, 1, 3) == one
    expected = DiagramSeries.of([(1, isolated()), (-2, isolated(2)), (2, isolated(2, 2))], 2)
    assert augment_series(DiagramSeries.one(2), 4, 2) == expected
    assert augment_series(DiagramSeries.one(1), 6, 1) == DiagramSeries.of(
        [(1, isolated()), (-1, isolated(2)), (-1, isolated(3))], 1)
    with pytest.raises(MapError):
        augment_series(one, 0, 2)


@given(st.integers(1, 400), st.integers(1, 4))
def test_augment_coefficients_match_series_expansion(h1, bound):
    """Coefficients agree with the expansion of exp(-sum v_p x_p) in commuting variables."""
    S = augment_series(DiagramSeries.one(bound), h1, bound)
    primes = sorted(sp.factorint(h1))
    xs = sp.symbols(f"x0:{len(primes)}") if primes else ()
    eps = sp.Symbol("eps")
    vals = sp.factorint(h1)
    expo = -sum(vals[p] * x for p, x in zip(primes, xs)) * eps
    poly_ = sp.expand(sp.series(sp.exp(expo), eps, 0, bound + 1).removeO())
    expected = {}
    for term in sp.Add.make_args(poly_.subs(eps, 1)):
        coeff, mono = term.as_coeff_Mul()
        powers = mono.as_powers_dict() if mono != 1 else {}
        key = tuple(sorted(p for p, x in zip(primes, xs) for _ in range(int(powers.get(x, 0)))))
        expected[key] = Fraction(int(coeff.p), int(coeff.q))
    got = {}
    for d, fs in S.parts.items():
        for c, D in fs.items():
            got[tuple(sorted(D.iso.values()))] = c
    assert got == expected


@given(st.integers(1, 200), st.integers(2, 4))
def test_truncation_consistency(h1, bound):
    hi = augment_series(DiagramSeries.one(bound), h1, bound)
    for lower in range(bound):
        assert hi.truncate(lower) == augment_series(DiagramSeries.one(lower), h1, lower)


def test_isolated_monomial_coefficient_formula():
    S = augment_series(DiagramSeries.one(4), 2**2 * 3, 4)
    D = isolated_monomial({2: 2, 3: 1})
    # prod (-v_p)^{t_p} / t_p!
    assert S.coefficient(D) == Fraction((-2) ** 2, factorial(2)) * Fraction(-1, 1)
