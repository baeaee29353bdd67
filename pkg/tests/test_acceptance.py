"""Acceptance suite: one timed test per criterion, each printing a single PASS/FAIL line."""
import random
import time
from fractions import Fraction

import pytest
from conftest import DELTA
from oracle import bar_sym, brute_force_unitary, double_factorial_odd, is_laurent_polynomial, sym

from jacobidiag.blanchfield import (
    cyclic_module,
    direct_sum,
    hyperbolic_module,
    integral_automorphism_scan,
    scalar_automorphism,
    trivial_module,
)
from jacobidiag.canon import FormalSum
from jacobidiag.diagram import isolated, validate
from jacobidiag.laurent import LaurentPoly, frac
from jacobidiag.maps import (
    DiagramSeries,
    augment_series,
    distribute,
    distribute_terms,
    iota,
    psi,
    psi_terms,
    roundtrip_check,
)
from jacobidiag.relations import ALL_RELATIONS, Window, holp_instances
from jacobidiag.shapes import h_shape, ladder, looped, star, tadpole, tetrahedron, theta, two_thetas, y_shape
from jacobidiag.span import in_span, quotient_dimension

M = cyclic_module()
G = M.generator(0)
TG = M.scale("t", G)


def verdict(name, ok, seconds, limit, detail):
    ok = ok and (limit is None or seconds < limit)
    bound = f" (limit {limit}s)" if limit is not None else ""
    print(f"{name}: {'PASS' if ok else 'FAIL'} {detail} in {seconds:.2f}s{bound}")
    return ok


def pairing_links(colors, uni_ids, extra=None):
    extra = extra or {}
    return {(uni_ids[i], uni_ids[j]): M.pair(colors[i], colors[j]) + frac(extra.get((i, j), "0"))
            for i in range(len(colors)) for j in range(i + 1, len(colors))}


def roundtrip_corpus():
    """Closed diagrams of degrees 2 and 4 with 0 to 3 fractional edges, per annihilator."""
    polys = ["1", "t", "1-t^-1"]
    cases = [
        (trivial_module(), []),
        (cyclic_module(), [f"1/{DELTA}", f"t/{DELTA}", f"(1+t)/{DELTA}"]),
        (hyperbolic_module(3), ["1/(t+1)", "t/(t+1)^2", "1/(t+1)^3", "(2+t)/(t+1)^3"]),
        (cyclic_module("t+2+t^-1", 2), ["1/(t+2+t^-1)", "t/(t+2+t^-1)^2", "1/(t+2+t^-1)^2"]),
    ]
    out = []
    for mod, fracs in cases:
        for k in range(4 if fracs else 1):
            labs = [fracs[i % len(fracs)] if i < k else polys[i % 3] for i in range(3)]
            labs6 = [fracs[(i + 1) % len(fracs)] if i < k else polys[i % 3] for i in range(6)]
            out.append((mod, theta(*labs)))
            out.append((mod, tetrahedron(labs6)))
            if k <= 1:
                out.append((mod, two_thetas(tuple(labs), tuple(reversed(labs)))))
            else:
                out.append((mod, two_thetas((labs[0], "1", "t"), (*labs[1:], "1"))))
    return out


def test_c1_roundtrip_identity():
    corpus = roundtrip_corpus()
    assert len(corpus) >= 20
    assert {D.degree for _, D in corpus} == {2, 4}
    assert all(validate(D) == [] for _, D in corpus)
    t0 = time.perf_counter()
    failures = [D for mod, D in corpus if not roundtrip_check(D, mod, 3)]
    dt = time.perf_counter() - t0
    assert verdict("C1 roundtrip identity", not failures, dt, 10, f"{len(corpus)} diagrams, {len(failures)} failures")


def odd_degree_diagrams():
    specs = [
        (["1", "t", "1"], {(0, 2): "t"}),
        (["1", "1", "t"], {(0, 1): "t"}),
        (["t", "1", "1+t"], {(0, 1): "1"}),
        (["1", "t^-1", "t"], {(1, 2): "t^-1"}),
        (["1+t", "1", "t"], {(0, 2): "2"}),
        (["1", "t", "1", "t", "1"], {}),
        (["1", "1", "t", "t", "1"], {(0, 4): "t"}),
        (["t", "1", "1", "1", "t"], {(1, 2): "1"}),
        (["1", "t", "t^-1", "1", "t"], {}),
        (["1+t", "1", "t", "1", "1"], {(2, 3): "t^-1"}),
    ]
    out = []
    for coords, extra in specs:
        colors = [M.scale(c, G) for c in coords]
        build = y_shape if len(colors) == 3 else star
        ids = sorted(build(M, colors).uni)
        out.append(build(M, colors, pairing_links(colors, ids, extra)))
    return out


def test_c2_odd_degree_vanishing():
    diagrams = odd_degree_diagrams()
    assert sorted(D.degree for D in diagrams) == [1] * 5 + [3] * 5
    window = Window(W=3, aut=[scalar_automorphism(M, 1, -1, 0)])
    t0 = time.perf_counter()
    ok = True
    for D in diagrams:
        assert validate(D) == []
        target = FormalSum.of(D, 2)
        assert not target.is_zero()
        res = in_span(target, {"Aut", "LV"}, window)
        ok &= res.certified and res.certificate.verify()
        ok &= {inst.name for inst, _ in res.certificate.terms} <= {"Aut", "LV"} if res.certificate else False
    dt = time.perf_counter() - t0
    assert verdict("C2 odd-degree vanishing", ok, dt, 30, f"{len(diagrams)} diagrams")


def test_c3_holp_from_hol_ev_ld():
    diagrams = [
        looped(M, [G, TG], {(2, 3): f"t^-1/{DELTA}"}),
        looped(M, [G, G], {(2, 3): f"1/{DELTA}"}, loop="t"),
        looped(M, [TG, G], {(2, 3): f"t/{DELTA}"}, loop="t^-1"),
    ]
    t0 = time.perf_counter()
    ok = True
    for D in diagrams:
        assert validate(D) == [] and D.degree == 2
        instances = holp_instances(D)
        assert instances
        for inst in instances:
            res = in_span(inst.terms, {"Hol", "EV", "LD"}, Window(W=4))
            ok &= res.certified and res.certificate.verify()
            ok &= all(i.name in {"Hol", "EV", "LD"} for i, _ in res.certificate.terms) if res.certificate else False
    dt = time.perf_counter() - t0
    assert verdict("C3 Hol' from Hol, EV, LD", ok, dt, 60, f"{len(diagrams)} looped diagrams")


def test_c4_pairing_counts():
    t0 = time.perf_counter()
    counts = {}
    for legs in (2, 3, 4, 5, 6):
        if legs == 2:
            D = ladder(M, [G, G], f"1/{DELTA}")
        else:
            colors = [G if i % 2 else TG for i in range(legs)]
            D = star(M, colors, pairing_links(colors, sorted(star(M, colors).uni)))
        n = len(psi_terms(D))
        counts[legs] = n
        if legs % 2:
            counts[legs] = (n, psi(D).is_zero())
    dt = time.perf_counter() - t0
    ok = (counts[2], counts[4], counts[6]) == (1, 3, 15)
    ok &= counts[3] == (0, True) and counts[5] == (0, True)
    ok &= all(double_factorial_odd(k) == (counts[k] if k % 2 == 0 else counts[k][0]) for k in counts)
    assert verdict("C4 pairing combinatorics", ok, dt, None, f"counts {counts}")


def test_c5_distribution_formula():
    D = h_shape(M, [G, TG, G, TG], {(2, 3): f"t^-1/{DELTA}", (2, 4): f"1/{DELTA}", (2, 5): f"t^-1/{DELTA}+1",
                                    (3, 4): f"t/{DELTA}", (3, 5): f"1/{DELTA}", (4, 5): f"t^-1/{DELTA}"})
    assert validate(D) == [] and D.degree == 2 and len(D.uni) == 4
    I = iota(D, 2)
    terms = distribute_terms(I)
    ok = len(terms) == 6 and all(c == Fraction(1, 2) for c, _ in terms)
    t0 = time.perf_counter()
    res = in_span(distribute(I) - FormalSum.of(I), {"Aut", "LV", "LD"}, Window(W=3, cap=5000))
    dt = time.perf_counter() - t0
    ok &= res.certified and res.certificate.verify()
    assert verdict("C5 distribution formula", ok, dt, 300, f"6 terms of 1/2, {res.status}, working set {res.working_set}")


def rigidity_pairs():
    S = direct_sum(cyclic_module(), 2)

    def first(p):
        return S.element([p, "0"])

    def second(p):
        return S.element(["0", p])

    tail = [second("1"), second("t")]
    far = {(4, 5): f"t^-1/{DELTA}"}
    specs = [
        (["1", "1"], ["t-1", "t-1"], f"1/{DELTA} + t"),
        (["1", "1+t"], ["2-t", "1"], f"(1+t^-1)/{DELTA}"),
        (["t", "1"], ["1", "t^-1"], f"t/{DELTA} + t^2"),
    ]
    out = []
    for a, b, near in specs:
        links = {(2, 3): near, **far}
        out.append((h_shape(S, [first(a[0]), first(a[1]), *tail], links),
                    h_shape(S, [first(b[0]), first(b[1]), *tail], links)))
    return out


def test_c6_two_vertex_rigidity():
    pairs = rigidity_pairs()
    t0 = time.perf_counter()
    ok = True
    for D, Dp in pairs:
        assert validate(D) == [] and validate(Dp) == [] and D.degree == 2
        target = FormalSum.of(D) - FormalSum.of(Dp)
        assert not target.is_zero()
        res = in_span(target, ALL_RELATIONS, Window(W=3))
        ok &= res.certified and res.certificate.verify()
    dt = time.perf_counter() - t0
    assert verdict("C6 two-vertex rigidity", ok, dt, 300, f"{len(pairs)} pairs")


def test_c7_integral_obstruction():
    t0 = time.perf_counter()
    scan = integral_automorphism_scan("t - 1 + t^-1", 1)
    brute = {tuple(x) for x in brute_force_unitary(3)}
    dt = time.perf_counter() - t0
    got = {tuple((P.coeff(0), P.coeff(1)) for P in a) for a in scan.automorphisms}
    pq_zero = all((P * Q).is_zero() for P, Q, _, _ in scan.automorphisms)
    ok = scan.complete and pq_zero and got == brute and scan.preserves_decomposition()
    assert verdict("C7 integral obstruction", ok, dt, 10, f"{len(got)} solutions, brute force {len(brute)}")


def test_c8_degree_one_dimension():
    T = trivial_module()
    gens = [isolated(2), isolated(3), isolated(5), y_shape(T, [T.zero()] * 3), tadpole(T, T.zero())]
    t0 = time.perf_counter()
    res = quotient_dimension(gens, ALL_RELATIONS, Window(W=3))
    dt = time.perf_counter() - t0
    assert verdict("C8 degree-1 dimension", res.dimension == 3, dt, 5, f"dimension {res.dimension}")


def random_poly(rng):
    return LaurentPoly({rng.randint(-2, 2): Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)})


def test_c9_pairing_suite():
    seed = 20261016
    rng = random.Random(seed)
    modules = [cyclic_module(), hyperbolic_module(3), cyclic_module("t+2+t^-1", 2)]
    cases = []
    t0 = time.perf_counter()
    for i in range(200):
        mod = modules[i % 3]
        x = mod.element([random_poly(rng) for _ in range(mod.ngens)])
        y = mod.element([random_poly(rng) for _ in range(mod.ngens)])
        P, Q = random_poly(rng), random_poly(rng)
        cases.append((P, Q, mod.pair(x, y), mod.pair(y, x), mod.pair(mod.scale(P, x), mod.scale(Q, y))))
    dt = time.perf_counter() - t0
    bad = 0
    for P, Q, bxy, byx, scaled in cases:
        herm = is_laurent_polynomial(sym(byx) - bar_sym(sym(bxy)))
        sesq = is_laurent_polynomial(sym(scaled) - sym(P) * bar_sym(sym(Q)) * sym(bxy))
        bad += not (herm and sesq)
    assert verdict("C9 pairing suite", bad == 0, dt, 10, f"seed {seed}, 200 cases, {bad} failures")


def test_c10_augmented_series():
    t0 = time.perf_counter()
    S = augment_series(DiagramSeries.one(2), 4, 2)
    expected = DiagramSeries.of([(1, isolated()), (-2, isolated(2)), (2, isolated(2, 2))], 2)
    consistent = S.truncate(1) == augment_series(DiagramSeries.one(1), 4, 1)
    dt = time.perf_counter() - t0
    ok = S == expected and consistent
    assert verdict("C10 augmented series", ok, dt, None, "1 - 2 x2 + 2 x2^2, bounds 1 vs 2 consistent")
