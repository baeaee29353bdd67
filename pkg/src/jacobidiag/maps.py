"""Maps between diagram spaces and the graded series algebra.

``psi`` glues univalent vertices in pairs, ``phi`` opens fractional edges into pairs
of univalent vertices, ``iota`` moves colors into the first summand, ``distribute``
spreads pairs across summands, and ``DiagramSeries`` carries formal series under
disjoint union.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from .blanchfield import BlanchfieldModule, ModuleElement, ModuleError, annihilator, direct_sum, solve_pairing
from .canon import FormalSum
from .diagram import HEAD, TAIL, Diagram, DiagramError, disjoint_union, empty_diagram, isolated, is_prime
from .laurent import ONE, poly_mod


class MapError(ValueError):
    pass


# ---------------------------------------------------------------------------
# pairing map

def pairings(items: Sequence) -> Iterator[list[tuple]]:
    """All fixed-point-free involutions of ``items`` as lists of pairs, in a fixed order."""
    items = list(items)
    if not items:
        yield []
        return
    if len(items) % 2:
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for p in pairings(rest):
            yield [(first, items[i]), *p]


def glue_pairing(D: Diagram, pairing: Sequence[tuple[int, int]]) -> Diagram:
    """Replace each pair (v, w) and its legs by one edge from v's side to w's side."""
    edges = dict(D.edges)
    sub: dict = {}
    ne = D.fresh_id()
    for v, w in pairing:
        ev, hv, P = D.leg(v)
        ew, hw, Q = D.leg(w)
        if ev == ew:
            raise MapError(f"vertices {v} and {w} form a strut")
        del edges[ev], edges[ew]
        label = P * Q.bar() * D.link(v, w)
        edges[ne] = (D.vertex_of(hv), D.vertex_of(hw), label)
        sub[hv] = (ne, TAIL)
        sub[hw] = (ne, HEAD)
        ne += 1
    tri = {x: tuple(sub.get(h, h) for h in hs) for x, hs in D.tri.items()}
    return Diagram(tri=tri, iso=D.iso, edges=edges)


def psi_terms(D: Diagram) -> list[Diagram]:
    """One glued diagram per pairing, before any cancellation."""
    return [glue_pairing(D, p) for p in pairings(sorted(D.uni))]


def psi(D: Diagram) -> FormalSum:
    """Sum over all pairings of the univalent vertices; zero when their number is odd."""
    out = FormalSum()
    for G in psi_terms(D):
        out.add_diagram(G)
    return out


def psi_aug(D: Diagram) -> FormalSum:
    """psi on the Jacobi part; isolated vertices ride along unchanged."""
    return psi(D)


def psi_sum(S: FormalSum) -> FormalSum:
    out = FormalSum()
    for c, D in S.items():
        for G in psi_terms(D):
            out.add_diagram(G, c)
    return out


# ---------------------------------------------------------------------------
# edge opening

def phi(D: Diagram, M: BlanchfieldModule, N: int) -> Diagram:
    """Open every non-polynomial edge i into univalent vertices colored in copy i of M^N."""
    if D.uni:
        raise MapError("phi takes a diagram without univalent vertices")
    if N < 1:
        raise MapError("need at least one copy")
    fractional = [e for e in sorted(D.edges) if not D.edges[e][2].is_polynomial()]
    if len(fractional) > N:
        raise MapError(f"{len(fractional)} fractional edges need at least that many copies, got N={N}")
    delta = annihilator(M)
    Mbar = direct_sum(M, N)
    tri = {x: hs for x, hs in D.tri.items()}
    edges = dict(D.edges)
    uni: dict[int, ModuleElement] = {}
    linking: dict = {}
    nid = D.fresh_id()
    for i, e in enumerate(fractional, start=1):
        a, b, f = D.edges[e]
        if not poly_mod(delta, f.den).is_zero():
            raise MapError(f"label {f} has a denominator not dividing {delta}")
        try:
            gv, gw = solve_pairing(Mbar, i, f)
        except ModuleError as exc:
            raise MapError(str(exc)) from exc
        v, w, ev, ew = nid, nid + 1, nid + 2, nid + 3
        nid += 4
        del edges[e]
        edges[ev] = (a, v, ONE)
        edges[ew] = (b, w, ONE)
        sub = {(e, TAIL): (ev, TAIL), (e, HEAD): (ew, TAIL)}
        tri = {x: tuple(sub.get(h, h) for h in hs) for x, hs in tri.items()}
        uni[v], uni[w] = gv, gw
        linking[(v, w)] = f
    if not fractional:
        return D.replace(module=Mbar)
    return Diagram(tri=tri, uni=uni, iso=D.iso, edges=edges, linking=linking, module=Mbar)


def roundtrip_check(D: Diagram, M: BlanchfieldModule, N: int) -> bool:
    """psi(phi(D)) equals D exactly, after dropping zero-labeled terms."""
    return psi(phi(D, M, N)) == FormalSum.of(D)


# ---------------------------------------------------------------------------
# copies

def _copy_span(M: BlanchfieldModule, c: ModuleElement) -> set[int]:
    return {M.slot_copy(i) for i, p in enumerate(c.coords) if not p.is_zero()}


def move_to_copy(Mbar: BlanchfieldModule, c: ModuleElement, src: int, dst: int) -> ModuleElement:
    """Transport the copy-``src`` part of c into copy ``dst`` (the permutation xi)."""
    if src == dst:
        return c
    s, d = Mbar.slots_of_copy(src), Mbar.slots_of_copy(dst)
    coords = list(c.coords)
    for a, b in zip(s, d):
        coords[a], coords[b] = coords[b], coords[a]
    return ModuleElement(tuple(coords))


def iota(D: Diagram, N: int) -> Diagram:
    """Reinterpret the colors of D as elements of copy 1 of N copies of its module."""
    M = D.module
    if M is None:
        return D
    Mbar = direct_sum(M, N)
    pad = Mbar.ngens - M.ngens
    uni = {v: ModuleElement(tuple(c.coords) + tuple(Mbar.zero().coords[:pad])) for v, c in D.uni.items()}
    return D.replace(uni=uni, module=Mbar)


def is_distributed(D: Diagram) -> bool:
    """Univalent vertices split into pairs with distinct copies and no cross-pair linking."""
    if not D.uni:
        return True
    M = D.module
    span = {v: _copy_span(M, c) for v, c in D.uni.items()}
    if any(len(s) > 1 for s in span.values()):
        return False

    def ok(rest, used, groups):
        if not rest:
            return all(D.link(x, y).is_zero()
                       for i, g in enumerate(groups) for h in groups[i + 1:] for x in g for y in h)
        v = rest[0]
        for j in range(1, len(rest)):
            w = rest[j]
            cs = span[v] | span[w]
            if len(cs) > 1:
                continue
            for c in (cs or set(M.copies) - used):
                if c in used:
                    continue
                if ok(rest[1:j] + rest[j + 1:], used | {c}, [*groups, (v, w)]):
                    return True
        return False

    return ok(sorted(D.uni), frozenset(), [])


def fiber_maps(vertices: Sequence[int], s: int) -> Iterator[dict[int, int]]:
    """Maps V -> {1..s} whose fibers all have size 2."""
    vertices = list(vertices)

    def rec(i, counts, acc):
        if i == len(vertices):
            yield dict(acc)
            return
        for k in range(1, s + 1):
            if counts[k] < 2:
                counts[k] += 1
                acc[vertices[i]] = k
                yield from rec(i + 1, counts, acc)
                counts[k] -= 1
        acc.pop(vertices[i], None)

    yield from rec(0, {k: 0 for k in range(1, s + 1)}, {})


def distribute_terms(D: Diagram) -> list[tuple[Fraction, Diagram]]:
    M = D.module
    V = sorted(D.uni)
    if len(V) % 2:
        raise MapError("distribute needs an even number of univalent vertices")
    s = len(V) // 2
    if s == 0:
        return [(Fraction(1), D)]
    if M is None or len(M.copies) < s:
        raise MapError(f"distribute needs at least {s} copies")
    for v in V:
        if not _copy_span(M, D.uni[v]) <= {1}:
            raise MapError("distribute expects every color in copy 1")
    coeff = Fraction(1, factorial(s))
    out = []
    for sigma in fiber_maps(V, s):
        uni = {v: move_to_copy(M, D.uni[v], 1, sigma[v]) for v in V}
        linking = {(v, w): f for (v, w), f in D.linking.items() if sigma[v] == sigma[w]}
        out.append((coeff, D.replace(uni=uni, linking=linking)))
    return out


def distribute(D: Diagram) -> FormalSum:
    """(1/s!) times the sum over size-2-fiber maps of the spread-out diagrams."""
    out = FormalSum()
    for c, E in distribute_terms(D):
        out.add_diagram(E, c)
    return out


# ---------------------------------------------------------------------------
# series

class DiagramSeries:
    """Graded formal series: degree -> FormalSum; truncated at ``bound`` when set."""

    def __init__(self, parts: dict[int, FormalSum] | None = None, bound: int | None = None):
        self.bound = bound
        self.parts: dict[int, FormalSum] = {}
        for d, fs in (parts or {}).items():
            if (bound is None or d <= bound) and not fs.is_zero():
                self.parts[d] = fs

    @classmethod
    def one(cls, bound: int | None = None) -> "DiagramSeries":
        return cls({0: FormalSum.of(empty_diagram())}, bound)

    @classmethod
    def of(cls, terms: Sequence[tuple], bound: int | None = None) -> "DiagramSeries":
        parts: dict[int, FormalSum] = {}
        for c, D in terms:
            parts.setdefault(D.degree, FormalSum()).add_diagram(D, c)
        return cls(parts, bound)

    def truncate(self, bound: int) -> "DiagramSeries":
        b = bound if self.bound is None else min(bound, self.bound)
        return DiagramSeries(self.parts, b)

    def degree_part(self, d: int) -> FormalSum:
        return self.parts.get(d, FormalSum())

    def coefficient(self, D: Diagram) -> Fraction:
        return self.degree_part(D.degree).coefficient(D)

    def __add__(self, other: "DiagramSeries") -> "DiagramSeries":
        parts = dict(self.parts)
        for d, fs in other.parts.items():
            parts[d] = parts[d] + fs if d in parts else fs
        return DiagramSeries(parts, _min_bound(self.bound, other.bound))

    def scale(self, c) -> "DiagramSeries":
        return DiagramSeries({d: fs * c for d, fs in self.parts.items()}, self.bound)

    def union(self, other: "DiagramSeries", bound: int | None = None) -> "DiagramSeries":
        """Disjoint-union product, truncated at the smallest available bound."""
        b = _min_bound(_min_bound(self.bound, other.bound), bound)
        parts: dict[int, FormalSum] = {}
        for d1, f1 in self.parts.items():
            for d2, f2 in other.parts.items():
                d = d1 + d2
                if b is not None and d > b:
                    continue
                acc = parts.setdefault(d, FormalSum())
                for c1, D1 in f1.items():
                    for c2, D2 in f2.items():
                        acc.add_diagram(disjoint_union(D1, D2), c1 * c2)
        return DiagramSeries(parts, b)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiagramSeries) and self.parts == other.parts

    def lines(self) -> list[str]:
        out = []
        for d in sorted(self.parts):
            for c, D in self.parts[d].items():
                out.append(f"degree {d}: {c} * {describe(D)}")
        return out


def _min_bound(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def describe(D: Diagram) -> str:
    """Short text for a diagram: isolated vertices as •p, otherwise a shape summary."""
    parts = [f"•{p}" for p in sorted(D.iso.values())]
    if D.tri or D.uni:
        parts.insert(0, f"J(tri={len(D.tri)},uni={len(D.uni)},edges={len(D.edges)})")
    return " ⊔ ".join(parts) if parts else "∅"


def exp_union(S: DiagramSeries, bound: int) -> DiagramSeries:
    """Sum over k of S^k / k!, truncated at ``bound``."""
    if not S.degree_part(0).is_zero():
        raise MapError("exp_union needs a series without degree-0 term")
    result = DiagramSeries.one(bound)
    power = DiagramSeries.one(bound)
    for k in range(1, bound + 1):
        power = power.union(S, bound).scale(Fraction(1, k))
        if not power.parts:
            break
        result = result + power
    return result


def p_valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def rho_series(h1_order: int, bound: int) -> DiagramSeries:
    """Sum over primes p of -v_p(h1_order) times the single isolated vertex labeled p."""
    if h1_order < 1:
        raise MapError("the homology order must be a positive integer")
    terms = [(-p_valuation(h1_order, p), isolated(p)) for p in prime_factors(h1_order)]
    return DiagramSeries.of(terms, bound)


def augment_series(Z: DiagramSeries, h1_order: int, bound: int) -> DiagramSeries:
    """Z times exp of the rho series under disjoint union, truncated at ``bound``."""
    return Z.union(exp_union(rho_series(h1_order, bound), bound), bound)


def isolated_monomial(exponents: dict[int, int]) -> Diagram:
    """Disjoint union of t_i copies of the isolated vertex p_i."""
    primes = []
    for p, t in sorted(exponents.items()):
        if not is_prime(p):
            raise DiagramError(f"{p} is not prime")
        primes.extend([p] * t)
    return isolated(*primes)
