"""Blanchfield modules given by orthogonal sums of cyclic and hyperbolic blocks."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .laurent import (
    ONE,
    ZERO,
    LaurentFraction,
    LaurentPoly,
    congruent_mod_poly,
    format_poly,
    invert_mod,
    is_symmetric,
    ordinary_part,
    parse_poly,
    poly,
    poly_gcd,
    poly_lcm,
    poly_mod,
    reduce_mod_poly,
)

T_PLUS_1 = LaurentPoly({0: 1, 1: 1})


class ModuleError(ValueError):
    pass


@dataclass(frozen=True)
class BlockSpec:
    """One orthogonal summand: ``cyclic`` (pi, n, P) or ``hyperbolic`` (m)."""

    kind: str
    pi: LaurentPoly | None = None
    n: int = 1
    P: LaurentPoly | None = None
    m: int = 1
    dual_pair: bool = False  # pi declared as a product of two dual non-symmetric primes

    @classmethod
    def cyclic(cls, pi, n: int = 1, P=1, dual_pair: bool = False) -> "BlockSpec":
        return cls("cyclic", pi=poly(pi), n=n, P=poly(P), dual_pair=dual_pair)

    @classmethod
    def hyperbolic(cls, m: int) -> "BlockSpec":
        return cls("hyperbolic", m=m)

    @property
    def order(self) -> LaurentPoly:
        if self.kind == "cyclic":
            return ordinary_part(self.pi ** self.n)
        return ordinary_part(T_PLUS_1 ** self.m)

    @property
    def rank(self) -> int:
        return 1 if self.kind == "cyclic" else 2

    def gram(self) -> list[list[LaurentFraction]]:
        if self.kind == "cyclic":
            return [[LaurentFraction(self.P, self.pi ** self.n)]]
        f = LaurentFraction(ONE, T_PLUS_1 ** self.m)
        zero = LaurentFraction(ZERO)
        return [[zero, f], [f.bar(), zero]]

    def check(self) -> None:
        if self.kind == "cyclic":
            pi, P = self.pi, self.P
            if pi is None or pi.is_zero() or pi.is_constant():
                raise ModuleError("cyclic block needs a non-constant pi")
            if self.n < 1:
                raise ModuleError("cyclic block needs n >= 1")
            if not is_symmetric(pi):
                raise ModuleError(f"pi = {pi} is not symmetric")
            centered_t2 = ordinary_part(pi) == ordinary_part(T_PLUS_1 ** 2)
            if not centered_t2 and (pi(1) == 0 or pi(-1) == 0):
                raise ModuleError(f"pi = {pi} vanishes at +-1")
            if P is None or P.is_zero() or not is_symmetric(P):
                raise ModuleError(f"P = {P} must be a nonzero symmetric polynomial")
            if poly_gcd(P, pi) != ONE:
                raise ModuleError(f"P = {P} is not prime to pi = {pi}")
            g = self.gram()[0][0]
            if not congruent_mod_poly(g, g.bar()):
                raise ModuleError(
                    f"self-pairing {g} is not hermitian; write pi and P in self-dual form"
                )
        elif self.kind == "hyperbolic":
            if self.m < 1 or self.m % 2 == 0:
                raise ModuleError(f"hyperbolic block needs odd m >= 1, got {self.m}")
        else:
            raise ModuleError(f"unknown block kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "cyclic":
            extra = " dual_pair" if self.dual_pair else ""
            return f"cyclic pi={format_poly(self.pi)} n={self.n} P={format_poly(self.P)}{extra}"
        return f"hyperbolic m={self.m}"


@dataclass(frozen=True)
class ModuleElement:
    """Coordinates on the generator slots of a module, reduced mod the slot orders."""

    coords: tuple[LaurentPoly, ...]

    def key(self) -> tuple:
        return tuple(c.key() for c in self.coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return " ; ".join(format_poly(c) for c in self.coords)


@dataclass(frozen=True)
class BlanchfieldModule:
    blocks: tuple[BlockSpec, ...]
    tags: tuple[int, ...] = ()
    _slots: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.tags:
            object.__setattr__(self, "tags", tuple(1 for _ in self.blocks))
        if len(self.tags) != len(self.blocks):
            raise ModuleError("one copy tag per block required")
        for b in self.blocks:
            b.check()
        slots = []
        for bi, b in enumerate(self.blocks):
            for k in range(b.rank):
                slots.append((bi, k))
        object.__setattr__(self, "_slots", tuple(slots))
        offsets, orders = [], []
        for bi, b in enumerate(self.blocks):
            offsets.append(len(orders))
            orders.extend([b.order] * b.rank)
        object.__setattr__(self, "_offsets", tuple(offsets))
        object.__setattr__(self, "_orders", tuple(orders))
        gram: dict[tuple[int, int], LaurentFraction] = {}
        for bi, b in enumerate(self.blocks):
            g = b.gram()
            off = offsets[bi]
            for i in range(b.rank):
                for j in range(b.rank):
                    if not g[i][j].is_zero():
                        gram[(off + i, off + j)] = g[i][j]
        object.__setattr__(self, "_gram", gram)

    # -- structure -----------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self._slots)

    @property
    def orders(self) -> tuple[LaurentPoly, ...]:
        return self._orders

    @property
    def copies(self) -> list[int]:
        return sorted(set(self.tags))

    def slot_copy(self, i: int) -> int:
        return self.tags[self._slots[i][0]]

    def slots_of_copy(self, tag: int) -> list[int]:
        return [i for i in range(self.ngens) if self.slot_copy(i) == tag]

    def blocks_of_copy(self, tag: int) -> list[int]:
        return [bi for bi, tg in enumerate(self.tags) if tg == tag]

    def block_slots(self, bi: int) -> list[int]:
        off = self._offsets[bi]
        return list(range(off, off + self.blocks[bi].rank))

    def gram(self, i: int, j: int) -> LaurentFraction:
        return self._gram.get((i, j), LaurentFraction(ZERO))

    def restrict(self, tag: int) -> "BlanchfieldModule":
        idx = self.blocks_of_copy(tag)
        return BlanchfieldModule(tuple(self.blocks[i] for i in idx))

    # -- elements ------------------------------------------------------
    def element(self, coords: Sequence) -> ModuleElement:
        if len(coords) != self.ngens:
            raise ModuleError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return ModuleElement(tuple(poly_mod(poly(c), o) for c, o in zip(coords, self._orders)))

    def zero(self) -> ModuleElement:
        return ModuleElement(tuple(ZERO for _ in range(self.ngens)))

    def generator(self, i: int, coeff=ONE) -> ModuleElement:
        coords = [ZERO] * self.ngens
        coords[i] = poly_mod(poly(coeff), self._orders[i])
        return ModuleElement(tuple(coords))

    def generators(self) -> list[ModuleElement]:
        return [self.generator(i) for i in range(self.ngens)]

    def add(self, x: ModuleElement, y: ModuleElement) -> ModuleElement:
        return ModuleElement(tuple(poly_mod(a + b, o) for a, b, o in zip(x.coords, y.coords, self._orders)))

    def scale(self, p, x: ModuleElement) -> ModuleElement:
        p = poly(p)
        return ModuleElement(tuple(poly_mod(p * a, o) for a, o in zip(x.coords, self._orders)))

    def is_reduced(self, x: ModuleElement) -> bool:
        return all(poly_mod(c, o) == c for c, o in zip(x.coords, self._orders))

    def pair(self, x: ModuleElement, y: ModuleElement) -> LaurentFraction:
        """Blanchfield pairing, sesquilinear: b(Px, Qy) = P(t) Q(t^-1) b(x, y), reduced."""
        acc = LaurentFraction(ZERO)
        for (i, j), g in self._gram.items():
            a, b = x.coords[i], y.coords[j]
            if a.is_zero() or b.is_zero():
                continue
            acc = acc + g * (a * b.bar())
        return reduce_mod_poly(acc)

    def annihilator(self) -> LaurentPoly:
        return annihilator(self)

    def describe(self) -> str:
        return serialize_module(self)


def annihilator(M: BlanchfieldModule) -> LaurentPoly:
    """Least common multiple of the block orders, monic with nonzero constant term."""
    out = ONE
    for b in M.blocks:
        out = poly_lcm(out, b.order)
    return out


def direct_sum(M: BlanchfieldModule, N: int) -> BlanchfieldModule:
    """N orthogonal copies of M, tagged 1..N."""
    if N < 1:
        raise ModuleError("direct_sum needs N >= 1")
    if len(set(M.tags)) > 1:
        raise ModuleError("direct_sum expects a single-copy module")
    blocks, tags = [], []
    for k in range(1, N + 1):
        blocks.extend(M.blocks)
        tags.extend([k] * len(M.blocks))
    return BlanchfieldModule(tuple(blocks), tuple(tags))


# ---------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True)
class ModuleAutomorphism:
    """Images of the generator slots: column j holds the coordinates of a(g_j)."""

    matrix: tuple[tuple[LaurentPoly, ...], ...]
    family: str = "general"
    name: str = ""

    def apply(self, M: BlanchfieldModule, x: ModuleElement) -> ModuleElement:
        n = M.ngens
        out = []
        for i in range(n):
            acc = ZERO
            row = self.matrix[i]
            for j in range(n):
                if not row[j].is_zero() and not x.coords[j].is_zero():
                    acc = acc + row[j] * x.coords[j]
            out.append(poly_mod(acc, M.orders[i]))
        return ModuleElement(tuple(out))


def _identity_matrix(n: int) -> list[list[LaurentPoly]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _freeze(mat) -> tuple:
    return tuple(tuple(r) for r in mat)


def permutation_automorphism(M: BlanchfieldModule, i: int, j: int) -> ModuleAutomorphism:
    """xi_ij: swap copies i and j slot by slot."""
    si, sj = M.slots_of_copy(i), M.slots_of_copy(j)
    if len(si) != len(sj):
        raise ModuleError("copies have different shapes")
    mat = _identity_matrix(M.ngens)
    for a, b in zip(si, sj):
        mat[a][a] = mat[b][b] = ZERO
        mat[b][a] = ONE
        mat[a][b] = ONE
    return ModuleAutomorphism(_freeze(mat), "permutation", f"xi_{i}{j}")


def scalar_automorphism(M: BlanchfieldModule, tag: int, sign: int = 1, power: int = 0) -> ModuleAutomorphism:
    """Multiplication by sign * t^power on one copy, identity on the others."""
    mat = _identity_matrix(M.ngens)
    c = LaurentPoly.monomial(power, sign)
    for a in M.slots_of_copy(tag):
        mat[a][a] = c
    tname = "" if power == 0 else ("t" if power == 1 else f"t^{power}")
    name = f"{'-' if sign < 0 else ''}{tname or '1'}@{tag}"
    return ModuleAutomorphism(_freeze(mat), "scalar", name)


def rotation_automorphism(M: BlanchfieldModule, i: int, j: int, x=Fraction(3, 5), y=Fraction(4, 5)) -> ModuleAutomorphism:
    """chi_ij: g -> x g + y xi(g) on copy i, g -> y xi(g) - x g on copy j."""
    x, y = Fraction(x), Fraction(y)
    if x * x + y * y != 1:
        raise ModuleError("rotation needs x^2 + y^2 = 1")
    si, sj = M.slots_of_copy(i), M.slots_of_copy(j)
    mat = _identity_matrix(M.ngens)
    for a, b in zip(si, sj):
        # image of g_a (copy i): x g_a + y g_b ; image of g_b (copy j): y g_a - x g_b
        mat[a][a] = LaurentPoly.constant(x)
        mat[b][a] = LaurentPoly.constant(y)
        mat[a][b] = LaurentPoly.constant(y)
        mat[b][b] = LaurentPoly.constant(-x)
    return ModuleAutomorphism(_freeze(mat), "rotation", f"chi_{i}{j}")


def verify_automorphism(M: BlanchfieldModule, a: ModuleAutomorphism) -> bool:
    """Well-defined, pairing-preserving and bijective on generators."""
    n = M.ngens
    if len(a.matrix) != n or any(len(r) != n for r in a.matrix):
        raise ModuleError(f"automorphism matrix must be {n}x{n}")
    gens = M.generators()
    images = [a.apply(M, g) for g in gens]
    # order_j * a(g_j) must vanish
    for j in range(n):
        if not M.scale(M.orders[j], images[j]).is_zero():
            return False
    for i in range(n):
        for j in range(n):
            if M.pair(images[i], images[j]) != M.pair(gens[i], gens[j]):
                return False
    return _q_rank(M, a) == sum(ordinary_part(o).max_exp() for o in M.orders)


def _q_rank(M: BlanchfieldModule, a: ModuleAutomorphism) -> int:
    """Rank of a as a Q-linear map on the finite-dimensional space of M."""
    basis = []  # (slot, exponent)
    for i, o in enumerate(M.orders):
        for e in range(ordinary_part(o).max_exp()):
            basis.append((i, e))
    index = {b: k for k, b in enumerate(basis)}
    rows = []
    for i, e in basis:
        x = M.generator(i, LaurentPoly.monomial(e))
        y = a.apply(M, x)
        row = [Fraction(0)] * len(basis)
        for s, c in enumerate(y.coords):
            for ee, cc in c.terms:
                row[index[(s, ee)]] = cc
        rows.append(row)
    return _dense_rank(rows)


def _dense_rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][c]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] / pv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# realizing a prescribed linking

def _components(M: BlanchfieldModule, blocks: list[int]) -> list[int]:
    """Pick one block per coprime component whose order is the component lcm."""
    groups: list[list[int]] = []
    for bi in blocks:
        o = M.blocks[bi].order
        hit = [g for g in groups if any(poly_gcd(o, M.blocks[b].order) != ONE for b in g)]
        merged = [bi]
        for g in hit:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    chosen = []
    for g in groups:
        lcm = ONE
        for b in g:
            lcm = poly_lcm(lcm, M.blocks[b].order)
        best = [b for b in g if M.blocks[b].order == lcm]
        if not best:
            raise ModuleError("a primary component has no block of maximal order")
        chosen.append(min(best))
    return sorted(chosen)


def solve_pairing(M: BlanchfieldModule, tag: int, f) -> tuple[ModuleElement, ModuleElement]:
    """Colors (gamma_v, gamma_w) in copy ``tag`` with pair(gamma_v, gamma_w) = f mod Q[t^+-1].

    gamma_v is the sum of the generators of the copy (an element of order the
    annihilator); gamma_w is solved block by block after a CRT partial-fraction
    split of f.
    """
    f = LaurentFraction.of(f)
    slots = M.slots_of_copy(tag)
    if not slots:
        if reduce_mod_poly(f).is_zero():
            return M.zero(), M.zero()
        raise ModuleError(f"copy {tag} is empty; cannot realize {f}")
    gv = M.zero()
    for s in slots:
        gv = M.add(gv, M.generator(s))
    red = reduce_mod_poly(f)
    if red.is_zero():
        return gv, M.zero()
    blocks = M.blocks_of_copy(tag)
    delta = ONE
    for b in blocks:
        delta = poly_lcm(delta, M.blocks[b].order)
    if not poly_mod(delta, red.den).is_zero():
        raise ModuleError(f"denominator of {f} does not divide the annihilator {delta}")
    # F = f * delta, a polynomial mod delta
    from .laurent import exact_div
    F = red.num * exact_div(delta, red.den)
    coords = [ZERO] * M.ngens
    for b in _components(M, blocks):
        blk = M.blocks[b]
        O = blk.order
        cof = exact_div(delta, O)
        h = poly_mod(F * invert_mod(cof, O), O)  # f = sum_b h_b / O_b mod Q[t^+-1]
        if h.is_zero():
            continue
        s = M.block_slots(b)
        if blk.kind == "cyclic":
            g = blk.gram()[0][0]  # = Pn / O up to the monic normalization
            Pn = g.num * exact_div(O, g.den)
            S = poly_mod(h * invert_mod(Pn, O), O)
            coords[s[0]] = poly_mod(S.bar(), O)
        else:
            g = blk.gram()[0][1]
            Pn = g.num * exact_div(O, g.den)
            S = poly_mod(h * invert_mod(Pn, O), O)
            coords[s[1]] = poly_mod(S.bar(), O)
    gw = ModuleElement(tuple(coords))
    got = M.pair(gv, gw)
    if got != red:
        raise ModuleError(f"solve_pairing failed to certify: got {got}, wanted {red}")
    return gv, gw


# ---------------------------------------------------------------------------
# integral automorphisms of Z[t^+-1]/(delta) gamma (+) Z[t^+-1]/(delta) eta

@dataclass
class IntegralScan:
    delta: LaurentPoly
    degree_bound: int
    units: list[LaurentPoly]
    automorphisms: list[tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]]
    complete: bool

    def preserves_decomposition(self) -> bool:
        return all((P * Q).is_zero() or poly_mod(P * Q, self.delta).is_zero()
                   for P, Q, _, _ in self.automorphisms)


def _isqrt_floor(x: Fraction) -> int:
    """floor(sqrt(x)) for x >= 0, exactly."""
    if x <= 0:
        return 0
    n = x.numerator // x.denominator
    r = int(n ** 0.5) if n < 2 ** 52 else 1 << (n.bit_length() // 2)
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


def hermitian_norm(P: LaurentPoly, delta: LaurentPoly) -> LaurentPoly:
    return poly_mod(P * P.bar(), delta)


def integral_automorphism_scan(delta="t - 1 + t^-1", degree_bound: int = 1) -> IntegralScan:
    """All integer 2x2 [[P, Q], [R, S]] with residues of degree <= degree_bound that are
    unitary for the form b(gamma, gamma) = b(eta, eta), b(gamma, eta) = 0 over Z[t^+-1]/(delta).

    Requires delta symmetric of degree 2 with a positive definite norm form, which
    bounds the integer coefficients; the list is complete within the degree bound.
    """
    d = ordinary_part(poly(delta))
    deg = d.max_exp()
    if deg != 2 or not is_symmetric(d):
        raise ModuleError("integral scan supports symmetric delta of degree 2")
    k = min(degree_bound, deg - 1) + 1
    # quadratic form N(c) = constant of P*bar(P) mod delta, P = sum c_i t^i
    G = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            val = poly_mod(LaurentPoly.monomial(i - j) + LaurentPoly.monomial(j - i), d)
            if not val.is_zero() and val.max_exp() > 0:
                raise ModuleError("norm form is not scalar-valued")
            G[i][j] = val.coeff(0) / 2
    # positive definiteness (leading minors) and bounds |c_i| <= sqrt((G^-1)_ii)
    inv = _inverse(G)
    if inv is None or any(_minor(G, r) <= 0 for r in range(1, k + 1)):
        raise ModuleError("norm form is not positive definite")
    bounds = [_isqrt_floor(inv[i][i]) for i in range(k)]
    candidates = []
    for cs in product(*[range(-b, b + 1) for b in bounds]):
        P = LaurentPoly({i: c for i, c in enumerate(cs)})
        n = hermitian_norm(P, d)
        if n.is_zero() or n == ONE:
            candidates.append((P, n))
    units = [P for P, n in candidates if n == ONE]
    rows = [(P, Q) for (P, nP), (Q, nQ) in product(candidates, repeat=2)
            if poly_mod(nP + nQ, d) == ONE]
    autos = []
    for (P, Q), (R, S) in product(rows, repeat=2):
        if poly_mod(P * R.bar() + Q * S.bar(), d).is_zero():
            autos.append((P, Q, R, S))
    return IntegralScan(d, degree_bound, units, autos, complete=degree_bound >= deg - 1)


def _minor(G, r):
    return _det([row[:r] for row in G[:r]])


def _det(A):
    A = [r[:] for r in A]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def _inverse(G):
    n = len(G)
    A = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(G)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [r[n:] for r in A]


def compose_integral(a, b, delta: LaurentPoly):
    """Matrix product of two scan entries (acting on the (gamma, eta) basis)."""
    P1, Q1, R1, S1 = a
    P2, Q2, R2, S2 = b
    return (
        poly_mod(P1 * P2 + Q1 * R2, delta),
        poly_mod(P1 * Q2 + Q1 * S2, delta),
        poly_mod(R1 * P2 + S1 * R2, delta),
        poly_mod(R1 * Q2 + S1 * S2, delta),
    )


# ---------------------------------------------------------------------------
# module description files

_KV = re.compile(r"(\w+)\s*=")


def _parse_kv(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    matches = list(_KV.finditer(text))
    for i, m in enumerate(matches):
        end = matches[i + 1].start() if i + 1 < len(matches) else len(text)
        out[m.group(1)] = text[m.end():end].strip()
    return out


def parse_module(text: str) -> BlanchfieldModule:
    blocks, tags = [], []
    tag = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        try:
            if word == "trivial":
                continue
            if word == "copy":
                tag = int(rest.strip())
            elif word == "cyclic":
                dual = rest.rstrip().endswith("dual_pair")
                if dual:
                    rest = rest.rstrip()[: -len("dual_pair")]
                kv = _parse_kv(rest)
                blocks.append(BlockSpec.cyclic(parse_poly(kv["pi"]), int(kv.get("n", "1")),
                                               parse_poly(kv.get("P", "1")), dual_pair=dual))
                tags.append(tag)
            elif word == "hyperbolic":
                kv = _parse_kv(rest)
                blocks.append(BlockSpec.hyperbolic(int(kv["m"])))
                tags.append(tag)
            else:
                raise ModuleError(f"unknown keyword {word!r}")
        except (KeyError, ValueError) as exc:
            raise ModuleError(f"line {lineno}: {exc}") from exc
    return BlanchfieldModule(tuple(blocks), tuple(tags))


def serialize_module(M: BlanchfieldModule) -> str:
    if not M.blocks:
        return "trivial\n"
    lines = []
    for tag in M.copies:
        lines.append(f"copy {tag}")
        for bi in M.blocks_of_copy(tag):
            lines.append(M.blocks[bi].describe())
    return "\n".join(lines) + "\n"


def trivial_module() -> BlanchfieldModule:
    return BlanchfieldModule(())


def cyclic_module(pi="t - 1 + t^-1", n: int = 1, P="1") -> BlanchfieldModule:
    return BlanchfieldModule((BlockSpec.cyclic(poly(pi), n, poly(P)),))


def hyperbolic_module(m: int) -> BlanchfieldModule:
    return BlanchfieldModule((BlockSpec.hyperbolic(m),))


def default_aut_generators(M: BlanchfieldModule, rotations: bool = True,
                           xy: tuple = (Fraction(3, 5), Fraction(4, 5))) -> list[ModuleAutomorphism]:
    """Restricted automorphism generators for a sum of equal copies.

    Permutations xi_ij, -1 and t^{+-1} on one copy, and (optionally) the
    rotations chi_ij with parameters xy.
    """
    copies = M.copies
    gens: list[ModuleAutomorphism] = []
    for a in range(len(copies)):
        for b in range(a + 1, len(copies)):
            gens.append(permutation_automorphism(M, copies[a], copies[b]))
    for c in copies:
        gens.append(scalar_automorphism(M, c, -1, 0))
        gens.append(scalar_automorphism(M, c, 1, 1))
        gens.append(scalar_automorphism(M, c, 1, -1))
    if rotations:
        for a in copies:
            for b in copies:
                if a != b:
                    gens.append(rotation_automorphism(M, a, b, *xy))
    return gens
