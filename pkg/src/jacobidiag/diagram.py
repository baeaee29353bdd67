"""Colored, delta-colored and augmented diagrams: one data model, validation and text format.

A diagram has oriented trivalent vertices (a cyclic triple of half-edges), univalent
vertices colored by module elements, isolated vertices labeled by primes, oriented
edges carrying labels in (1/delta) Q[t^+-1], and a linking matrix on univalent pairs.
Half-edges are ``(edge_id, end)`` with end 0 at the tail and 1 at the head.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .blanchfield import BlanchfieldModule, ModuleElement, parse_module, serialize_module
from .laurent import (
    LaurentFraction,
    format_fraction,
    format_poly,
    frac,
    parse_fraction,
    parse_poly,
    poly_mod,
    reduce_mod_poly,
)

TAIL, HEAD = 0, 1
HalfEdge = tuple[int, int]


class DiagramError(ValueError):
    """Malformed diagram input or a broken invariant at load time."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Diagram:
    """Immutable diagram. Construct via the keyword arguments; do not mutate afterwards."""

    __slots__ = ("tri", "uni", "iso", "edges", "linking", "module", "_hash_raw")

    def __init__(
        self,
        tri: Mapping[int, Iterable[HalfEdge]] | None = None,
        uni: Mapping[int, ModuleElement] | None = None,
        iso: Mapping[int, int] | None = None,
        edges: Mapping[int, tuple] | None = None,
        linking: Mapping[tuple[int, int], object] | None = None,
        module: BlanchfieldModule | None = None,
    ):
        self.tri = {v: tuple(tuple(h) for h in hs) for v, hs in (tri or {}).items()}
        self.uni = dict(uni or {})
        self.iso = dict(iso or {})
        self.edges = {e: (a, b, frac(L)) for e, (a, b, L) in (edges or {}).items()}
        lk: dict[tuple[int, int], LaurentFraction] = {}
        for (v, w), f in (linking or {}).items():
            f = frac(f)
            if not f.is_zero():
                lk[(v, w)] = f
        for (v, w), f in list(lk.items()):
            if (w, v) not in lk:
                lk[(w, v)] = f.bar()
        self.linking = lk
        self.module = module
        self._hash_raw = None

    # -- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.tri) + len(self.iso)

    @property
    def vertices(self) -> list[int]:
        return sorted([*self.tri, *self.uni, *self.iso])

    def is_zero(self) -> bool:
        return any(L.is_zero() for _, _, L in self.edges.values())

    def is_delta(self) -> bool:
        return not self.uni

    def is_polynomial(self) -> bool:
        return all(L.is_polynomial() for _, _, L in self.edges.values())

    def jacobi_part(self) -> "Diagram":
        return self.replace(iso={})

    def isolated_part(self) -> "Diagram":
        return Diagram(iso=self.iso, module=self.module)

    def vertex_of(self, h: HalfEdge) -> int:
        return self.edges[h[0]][h[1]]

    def label_out(self, h: HalfEdge) -> LaurentFraction:
        """Label read along the edge leaving its vertex at half-edge h."""
        L = self.edges[h[0]][2]
        return L if h[1] == TAIL else L.bar()

    def half_edges_at(self, v: int) -> list[HalfEdge]:
        if v in self.tri:
            return list(self.tri[v])
        out = []
        for e, (a, b, _) in self.edges.items():
            if a == v:
                out.append((e, TAIL))
            if b == v:
                out.append((e, HEAD))
        return out

    def leg(self, v: int) -> tuple[int, HalfEdge, LaurentFraction]:
        """For a univalent vertex: (edge id, half-edge at the far end, label read toward v)."""
        (e, end), = self.half_edges_at(v)
        far = (e, 1 - end)
        return e, far, self.label_out(far)

    def link(self, v: int, w: int) -> LaurentFraction:
        f = self.linking.get((v, w))
        return f if f is not None else LaurentFraction(0)

    def has_loop_at(self, v: int) -> bool:
        return any(self.edges[e][0] == self.edges[e][1] == v for e, _ in self.tri.get(v, ()))

    def replace(self, **kw) -> "Diagram":
        args = dict(tri=self.tri, uni=self.uni, iso=self.iso, edges=self.edges,
                    linking=self.linking, module=self.module)
        args.update(kw)
        return Diagram(**args)

    def fresh_id(self) -> int:
        ids = [*self.tri, *self.uni, *self.iso, *self.edges]
        return max(ids, default=-1) + 1

    def raw_key(self) -> tuple:
        """Exact structural encoding (not isomorphism invariant); used for memoization."""
        if self._hash_raw is None:
            self._hash_raw = (
                tuple(sorted(self.tri.items())),
                tuple(sorted((v, c.key()) for v, c in self.uni.items())),
                tuple(sorted(self.iso.items())),
                tuple(sorted((e, a, b, L.key()) for e, (a, b, L) in self.edges.items())),
                tuple(sorted((k, f.key()) for k, f in self.linking.items())),
            )
        return self._hash_raw

    def __eq__(self, other) -> bool:
        return isinstance(other, Diagram) and self.raw_key() == other.raw_key()

    def __hash__(self) -> int:
        return hash(self.raw_key())

    def __repr__(self) -> str:
        return f"Diagram(deg={self.degree}, uni={len(self.uni)}, iso={sorted(self.iso.values())})"


# ---------------------------------------------------------------------------
# validation

def validate(D: Diagram, delta=None) -> list[str]:
    """List of invariant violations; empty when D is a well-formed diagram."""
    out: list[str] = []
    seen: dict[HalfEdge, int] = {}
    for v, hs in D.tri.items():
        if len(hs) != 3:
            out.append(f"orientation: vertex {v} has {len(hs)} half-edges, expected 3")
        for h in hs:
            if h[0] not in D.edges or h[1] not in (TAIL, HEAD):
                out.append(f"orientation: vertex {v} lists unknown half-edge {h}")
                continue
            if D.edges[h[0]][h[1]] != v:
                out.append(f"orientation: half-edge {h} does not end at vertex {v}")
            if h in seen:
                out.append(f"orientation: half-edge {h} used twice")
            seen[h] = v
    nodes = set(D.tri) | set(D.uni) | set(D.iso)
    if len(nodes) != len(D.tri) + len(D.uni) + len(D.iso):
        out.append("vertex ids are not distinct")
    valence = {v: 0 for v in nodes}
    for e, (a, b, L) in D.edges.items():
        for end, x in ((TAIL, a), (HEAD, b)):
            if x not in nodes:
                out.append(f"edge {e} ends at unknown vertex {x}")
                continue
            valence[x] += 1
            if x in D.tri and (e, end) not in seen:
                out.append(f"orientation: half-edge {(e, end)} missing from vertex {x}")
        if a in D.uni and b in D.uni:
            out.append(f"strut: edge {e} joins univalent vertices {a} and {b}")
        if D.uni and not L.is_polynomial():
            out.append(f"label: edge {e} of a colored diagram has non-polynomial label")
        if delta is not None and not L.is_polynomial():
            if not poly_mod(frac(delta).num, L.den).is_zero():
                out.append(f"label: denominator of edge {e} does not divide delta")
    for v in D.uni:
        if valence.get(v) != 1:
            out.append(f"univalent vertex {v} has valence {valence.get(v)}")
    for v, p in D.iso.items():
        if valence.get(v):
            out.append(f"isolated vertex {v} has incident edges")
        if not is_prime(p):
            out.append(f"prime: isolated vertex {v} is labeled {p}, not a prime")
    M = D.module
    for v, c in D.uni.items():
        if M is not None and (len(c) != M.ngens or not M.is_reduced(c)):
            out.append(f"color: vertex {v} is not a reduced element of the module")
    for (v, w), f in sorted(D.linking.items(), key=lambda kv: kv[0]):
        if v == w or v not in D.uni or w not in D.uni:
            out.append(f"linking: pair ({v}, {w}) is not a pair of distinct univalent vertices")
            continue
        if v < w:
            if D.link(w, v) != f.bar():
                out.append(f"hermitian: f({w},{v}) != bar f({v},{w})")
    if M is not None:
        us = sorted(D.uni)
        for i, v in enumerate(us):
            for w in us[i + 1:]:
                if reduce_mod_poly(D.link(v, w)) != M.pair(D.uni[v], D.uni[w]):
                    out.append(f"congruence: f({v},{w}) mod Q[t^+-1] != pairing of the colors")
    return out


# ---------------------------------------------------------------------------
# disjoint union and relabeling

def relabel(D: Diagram, vmap: Mapping[int, int], emap: Mapping[int, int]) -> Diagram:
    return Diagram(
        tri={vmap[v]: tuple((emap[e], end) for e, end in hs) for v, hs in D.tri.items()},
        uni={vmap[v]: c for v, c in D.uni.items()},
        iso={vmap[v]: p for v, p in D.iso.items()},
        edges={emap[e]: (vmap[a], vmap[b], L) for e, (a, b, L) in D.edges.items()},
        linking={(vmap[v], vmap[w]): f for (v, w), f in D.linking.items()},
        module=D.module,
    )


def disjoint_union(*ds: Diagram) -> Diagram:
    tri, uni, iso, edges, linking = {}, {}, {}, {}, {}
    module = None
    voff = eoff = 0
    for D in ds:
        module = module or D.module
        vs = [*D.tri, *D.uni, *D.iso]
        vmap = {v: voff + i for i, v in enumerate(sorted(vs))}
        emap = {e: eoff + i for i, e in enumerate(sorted(D.edges))}
        R = relabel(D, vmap, emap)
        tri.update(R.tri)
        uni.update(R.uni)
        iso.update(R.iso)
        edges.update(R.edges)
        linking.update(R.linking)
        voff += len(vs)
        eoff += len(D.edges)
    return Diagram(tri, uni, iso, edges, linking, module)


def empty_diagram(module: BlanchfieldModule | None = None) -> Diagram:
    return Diagram(module=module)


def isolated(*primes: int, module: BlanchfieldModule | None = None) -> Diagram:
    return Diagram(iso={i: p for i, p in enumerate(primes)}, module=module)


# ---------------------------------------------------------------------------
# text format

_END = {"t": TAIL, "h": HEAD}
_END_NAME = {TAIL: "t", HEAD: "h"}


def _parse_color(text: str, module: BlanchfieldModule | None) -> ModuleElement:
    coords = [parse_poly(p.strip()) for p in text.split(";")] if text.strip() else []
    if module is None:
        raise DiagramError("univalent colors need a module (add a 'module' section or pass one)")
    return module.element(coords)


def parse_diagram(text: str, module: BlanchfieldModule | None = None, check: bool = True) -> Diagram:
    """Read the sectioned text format; raises DiagramError on syntax or invariant problems."""
    D, _ = _parse_block(text.splitlines(), module, check)
    return D


def _parse_block(lines: list[str], module, check: bool):
    section = None
    mod_lines: list[str] = []
    tri, uni, iso, edges, linking = {}, {}, {}, {}, {}
    uni_raw: dict[int, str] = {}
    coeff = Fraction(1)
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("module", "vertices", "edges", "linking"):
            section = line
            continue
        if line.startswith("coeff "):
            coeff = Fraction(line.split(None, 1)[1])
            continue
        try:
            if section == "module":
                mod_lines.append(line)
            elif section == "vertices":
                vid, kind, *rest = line.split(None, 2)
                vid = int(vid)
                if vid in tri or vid in uni_raw or vid in iso:
                    raise DiagramError(f"duplicate vertex id {vid}")
                body = rest[0] if rest else ""
                if kind == "tri":
                    hs = []
                    for tok in body.split():
                        e, end = tok.split(".")
                        hs.append((int(e), _END[end]))
                    tri[vid] = tuple(hs)
                elif kind == "uni":
                    uni_raw[vid] = body
                elif kind == "iso":
                    iso[vid] = int(body)
                else:
                    raise DiagramError(f"unknown vertex kind {kind!r}")
            elif section == "edges":
                head, _, lab = line.partition(":")
                eid, a, arrow, b = head.split()
                if arrow != "->":
                    raise DiagramError("edge lines read '<id> <tail> -> <head> : <label>'")
                if int(eid) in edges:
                    raise DiagramError(f"duplicate edge id {eid}")
                edges[int(eid)] = (int(a), int(b), parse_fraction(lab.strip()))
            elif section == "linking":
                head, _, val = line.partition(":")
                v, w = (int(x) for x in head.split())
                linking[(v, w)] = parse_fraction(val.strip())
            else:
                raise DiagramError("content outside of a section")
        except DiagramError as exc:
            raise DiagramError(f"line {lineno}: {exc}") from exc
        except (ValueError, KeyError) as exc:
            raise DiagramError(f"line {lineno}: malformed entry {line!r} ({exc})") from exc
    if mod_lines:
        module = parse_module("\n".join(mod_lines))
    for v, body in uni_raw.items():
        try:
            uni[v] = _parse_color(body, module)
        except ValueError as exc:
            raise DiagramError(f"vertex {v}: {exc}") from exc
    D = Diagram(tri, uni, iso, edges, {}, module)
    # keep explicitly given pairs verbatim so validation can see asymmetric input
    lk = {}
    for (v, w), f in linking.items():
        if not f.is_zero():
            lk[(v, w)] = f
    for (v, w), f in list(lk.items()):
        if (w, v) not in lk:
            lk[(w, v)] = f.bar()
    D.linking = lk
    if check:
        bad = validate(D)
        if bad:
            raise DiagramError("; ".join(bad))
    return D, coeff


def serialize_diagram(D: Diagram, with_module: bool = True) -> str:
    lines = []
    if with_module and D.module is not None and D.uni:
        lines.append("module")
        lines.extend("  " + ln for ln in serialize_module(D.module).splitlines())
    lines.append("vertices")
    for v in D.vertices:
        if v in D.tri:
            hs = " ".join(f"{e}.{_END_NAME[end]}" for e, end in D.tri[v])
            lines.append(f"  {v} tri {hs}")
        elif v in D.uni:
            lines.append(f"  {v} uni {' ; '.join(format_poly(c) for c in D.uni[v].coords)}".rstrip())
        else:
            lines.append(f"  {v} iso {D.iso[v]}")
    lines.append("edges")
    for e in sorted(D.edges):
        a, b, L = D.edges[e]
        lines.append(f"  {e} {a} -> {b} : {format_label(L)}")
    pairs = sorted((v, w) for (v, w) in D.linking if v < w)
    if pairs:
        lines.append("linking")
        for v, w in pairs:
            lines.append(f"  {v} {w} : {format_label(D.linking[(v, w)])}")
    return "\n".join(lines) + "\n"


def format_label(L: LaurentFraction) -> str:
    return format_poly(L.num) if L.is_polynomial() else format_fraction(L)


def parse_diagram_list(text: str, module: BlanchfieldModule | None = None, check: bool = True):
    """Blocks separated by '---'; a leading 'module' section is shared. Returns (module, [(coeff, D)])."""
    blocks: list[list[str]] = [[]]
    for raw in text.splitlines():
        if raw.strip() == "---":
            blocks.append([])
        else:
            blocks[-1].append(raw)
    out = []
    shared = module
    for i, blk in enumerate(blocks):
        if not any(ln.split("#", 1)[0].strip() for ln in blk):
            continue
        D, c = _parse_block(blk, shared, check)
        if D.module is not None:
            shared = D.module
        if not any(ln.split("#", 1)[0].strip() in ("vertices", "edges", "linking") for ln in blk):
            continue  # header block carrying only the shared module
        out.append((c, D))
    return shared, out


def serialize_diagram_list(items, module: BlanchfieldModule | None = None) -> str:
    chunks = []
    if module is not None:
        chunks.append("module\n" + "".join("  " + ln + "\n" for ln in serialize_module(module).splitlines()))
    for c, D in items:
        head = f"coeff {c}\n" if c != 1 else ""
        chunks.append(head + serialize_diagram(D, with_module=False))
    return "---\n".join(chunks)
