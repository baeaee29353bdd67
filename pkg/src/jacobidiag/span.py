"""Span membership and truncated quotient dimensions.

The working set grows breadth-first from the support of the target. Each new diagram
first receives its normalization step (EV, LE, LD, LV, parity); diagrams that are
normal, or only await an LD step, are then expanded by every expansion instance
(Hol, Hol', IHX, Aut, LD ungluing) in the next layer. Instances touching a diagram
outside the window are dropped. Membership is screened modulo a
large prime after each layer and every positive answer is re-derived exactly and
checked by recombination.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernel
from .canon import FormalSum
from .diagram import Diagram
from .linalg import ExactEliminator, markowitz_order, solve_combination
from .relations import (
    RelationInstance,
    Window,
    expansion_instances,
    flip_vertex,
    normalizing_instance,
    parse_relations,
    relation_instances,
)

CERTIFIED = "certified"
NOT_IN_WINDOW = "not_in_window"
FALSE_IN_WINDOW = "in_span_false_within_window"
_CHUNK = 64  # diagrams expanded between membership checks


@dataclass
class SpanCertificate:
    target: FormalSum
    terms: list[tuple[RelationInstance, Fraction]]

    def combination(self) -> FormalSum:
        acc = FormalSum()
        for inst, c in self.terms:
            acc = acc + inst.terms * c
        return acc

    def verify(self) -> bool:
        """Recombine the instance sums exactly and compare with the target."""
        return self.combination() == self.target

    def lines(self) -> list[str]:
        return [f"  {c} * {inst}" for inst, c in self.terms]


@dataclass
class SpanResult:
    status: str
    certificate: SpanCertificate | None
    window: Window
    relations: frozenset
    working_set: int
    rows: int
    columns: int
    seconds: float

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def report(self, timing: bool = True) -> str:
        out = [
            "command: inspan",
            f"relations: {','.join(sorted(self.relations))}",
            f"window: W={self.window.W} cap={self.window.cap}"
            + (f" max_univalent={self.window.max_univalent}" if self.window.max_univalent is not None else ""),
            f"working_set: {self.working_set}",
            f"matrix: {self.rows} x {self.columns}",
            f"result: {self.status}",
        ]
        if self.certificate is not None:
            out.append(f"certificate: {len(self.certificate.terms)} instances, verified={self.certificate.verify()}")
            out.extend(self.certificate.lines())
        if timing:
            out.append(f"time: {self.seconds:.3f}s")
        return "\n".join(out) + "\n"


@dataclass
class DimensionResult:
    dimension: int
    basis: list[Diagram]
    partial: bool
    window: Window
    relations: frozenset
    working_set: int
    rows: int
    columns: int
    seconds: float
    note: str = field(default="relative to the window truncation")

    def report(self, timing: bool = True) -> str:
        out = [
            "command: dim",
            f"relations: {','.join(sorted(self.relations))}",
            f"window: W={self.window.W} cap={self.window.cap}"
            + (f" max_univalent={self.window.max_univalent}" if self.window.max_univalent is not None else ""),
            f"working_set: {self.working_set}",
            f"matrix: {self.rows} x {self.columns}",
            f"dimension {self.dimension}",
            f"partial: {str(self.partial).lower()}",
            f"note: {self.note}",
            f"basis: {len(self.basis)}",
        ]
        out.extend(f"  {D!r}" for D in self.basis)
        if timing:
            out.append(f"time: {self.seconds:.3f}s")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------

class _Closure:
    """Breadth-first working set with a sparse relation matrix over canonical keys.

    Every new diagram is normalized eagerly (its EV/LE/LD/LV/parity step is added
    as soon as the diagram appears), so a layer corresponds to one expansion move.
    """

    _NO_EXPAND = ("EV", "LE", "LV", "Aut")

    def __init__(self, rels: frozenset, window: Window, module):
        self.rels = rels
        self.window = window
        self.gens = window.generators(module) if "Aut" in rels else []
        self.col: dict = {}
        self.reps: dict = {}
        self.rows: list[dict[int, Fraction]] = []
        self.instances: list[RelationInstance] = []
        self.row_keys: set = set()
        self.pending: list = []
        self.frontier: list = []
        self.todo: list = []
        self.exhausted = False
        self.capped = False

    def column(self, key, rep) -> int:
        c = self.col.get(key)
        if c is None:
            c = len(self.col)
            self.col[key] = c
            self.reps[key] = rep
            self.pending.append(key)
        return c

    def seed(self, fs: FormalSum) -> dict[int, Fraction]:
        vec = {self.column(k, fs.reps[k]): c for k, c in fs.terms.items()}
        self.drain()
        return vec

    def admit(self, inst: RelationInstance) -> None:
        if inst.terms.is_zero():
            return
        if not all(self.window.admits(r) for r in inst.terms.reps.values()):
            return
        sig = tuple(sorted(((repr(k), c) for k, c in inst.terms.terms.items())))
        if sig in self.row_keys:
            return
        if len(self.col) + sum(1 for k in inst.terms.terms if k not in self.col) > self.window.cap:
            self.capped = True
            return
        self.row_keys.add(sig)
        self.rows.append({self.column(k, inst.terms.reps[k]): c for k, c in inst.terms.terms.items()})
        self.instances.append(inst)

    def drain(self) -> None:
        """Normalize every pending diagram, breadth-first, queueing the expandable ones."""
        i = 0
        while i < len(self.pending):
            key = self.pending[i]
            i += 1
            step = normalizing_instance(self.reps[key], self.rels, self.gens)
            if step is not None:
                self.admit(step)
            if step is None or step.name not in self._NO_EXPAND:
                self.frontier.append(key)
        self.pending = []

    def step(self, max_keys: int | None = None) -> None:
        """Expand up to ``max_keys`` queued diagrams, opening a new layer when needed."""
        if not self.todo:
            self.todo, self.frontier = self.frontier, []
            if not self.todo:
                self.exhausted = True
                return
        n = len(self.todo) if max_keys is None else min(max_keys, len(self.todo))
        batch, self.todo = self.todo[:n], self.todo[n:]
        for key in batch:
            for inst in expansion_instances(self.reps[key], self.rels, self.window, self.gens):
                self.admit(inst)
            self.drain()
        if not self.todo and not self.frontier and not self.capped:
            self.exhausted = True

    def close(self) -> None:
        while not (self.exhausted or self.capped):
            self.step()


def _modp(c: Fraction, p: int) -> int:
    return c.numerator % p * pow(c.denominator, -1, p) % p


def _as_sum(target) -> FormalSum:
    if isinstance(target, Diagram):
        return FormalSum.of(target)
    return target


def _module_of(fs: FormalSum):
    for D in fs.reps.values():
        if D.module is not None:
            return D.module
    return None


def in_span(target, relations, window: Window | None = None) -> SpanResult:
    """Decide whether the target sum is a combination of relation instances."""
    t0 = time.perf_counter()
    rels = parse_relations(relations)
    window = window or Window()
    target = _as_sum(target)
    cl = _Closure(rels, window, _module_of(target))

    def done(status, cert=None):
        return SpanResult(status, cert, window, rels, len(cl.col), len(cl.rows), len(cl.col),
                          time.perf_counter() - t0)

    if target.is_zero():
        return done(CERTIFIED, SpanCertificate(target, []))
    cert = _single_instance(target, rels, window)
    if cert is not None:
        return done(CERTIFIED, cert)
    tvec = cl.seed(target)
    p = kernel.DEFAULT_PRIME
    screen = kernel.ModEliminator(p, True)
    fed = 0
    while True:
        cl.step(_CHUNK)
        for row in cl.rows[fed:]:
            cols = sorted(row)
            screen.add(cols, [_modp(row[c], p) for c in cols])
        fed = len(cl.rows)
        tcols = sorted(tvec)
        hit = screen.express(tcols, [_modp(tvec[c], p) for c in tcols])
        if hit is not None:
            cert = _certify(cl, tvec, sorted(hit), target)
            if cert is not None:
                return done(CERTIFIED, cert)
        if cl.exhausted or cl.capped:
            break
    cert = _certify(cl, tvec, None, target)
    if cert is not None:
        return done(CERTIFIED, cert)
    return done(NOT_IN_WINDOW if cl.capped else FALSE_IN_WINDOW)


def _single_instance(target: FormalSum, rels, window: Window) -> SpanCertificate | None:
    """Certificate with one term when the target is a multiple of a single instance."""
    k0 = target.sorted_keys()[0]
    c0 = target.terms[k0]
    found = None
    sites = []
    for key in target.sorted_keys():
        rep = target.reps[key]
        sites.append(rep)
        if rep.tri:
            sites.append(flip_vertex(rep, min(rep.tri)))  # the opposite orientation class
    for D in sites:
        for inst in relation_instances(D, rels, window, both_directions=True):
            c = inst.terms.terms.get(k0)
            if c and len(inst.terms) == len(target) and inst.terms * (c0 / c) == target:
                if c0 == c:
                    return SpanCertificate(target, [(inst, Fraction(1))])
                found = found or SpanCertificate(target, [(inst, c0 / c)])
    return found


def _certify(cl: _Closure, tvec, subset, target) -> SpanCertificate | None:
    attempts = [subset, None] if subset is not None else [None]
    for ids in attempts:
        ids = list(range(len(cl.rows))) if ids is None else ids
        coeffs = solve_combination([cl.rows[i] for i in ids], tvec)
        if coeffs is None:
            continue
        terms = [(cl.instances[ids[r]], c) for r, c in sorted(coeffs.items()) if c]
        cert = SpanCertificate(target, terms)
        if cert.verify():
            return cert
    return None


def quotient_dimension(generators: Sequence, relations, window: Window | None = None,
                       max_univalent: int | None = None) -> DimensionResult:
    """Exact dimension of span(generators) in the window-truncated quotient."""
    t0 = time.perf_counter()
    rels = parse_relations(relations)
    window = window or Window()
    if max_univalent is not None:
        window = Window(window.W, window.cap, window.aut, max_univalent)
    gens = [_as_sum(g) for g in generators]
    module = next((m for m in (_module_of(g) for g in gens) if m is not None), None)
    cl = _Closure(rels, window, module)
    gvecs = [cl.seed(g) for g in gens]
    cl.close()
    order = markowitz_order([*cl.rows, *gvecs])
    E = ExactEliminator(track=False, column_order=order)
    for r in sorted(cl.rows, key=lambda r: (len(r), sorted(r))):
        E.add(r)
    base = E.rank
    basis = []
    for g, vec in zip(gens, gvecs):
        if vec and E.add(vec):
            basis.append(next(iter(g.reps.values())) if len(g) == 1 else g)
    return DimensionResult(E.rank - base, basis, cl.capped, window, rels, len(cl.col),
                           len(cl.rows) + len(gvecs), len(cl.col), time.perf_counter() - t0)


def relation_rank(diagrams: Iterable[Diagram], relations, window: Window | None = None) -> int:
    """Rank of the relation matrix of the closure of the given diagrams (diagnostic)."""
    rels = parse_relations(relations)
    window = window or Window()
    sums = [FormalSum.of(D) for D in diagrams]
    cl = _Closure(rels, window, next((_module_of(s) for s in sums if _module_of(s)), None))
    for s in sums:
        cl.seed(s)
    cl.close()
    E = ExactEliminator(track=False, column_order=markowitz_order(cl.rows))
    for r in cl.rows:
        E.add(r)
    return E.rank
