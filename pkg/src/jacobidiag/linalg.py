"""Exact sparse elimination over Q, fraction-free on integer rows.

Each stored row is a primitive integer vector together with the rational combination
of inserted rows that produces it. A reduction step is ``row <- l*row - v*pivot``
followed by division by the content, so coefficients stay integral and small.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping


def _integerize(vec: Mapping[int, Fraction]) -> tuple[dict[int, int], Fraction]:
    """(integer vector, scale) with integer vector = scale * vec."""
    den = 1
    for v in vec.values():
        den = den * v.denominator // gcd(den, v.denominator)
    out = {c: int(v * den) for c, v in vec.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out, Fraction(den, g or 1)


class ExactEliminator:
    def __init__(self, track: bool = True, column_order: Mapping[int, int] | None = None):
        self.track = track
        self.order = column_order  # column -> priority; smaller is eliminated first
        self.pivots: dict[int, tuple[dict[int, int], dict[int, Fraction]]] = {}
        self.nrows = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _prio(self, c: int):
        return c if self.order is None else self.order.get(c, c)

    def _reduce(self, vec: dict[int, int], comb: dict[int, Fraction] | None, extra: list | None = None):
        heap = [(self._prio(c), c) for c in vec]
        heapq.heapify(heap)
        while heap:
            _, c = heapq.heappop(heap)
            f = vec.get(c)
            if not f:
                continue
            piv = self.pivots.get(c)
            if piv is None:
                return c
            prow, pcomb = piv
            lead = prow[c]
            g = gcd(lead, f)
            a, b = lead // g, f // g  # vec <- a*vec - b*prow
            if a != 1:
                for k in vec:
                    vec[k] *= a
                if comb is not None:
                    for k in comb:
                        comb[k] *= a
                if extra is not None:
                    extra[0] *= a
            for cc, vv in prow.items():
                old = vec.get(cc)
                nv = (old or 0) - b * vv
                if nv:
                    if old is None:
                        heapq.heappush(heap, (self._prio(cc), cc))
                    vec[cc] = nv
                elif old is not None:
                    del vec[cc]
            if comb is not None:
                for r, w in pcomb.items():
                    nv = comb.get(r, 0) - b * w
                    if nv:
                        comb[r] = nv
                    else:
                        comb.pop(r, None)
            cont = 0
            for v in vec.values():
                cont = gcd(cont, v)
                if cont == 1:
                    break
            if cont > 1:
                for k in vec:
                    vec[k] //= cont
                if comb is not None:
                    for k in comb:
                        comb[k] /= cont
                if extra is not None:
                    extra[0] /= cont
        return None

    def add(self, row: Mapping[int, Fraction]) -> bool:
        rid = self.nrows
        self.nrows += 1
        vec, scale = _integerize({c: Fraction(v) for c, v in row.items()})
        comb = {rid: scale} if self.track else None
        lead = self._reduce(vec, comb)
        if lead is None:
            return False
        if vec[lead] < 0:
            vec = {c: -v for c, v in vec.items()}
            if comb is not None:
                comb = {r: -w for r, w in comb.items()}
        self.pivots[lead] = (vec, comb or {})
        return True

    def express(self, target: Mapping[int, Fraction]) -> dict[int, Fraction] | None:
        """Exact coefficients {row id: c} with sum c * row = target, or None."""
        if not self.track:
            raise ValueError("express needs an eliminator built with track=True")
        vec, scale = _integerize({c: Fraction(v) for c, v in target.items()})
        comb: dict[int, Fraction] = {}
        a = [scale]  # vec = a * target + sum comb * rows
        if self._reduce(vec, comb, a) is not None:
            return None
        return {r: -w / a[0] for r, w in comb.items() if w}

    def contains(self, target: Mapping[int, Fraction]) -> bool:
        vec, _ = _integerize({c: Fraction(v) for c, v in target.items()})
        return self._reduce(vec, None) is None


def markowitz_order(rows: Iterable[Mapping[int, object]]) -> dict[int, int]:
    """Column priority: ascending number of rows touching the column, ties by index."""
    count: dict[int, int] = {}
    for r in rows:
        for c in r:
            count[c] = count.get(c, 0) + 1
    ranked = sorted(count, key=lambda c: (count[c], c))
    return {c: i for i, c in enumerate(ranked)}


def exact_rank(rows: list[Mapping[int, Fraction]]) -> int:
    E = ExactEliminator(track=False, column_order=markowitz_order(rows))
    for r in sorted(rows, key=len):
        E.add(r)
    return E.rank


def solve_combination(rows: list[Mapping[int, Fraction]], target: Mapping[int, Fraction]):
    """Exact coefficients c with sum c_i rows[i] = target, or None."""
    E = ExactEliminator(track=True, column_order=markowitz_order([*rows, target]))
    for r in rows:
        E.add(r)
    return E.express(target)
