"""Pure-Python sparse row echelon over Z/p with combination tracking.

Used when the compiled kernel is unavailable; the interface matches ``_modelim``.
Rows are added one at a time; the pivot of a row is its smallest column index.
"""
from __future__ import annotations

import heapq

DEFAULT_PRIME = 2147483647


class ModEliminator:
    def __init__(self, p: int = DEFAULT_PRIME, track: bool = True):
        self.p = p
        self.track = track
        self.pivots: dict[int, tuple[list[tuple[int, int]], dict[int, int]]] = {}
        self.nrows = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: dict[int, int], comb: dict[int, int] | None):
        p = self.p
        heap = list(vec)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            f = vec.get(c)
            if not f:
                continue
            piv = self.pivots.get(c)
            if piv is None:
                return c
            prow, pcomb = piv
            for cc, vv in prow:
                old = vec.get(cc)
                nv = ((old or 0) - f * vv) % p
                if nv:
                    if old is None:
                        heapq.heappush(heap, cc)
                    vec[cc] = nv
                elif old is not None:
                    del vec[cc]
            if comb is not None:
                for r, w in pcomb.items():
                    nv = (comb.get(r, 0) - f * w) % p
                    if nv:
                        comb[r] = nv
                    else:
                        comb.pop(r, None)
        return None

    def add(self, cols, vals) -> bool:
        """Insert a row; True when it raised the rank."""
        p = self.p
        rid = self.nrows
        self.nrows += 1
        vec = {}
        for c, v in zip(cols, vals):
            v %= p
            if v:
                vec[c] = (vec.get(c, 0) + v) % p
        vec = {c: v for c, v in vec.items() if v}
        comb = {rid: 1} if self.track else None
        lead = self._reduce(vec, comb)
        if lead is None:
            return False
        inv = pow(vec[lead], p - 2, p)
        prow = sorted((c, v * inv % p) for c, v in vec.items())
        pc = {r: w * inv % p for r, w in comb.items()} if comb is not None else {}
        self.pivots[lead] = (prow, pc)
        return True

    def express(self, cols, vals):
        """Coefficients {row id: c} with sum c * row = vector, or None when outside the span."""
        if not self.track:
            raise ValueError("express needs an eliminator built with track=True")
        p = self.p
        vec = {}
        for c, v in zip(cols, vals):
            v %= p
            if v:
                vec[c] = (vec.get(c, 0) + v) % p
        vec = {c: v for c, v in vec.items() if v}
        comb: dict[int, int] = {}
        if self._reduce(vec, comb) is not None:
            return None
        return {r: (-w) % p for r, w in comb.items() if w}

    def contains(self, cols, vals) -> bool:
        p = self.p
        vec = {}
        for c, v in zip(cols, vals):
            v %= p
            if v:
                vec[c] = (vec.get(c, 0) + v) % p
        vec = {c: v for c, v in vec.items() if v}
        return self._reduce(vec, None) is None
