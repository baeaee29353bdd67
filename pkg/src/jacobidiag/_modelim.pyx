# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled sparse row echelon over Z/p with combination tracking (see _modelim_py)."""

from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue
from libc.stdint cimport int64_t

DEFAULT_PRIME = 2147483647


cdef class ModEliminator:
    cdef readonly int64_t p
    cdef readonly bint track
    cdef readonly int nrows
    cdef int _rank
    cdef vector[int] pivot_of_col
    cdef vector[vector[int]] prow_cols
    cdef vector[vector[int64_t]] prow_vals
    cdef vector[vector[int]] pcomb_rows
    cdef vector[vector[int64_t]] pcomb_vals
    # sparse accumulators
    cdef vector[int64_t] acc
    cdef vector[char] flag
    cdef vector[int] touched
    cdef vector[int64_t] cacc
    cdef vector[char] cflag
    cdef vector[int] ctouched
    cdef priority_queue[int] heap

    def __init__(self, p=DEFAULT_PRIME, track=True):
        self.p = p
        self.track = track
        self.nrows = 0
        self._rank = 0

    @property
    def rank(self):
        return self._rank

    cdef void _grow_cols(self, int c):
        if c >= <int>self.acc.size():
            n = max(c + 1, 2 * <int>self.acc.size())
            self.acc.resize(n, 0)
            self.flag.resize(n, 0)
            self.pivot_of_col.resize(n, -1)

    cdef void _grow_rows(self, int r):
        if r >= <int>self.cacc.size():
            n = max(r + 1, 2 * <int>self.cacc.size())
            self.cacc.resize(n, 0)
            self.cflag.resize(n, 0)

    cdef void _load(self, cols, vals):
        cdef int c
        cdef int64_t v
        for pc, pv in zip(cols, vals):
            c = pc
            v = pv % self.p
            if v == 0:
                continue
            self._grow_cols(c)
            if not self.flag[c]:
                self.flag[c] = 1
                self.touched.push_back(c)
            self.acc[c] = (self.acc[c] + v) % self.p
            self.heap.push(-c)

    cdef int _reduce(self, bint do_comb):
        cdef int c, cc, pi, r
        cdef size_t k
        cdef int64_t f, vv, old, nv
        cdef int64_t p = self.p
        while not self.heap.empty():
            c = -self.heap.top()
            self.heap.pop()
            f = self.acc[c]
            if f == 0:
                continue
            pi = self.pivot_of_col[c]
            if pi < 0:
                return c
            for k in range(self.prow_cols[pi].size()):
                cc = self.prow_cols[pi][k]
                vv = self.prow_vals[pi][k]
                if not self.flag[cc]:
                    self.flag[cc] = 1
                    self.touched.push_back(cc)
                old = self.acc[cc]
                nv = (old - (f * vv) % p) % p
                if nv < 0:
                    nv += p
                if old == 0 and nv != 0:
                    self.heap.push(-cc)
                self.acc[cc] = nv
            if do_comb:
                for k in range(self.pcomb_rows[pi].size()):
                    r = self.pcomb_rows[pi][k]
                    vv = self.pcomb_vals[pi][k]
                    if not self.cflag[r]:
                        self.cflag[r] = 1
                        self.ctouched.push_back(r)
                    nv = (self.cacc[r] - (f * vv) % p) % p
                    if nv < 0:
                        nv += p
                    self.cacc[r] = nv
        return -1

    cdef void _clear(self):
        cdef size_t k
        for k in range(self.touched.size()):
            self.acc[self.touched[k]] = 0
            self.flag[self.touched[k]] = 0
        self.touched.clear()
        for k in range(self.ctouched.size()):
            self.cacc[self.ctouched[k]] = 0
            self.cflag[self.ctouched[k]] = 0
        self.ctouched.clear()
        while not self.heap.empty():
            self.heap.pop()

    cdef int64_t _inv(self, int64_t a):
        return pow(a, self.p - 2, self.p)

    def add(self, cols, vals):
        """Insert a row; True when it raised the rank."""
        cdef int rid = self.nrows
        cdef int lead, c, r
        cdef size_t k
        cdef int64_t inv
        cdef vector[int] rc
        cdef vector[int64_t] rv
        cdef vector[int] cr
        cdef vector[int64_t] cv
        self.nrows += 1
        self._load(cols, vals)
        if self.track:
            self._grow_rows(rid)
            self.cacc[rid] = 1
            self.cflag[rid] = 1
            self.ctouched.push_back(rid)
        lead = self._reduce(self.track)
        if lead < 0:
            self._clear()
            return False
        inv = self._inv(self.acc[lead])
        idx = sorted([self.touched[k] for k in range(self.touched.size()) if self.acc[self.touched[k]] != 0])
        for c in idx:
            rc.push_back(c)
            rv.push_back((self.acc[c] * inv) % self.p)
        if self.track:
            for r in sorted([self.ctouched[k] for k in range(self.ctouched.size()) if self.cacc[self.ctouched[k]] != 0]):
                cr.push_back(r)
                cv.push_back((self.cacc[r] * inv) % self.p)
        self.pivot_of_col[lead] = <int>self.prow_cols.size()
        self.prow_cols.push_back(rc)
        self.prow_vals.push_back(rv)
        self.pcomb_rows.push_back(cr)
        self.pcomb_vals.push_back(cv)
        self._rank += 1
        self._clear()
        return True

    def express(self, cols, vals):
        """Coefficients {row id: c} with sum c * row = vector, or None when outside the span."""
        cdef size_t k
        cdef int r
        if not self.track:
            raise ValueError("express needs an eliminator built with track=True")
        self._load(cols, vals)
        self._grow_rows(self.nrows)
        if self._reduce(True) >= 0:
            self._clear()
            return None
        out = {}
        for k in range(self.ctouched.size()):
            r = self.ctouched[k]
            if self.cacc[r] != 0:
                out[r] = (self.p - self.cacc[r]) % self.p
        self._clear()
        return out

    def contains(self, cols, vals):
        self._load(cols, vals)
        res = self._reduce(False) < 0
        self._clear()
        return res
