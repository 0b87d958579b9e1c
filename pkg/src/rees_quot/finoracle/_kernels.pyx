# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels.  Same signatures and results as ``_pykernels``."""

import numpy as np


def _tab(T):
    return np.ascontiguousarray(T, dtype=np.int32)


def _mask(m):
    return np.ascontiguousarray(m, dtype=np.uint8)


def assoc_violation(T):
    cdef const int[:, ::1] t = _tab(T)
    cdef Py_ssize_t n = t.shape[0], x, y, z
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[t[x, y], z] != t[x, t[y, z]]:
                    return (x, y, z)
    return None


def comm_violation(T):
    cdef const int[:, ::1] t = _tab(T)
    cdef Py_ssize_t n = t.shape[0], x, y
    for x in range(n):
        for y in range(x + 1, n):
            if t[x, y] != t[y, x]:
                return (x, y)
    return None


def distrib_violation(A, T):
    cdef const int[:, ::1] a = _tab(A)
    cdef const int[:, ::1] t = _tab(T)
    cdef Py_ssize_t n = t.shape[0], x, y, z
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[x, a[y, z]] != a[t[x, y], t[x, z]]:
                    return (x, y, z)
    return None


def prime_violation(T, mask):
    """First ``(x, y)`` outside the set with ``x*y`` inside, or None."""
    cdef const int[:, ::1] t = _tab(T)
    cdef const unsigned char[::1] m = _mask(mask)
    cdef Py_ssize_t n = t.shape[0], x, y
    for x in range(n):
        if m[x]:
            continue
        for y in range(n):
            if not m[y] and m[t[x, y]]:
                return (x, y)
    return None


def ideal_violation(A, T, mask):
    """``("add", x, y)`` or ``("mul", x, y)`` if the set is not an ideal, else None."""
    cdef const int[:, ::1] a = _tab(A)
    cdef const int[:, ::1] t = _tab(T)
    cdef const unsigned char[::1] m = _mask(mask)
    cdef Py_ssize_t n = t.shape[0], x, y
    for x in range(n):
        if not m[x]:
            continue
        for y in range(n):
            if m[y] and not m[a[x, y]]:
                return ("add", x, y)
            if not m[t[x, y]]:
                return ("mul", x, y)
    return None


def zero_divisor_mask(T, int zero):
    cdef const int[:, ::1] t = _tab(T)
    cdef Py_ssize_t n = t.shape[0], x, y
    out = np.zeros(n, dtype=bool)
    cdef unsigned char[::1] o = out.view(np.uint8)
    for x in range(n):
        if x == zero:
            continue
        for y in range(n):
            if y != zero and t[x, y] == zero:
                o[x] = 1
                break
    return out


cdef class _HomSearch:
    cdef const int[:, ::1] a1
    cdef const int[:, ::1] t1
    cdef const int[:, ::1] a2
    cdef const int[:, ::1] t2
    cdef int[::1] f
    cdef unsigned char[::1] used
    cdef int[::1] trail
    cdef int ntrail
    cdef int[::1] qx
    cdef int[::1] qu
    cdef Py_ssize_t n

    def __init__(self, A1, T1, A2, T2):
        self.a1, self.t1, self.a2, self.t2 = _tab(A1), _tab(T1), _tab(A2), _tab(T2)
        self.n = self.t1.shape[0]
        self.f = np.full(self.n, -1, dtype=np.int32)
        self.used = np.zeros(self.n, dtype=np.uint8)
        self.trail = np.zeros(self.n, dtype=np.int32)
        self.ntrail = 0
        # each assignment enqueues at most 2n forced pairs
        self.qx = np.zeros(2 * self.n * self.n + 2, dtype=np.int32)
        self.qu = np.zeros(2 * self.n * self.n + 2, dtype=np.int32)

    cdef bint assign(self, int x0, int u0):
        cdef int head = 0, tail = 0, x, u, y, v
        cdef Py_ssize_t k
        self.qx[tail] = x0
        self.qu[tail] = u0
        tail += 1
        while head < tail:
            x = self.qx[head]
            u = self.qu[head]
            head += 1
            if self.f[x] == u:
                continue
            if self.f[x] != -1 or self.used[u]:
                return False
            self.f[x] = u
            self.used[u] = 1
            self.trail[self.ntrail] = x
            self.ntrail += 1
            for k in range(self.ntrail):
                y = self.trail[k]
                v = self.f[y]
                self.qx[tail] = self.a1[x, y]
                self.qu[tail] = self.a2[u, v]
                tail += 1
                self.qx[tail] = self.t1[x, y]
                self.qu[tail] = self.t2[u, v]
                tail += 1
        return True

    cdef void undo(self, int mark):
        cdef int x
        while self.ntrail > mark:
            self.ntrail -= 1
            x = self.trail[self.ntrail]
            self.used[self.f[x]] = 0
            self.f[x] = -1

    cdef bint search(self):
        cdef int x = -1, u, mark
        cdef Py_ssize_t k
        for k in range(self.n):
            if self.f[k] == -1:
                x = k
                break
        if x == -1:
            return True
        mark = self.ntrail
        for u in range(self.n):
            if self.used[u]:
                continue
            if self.assign(x, u) and self.search():
                return True
            self.undo(mark)
        return False

    def run(self, int zero1, int one1, int zero2, int one2):
        if not self.assign(zero1, zero2) or not self.assign(one1, one2):
            return None
        if self.search():
            return np.asarray(self.f).copy()
        return None


def hom_search(A1, T1, A2, T2, int zero1, int one1, int zero2, int one2):
    """A ring isomorphism as an index array, first in lexicographic search order, or None."""
    if np.shape(T1) != np.shape(T2):
        return None
    return _HomSearch(A1, T1, A2, T2).run(zero1, one1, zero2, one2)
