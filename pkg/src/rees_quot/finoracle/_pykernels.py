"""numpy versions of the table kernels, used when the extension is not built."""

from __future__ import annotations

import numpy as np


def _first(bad: np.ndarray):
    idx = np.argwhere(bad)
    return None if len(idx) == 0 else tuple(int(v) for v in idx[0])


def assoc_violation(T):
    T = np.asarray(T)
    for x in range(len(T)):
        # rows: y, columns: z
        left = T[T[x, :], :]
        right = T[x, T]
        hit = _first(left != right)
        if hit is not None:
            return (x, *hit)
    return None


def comm_violation(T):
    T = np.asarray(T)
    return _first(np.triu(T != T.T, 1))


def distrib_violation(A, T):
    A, T = np.asarray(A), np.asarray(T)
    for x in range(len(T)):
        left = T[x, A]
        right = A[T[x, :][:, None], T[x, :][None, :]]
        hit = _first(left != right)
        if hit is not None:
            return (x, *hit)
    return None


def prime_violation(T, mask):
    T, mask = np.asarray(T), np.asarray(mask, dtype=bool)
    outside = ~mask
    bad = outside[:, None] & outside[None, :] & mask[T]
    return _first(bad)


def ideal_violation(A, T, mask):
    A, T, mask = np.asarray(A), np.asarray(T), np.asarray(mask, dtype=bool)
    for x in np.flatnonzero(mask):
        y = _first((mask & ~mask[A[x]])[:, None])
        z = _first((~mask[T[x]])[:, None])
        # report in the same order as the compiled loop
        if y is not None and (z is None or y[0] <= z[0]):
            return ("add", int(x), y[0])
        if z is not None:
            return ("mul", int(x), z[0])
    return None


def zero_divisor_mask(T, zero):
    T = np.asarray(T)
    hit = T == zero
    hit[zero, :] = False
    hit[:, zero] = False
    return hit.any(axis=1)


def hom_search(A1, T1, A2, T2, zero1, one1, zero2, one2):
    A1, T1, A2, T2 = (np.asarray(m).tolist() for m in (A1, T1, A2, T2))
    n = len(T1)
    if n != len(T2):
        return None
    f = [-1] * n
    used = [False] * n
    trail: list[int] = []

    def assign(x0, u0):
        queue = [(x0, u0)]
        while queue:
            x, u = queue.pop(0)
            if f[x] == u:
                continue
            if f[x] != -1 or used[u]:
                return False
            f[x] = u
            used[u] = True
            trail.append(x)
            for y in trail:
                v = f[y]
                queue.append((A1[x][y], A2[u][v]))
                queue.append((T1[x][y], T2[u][v]))
        return True

    def undo(mark):
        while len(trail) > mark:
            x = trail.pop()
            used[f[x]] = False
            f[x] = -1

    def search():
        try:
            x = f.index(-1)
        except ValueError:
            return True
        mark = len(trail)
        for u in range(n):
            if used[u]:
                continue
            if assign(x, u) and search():
                return True
            undo(mark)
        return False

    if not assign(zero1, zero2) or not assign(one1, one2):
        return None
    return np.array(f, dtype=np.int32) if search() else None
