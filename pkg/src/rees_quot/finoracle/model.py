"""Finite models: every element gets an integer index and the ring operations act on index arrays.

All operations broadcast like numpy ufuncs, so full tables are just
``mul(arange[:, None], arange[None, :])``.
"""

from __future__ import annotations

import os
from functools import cached_property

import numpy as np

from ..polyalg import Poly
from ..reesfam import RabElement, RabRing
from ..ringcore import IdealHandle, QuotientRing, RingElement, RingHandle, ZModRing

__all__ = [
    "TooLarge",
    "DEFAULT_CAP",
    "TABLE_CAP",
    "FiniteModel",
    "ZModModel",
    "QuotientModel",
    "RabModel",
    "TableModel",
    "IdealModel",
    "enumerate_model",
    "default_cap",
]

DEFAULT_CAP = 10_000
TABLE_CAP = 4096


class TooLarge(ValueError):
    pass


def default_cap() -> int:
    return int(os.environ.get("REES_QUOT_CAP", DEFAULT_CAP))


class FiniteModel:
    """Index-level ring operations on ``range(size)``."""

    size: int
    zero: int
    one: int

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def decode(self, k: int):
        raise NotImplementedError

    def encode(self, x) -> int:
        raise NotImplementedError

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def elements(self) -> list:
        return [self.decode(k) for k in range(self.size)]

    def _table(self, op):
        if self.size > TABLE_CAP:
            raise TooLarge(f"{self.size} elements is too many for a full table")
        ix = self.indices
        return np.ascontiguousarray(op(ix[:, None], ix[None, :]), dtype=np.int32)

    @cached_property
    def add_table(self) -> np.ndarray:
        return self._table(self.add)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self._table(self.mul)

    @cached_property
    def squares(self) -> np.ndarray:
        ix = self.indices
        return np.asarray(self.mul(ix, ix), dtype=np.int64)

    def span(self, seeds) -> np.ndarray:
        """Mask of the additive subgroup generated by ``seeds``."""
        mask = np.zeros(self.size, dtype=bool)
        mask[self.zero] = True
        seeds = np.unique(np.asarray(seeds, dtype=np.int64))
        frontier = np.array([self.zero], dtype=np.int64)
        while len(frontier):
            new = np.unique(np.asarray(self.add(frontier[:, None], seeds[None, :])).ravel())
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return mask


class ZModModel(FiniteModel):
    def __init__(self, ring: ZModRing):
        self.ring = ring
        self.n = ring.n
        self.size = ring.n
        self.zero, self.one = 0, 1 % ring.n

    def add(self, x, y):
        return (x + y) % self.n

    def neg(self, x):
        return (-x) % self.n

    def mul(self, x, y):
        return (x * y) % self.n

    def decode(self, k):
        return self.ring(int(k))

    def encode(self, x) -> int:
        return self.ring(x).value


class QuotientModel(FiniteModel):
    """``GF(p)[vars]/J`` with coordinates on the standard monomials.

    Index order matches ``QuotientRing.elements()``: the first standard
    monomial is the most significant digit.
    """

    def __init__(self, ring: QuotientRing):
        self.ring = ring
        self.p = ring.field.p
        self.basis = list(ring.staircase)
        self.d = len(self.basis)
        self.size = self.p**self.d
        self.pos = {m: k for k, m in enumerate(self.basis)}
        self.weights = np.array([self.p ** (self.d - 1 - k) for k in range(self.d)], dtype=np.int64)
        pr = ring.poly_ring
        C = np.zeros((self.d, self.d, self.d), dtype=np.int64)
        for u, mu in enumerate(self.basis):
            for v, mv in enumerate(self.basis):
                prod = ring(pr.monomial(mu) * pr.monomial(mv)).value
                for m, c in prod.terms.items():
                    C[u, v, self.pos[m]] = int(c) % self.p
        self.structure = C
        self.zero = 0
        self.one = self.encode(ring.one())

    def digits(self, x):
        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self.weights) % self.p

    def combine(self, dig):
        return (dig % self.p) @ self.weights

    def add(self, x, y):
        return self.combine(self.digits(x) + self.digits(y))

    def neg(self, x):
        return self.combine(-self.digits(x))

    def mul(self, x, y):
        dx, dy = self.digits(x), self.digits(y)
        dx, dy = np.broadcast_arrays(dx, dy)
        outer = dx[..., :, None] * dy[..., None, :]
        return self.combine(np.tensordot(outer, self.structure, axes=([-2, -1], [0, 1])))

    def decode(self, k):
        dig = self.digits(int(k))
        terms = {m: int(c) for m, c in zip(self.basis, dig) if c}
        return RingElement(self.ring, Poly(self.ring.poly_ring, terms))

    def encode(self, x) -> int:
        x = self.ring(x)
        k = 0
        for m, c in x.value.terms.items():
            k += (int(c) % self.p) * int(self.weights[self.pos[m]])
        return k


class IdealModel:
    """The elements of an ideal, as a sorted array of base-model indices."""

    def __init__(self, base: FiniteModel, ideal: IdealHandle):
        self.base = base
        self.ideal = ideal
        seeds = [base.encode(g) for g in ideal.gens]
        if seeds:
            prods = np.asarray(base.mul(np.array(seeds)[:, None], base.indices[None, :])).ravel()
            mask = base.span(prods)
        else:
            mask = np.zeros(base.size, dtype=bool)
            mask[base.zero] = True
        self.mask = mask
        self.members = np.flatnonzero(mask)
        self.size = len(self.members)
        self.position = np.full(base.size, -1, dtype=np.int64)
        self.position[self.members] = np.arange(self.size)

    def elements(self) -> list:
        return [self.base.decode(k) for k in self.members]


class RabModel(FiniteModel):
    """Pairs ``(r, i)`` indexed as ``r * |I| + position(i)``."""

    def __init__(self, rr: RabRing, base: FiniteModel, check: bool = True):
        self.rr = rr
        self.base = base
        self.ideal = IdealModel(base, rr.ideal)
        self.m = self.ideal.size
        self.size = base.size * self.m
        self.check = check
        self.a = base.encode(rr.a)
        self.b = base.encode(rr.b)
        self.zero = self.pack(base.zero, base.zero)
        self.one = self.pack(base.one, base.zero)

    def pack(self, r, i):
        k = self.ideal.position[i]
        if self.check and np.any(k < 0):
            raise AssertionError("i-component left the ideal")
        return r * self.m + k

    def unpack(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x // self.m, self.ideal.members[x % self.m]

    def add(self, x, y):
        B = self.base
        r1, i1 = self.unpack(x)
        r2, i2 = self.unpack(y)
        return self.pack(B.add(r1, r2), B.add(i1, i2))

    def neg(self, x):
        B = self.base
        r, i = self.unpack(x)
        return self.pack(B.neg(r), B.neg(i))

    def mul(self, x, y):
        B = self.base
        r1, i1 = self.unpack(x)
        r2, i2 = self.unpack(y)
        ij = B.mul(i1, i2)
        r = B.sub(B.mul(r1, r2), B.mul(self.b, ij))
        i = B.sub(B.add(B.mul(r1, i2), B.mul(r2, i1)), B.mul(self.a, ij))
        return self.pack(r, i)

    def decode(self, k) -> RabElement:
        r, i = self.unpack(int(k))
        return RabElement(self.rr, self.base.decode(int(r)), self.base.decode(int(i)))

    def encode(self, x) -> int:
        return int(self.pack(self.base.encode(x.r), self.base.encode(x.i)))

    def zmod_components(self):
        """``(r, i)`` value arrays when the base is Z/n, else None."""
        if not isinstance(self.base, ZModModel):
            return None
        return self.unpack(self.indices)

    def base_slice(self) -> np.ndarray:
        """Indices of the elements ``(r, 0)``, in base order."""
        return self.base.indices * self.m + self.ideal.position[self.base.zero]


class TableModel(FiniteModel):
    """A ring given by tables on a subset of a parent model (used for local factors)."""

    def __init__(self, parent: FiniteModel, members, one: int):
        members = np.asarray(members, dtype=np.int64)
        self.parent = parent
        self.members = members
        self.size = len(members)
        lookup = np.full(parent.size, -1, dtype=np.int64)
        lookup[members] = np.arange(self.size)
        self.lookup = lookup
        self.zero = int(lookup[parent.zero])
        self.one = int(lookup[one])

    def _lift(self, x):
        return self.members[np.asarray(x, dtype=np.int64)]

    def _back(self, y):
        out = self.lookup[np.asarray(y, dtype=np.int64)]
        if np.any(out < 0):
            raise AssertionError("operation left the subset")
        return out

    def add(self, x, y):
        return self._back(self.parent.add(self._lift(x), self._lift(y)))

    def neg(self, x):
        return self._back(self.parent.neg(self._lift(x)))

    def mul(self, x, y):
        return self._back(self.parent.mul(self._lift(x), self._lift(y)))

    def decode(self, k):
        return self.parent.decode(int(self.members[k]))

    def encode(self, x) -> int:
        return int(self.lookup[self.parent.encode(x)])


def _base_model(R: RingHandle, cap: int) -> FiniteModel:
    size = R.size
    if size is None:
        raise TooLarge(f"{R} is infinite")
    if size > cap:
        raise TooLarge(f"{R} has {size} elements, cap is {cap}")
    if isinstance(R, ZModRing):
        return ZModModel(R)
    return QuotientModel(R)


def enumerate_model(obj, cap: int | None = None, check: bool = True):
    """Finite model of a base ring, an ideal (``IdealModel``) or an ``R(I)_{a,b}``."""
    cap = default_cap() if cap is None else cap
    if isinstance(obj, RabRing):
        base = _base_model(obj.base, cap)
        size = obj.size
        if size is None or size > cap:
            raise TooLarge(f"{obj} has {size} elements, cap is {cap}")
        return RabModel(obj, base, check)
    if isinstance(obj, IdealHandle):
        return IdealModel(_base_model(obj.owner, cap), obj)
    if isinstance(obj, RingHandle):
        return _base_model(obj, cap)
    raise TypeError(f"cannot enumerate {obj!r}")
