"""The rings R(I)_{a,b} = R[It] / (I^2 (t^2 + a t + b)).

An element ``r + i t`` is stored as the pair ``(r, i)`` with ``i`` in ``I``.
Multiplication follows from ``t^2 = -a t - b``::

    (r + i t)(s + j t) = (r s - b i j) + (r j + s i - a i j) t
"""

from __future__ import annotations

from dataclasses import dataclass

from .ringcore import AmbientError, IdealHandle, RingElement, RingHandle

__all__ = [
    "BadIdeal",
    "FactorizationMismatch",
    "MissingRoots",
    "RabRing",
    "RabElement",
    "RootData",
    "make_rab",
    "idealization",
    "duplication",
    "verify_factorization",
    "ev_alpha",
]


class BadIdeal(ValueError):
    """I is zero or the whole ring."""


class FactorizationMismatch(ValueError):
    pass


class MissingRoots(ValueError):
    pass


@dataclass(frozen=True)
class RootData:
    """A factorization ``t^2 + a t + b = (t - alpha/gamma)(t - beta/gamma)``.

    With ``modulus`` set, the identities hold in ``R`` up to ``p_corr``, which
    lies in the prime ``modulus``:  ``gamma*a = -(alpha + beta)`` and
    ``gamma^2*b = alpha*beta + p_corr``.  Without a modulus the factorization
    is in ``R[t]`` (``gamma = 1``, ``p_corr = 0``).
    """

    alpha: RingElement
    beta: RingElement
    gamma: RingElement
    p_corr: RingElement
    modulus: IdealHandle | None = None

    @classmethod
    def make(cls, a, b, alpha, beta=None, gamma=None, modulus=None) -> RootData:
        """Complete a root choice: ``beta`` defaults to ``-gamma*a - alpha``; ``p_corr`` is computed."""
        R = alpha.owner
        gamma = R.one() if gamma is None else R(gamma)
        beta = -gamma * a - alpha if beta is None else R(beta)
        p_corr = gamma * gamma * b - alpha * beta
        return cls(alpha, beta, gamma, p_corr, modulus)

    def shifted(self, q) -> RootData:
        """The choice ``(alpha + q, beta - q)``, with ``p_corr`` recomputed."""
        alpha, beta = self.alpha + q, self.beta - q
        p_corr = self.p_corr + self.alpha * self.beta - alpha * beta
        return RootData(alpha, beta, self.gamma, p_corr, self.modulus)

    @property
    def is_global(self) -> bool:
        return self.modulus is None


class RabRing:
    """The ring ``R(I)_{a,b}``."""

    def __init__(self, base: RingHandle, ideal: IdealHandle, a, b, *, check: bool = True):
        if ideal.owner != base:
            raise AmbientError("ideal does not belong to the base ring")
        if ideal.is_zero().is_yes:
            raise BadIdeal("I must be nonzero")
        if not ideal.is_proper:
            raise BadIdeal("I must be a proper ideal")
        self.base = base
        self.ideal = ideal
        self.a = base(a)
        self.b = base(b)
        self.check = check
        self.roots: RootData | None = None

    def __repr__(self):
        return f"{self.base}({self.ideal})_{{{self.a},{self.b}}}"

    def __eq__(self, other):
        return (
            isinstance(other, RabRing)
            and self.base == other.base
            and self.ideal == other.ideal
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.base, self.ideal.gens, self.a, self.b))

    def __call__(self, r=0, i=0, check: bool | None = None) -> RabElement:
        return self.element(r, i, check)

    def element(self, r=0, i=0, check: bool | None = None) -> RabElement:
        r, i = self.base(r), self.base(i)
        if (self.check if check is None else check) and i not in self.ideal:
            raise ValueError(f"{i} is not in {self.ideal}")
        return RabElement(self, r, i)

    def zero(self) -> RabElement:
        return RabElement(self, self.base.zero(), self.base.zero())

    def one(self) -> RabElement:
        return RabElement(self, self.base.one(), self.base.zero())

    def t_multiple(self, i) -> RabElement:
        return self.element(0, i)

    def attach_roots(self, roots: RootData) -> RabRing:
        verify_factorization(self, roots)
        return self

    @property
    def size(self):
        n = self.base.size
        if n is None:
            return None
        return n * self.ideal.size


class RabElement:
    __slots__ = ("owner", "r", "i")

    def __init__(self, owner: RabRing, r: RingElement, i: RingElement):
        self.owner = owner
        self.r = r
        self.i = i

    def _other(self, other) -> RabElement:
        if isinstance(other, RabElement):
            if other.owner is not self.owner and other.owner != self.owner:
                raise AmbientError("elements of different rings")
            return other
        if isinstance(other, (int, RingElement)):
            return RabElement(self.owner, self.owner.base(other), self.owner.base.zero())
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RabElement(self.owner, self.r + other.r, self.i + other.i)

    __radd__ = __add__

    def __neg__(self):
        return RabElement(self.owner, -self.r, -self.i)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RabElement(self.owner, self.r - other.r, self.i - other.i)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        R = self.owner
        ij = self.i * other.i
        r = self.r * other.r - R.b * ij
        i = self.r * other.i + other.r * self.i - R.a * ij
        if R.check and i not in R.ideal:
            raise AssertionError(f"product left the ideal: {i}")
        return RabElement(R, r, i)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.owner.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, RingElement)):
            other = self._other(other)
        if not isinstance(other, RabElement):
            return NotImplemented
        return self.r == other.r and self.i == other.i

    def __hash__(self):
        return hash((self.r, self.i))

    def is_zero(self) -> bool:
        return self.r.is_zero() and self.i.is_zero()

    def __str__(self):
        return f"{self.r} + ({self.i})t"

    def __repr__(self):
        return f"<{self}>"


def make_rab(base: RingHandle, ideal: IdealHandle, a, b, **kw) -> RabRing:
    return RabRing(base, ideal, a, b, **kw)


def idealization(base: RingHandle, ideal: IdealHandle, **kw) -> RabRing:
    """``R ⋉ I`` as the member with ``t^2 = 0``."""
    rr = RabRing(base, ideal, 0, 0, **kw)
    rr.roots = RootData.make(rr.a, rr.b, base.zero())
    return rr


def duplication(base: RingHandle, ideal: IdealHandle, **kw) -> RabRing:
    """``R ⋈ I`` as the member with ``t^2 = t``; ``(r, i)`` corresponds to ``(r, r + i)``."""
    rr = RabRing(base, ideal, -1, 0, **kw)
    rr.roots = RootData.make(rr.a, rr.b, base.one())
    return rr


def verify_factorization(rr: RabRing, roots: RootData) -> bool:
    """Check the identities carried by ``roots``; attach global roots to ``rr``.

    Raises FactorizationMismatch naming the identity that fails.
    """
    R = rr.base
    alpha, beta, gamma = R(roots.alpha), R(roots.beta), R(roots.gamma)
    if gamma * rr.a != -(alpha + beta):
        raise FactorizationMismatch(f"gamma*a = {gamma * rr.a} but -(alpha+beta) = {-(alpha + beta)}")
    corr = gamma * gamma * rr.b - alpha * beta
    if corr != roots.p_corr:
        raise FactorizationMismatch(f"p_corr is {roots.p_corr} but gamma^2*b - alpha*beta = {corr}")
    if roots.modulus is None:
        if not corr.is_zero():
            raise FactorizationMismatch(f"gamma^2*b - alpha*beta = {corr} is not zero")
        if gamma != R.one():
            raise FactorizationMismatch("global roots must have gamma = 1")
        rr.roots = roots
    else:
        if corr not in roots.modulus:
            raise FactorizationMismatch(f"p_corr = {corr} is not in {roots.modulus}")
        if gamma in roots.modulus:
            raise FactorizationMismatch(f"gamma = {gamma} lies in {roots.modulus}")
    return True


def ev_alpha(rr: RabRing, x: RabElement) -> RingElement:
    """The retraction ``s + j t -> s + j*alpha`` onto the base ring."""
    if rr.roots is None or not rr.roots.is_global:
        raise MissingRoots("no factorization in R[t] attached")
    return x.r + x.i * rr.roots.alpha


def ev_beta(rr: RabRing, x: RabElement) -> RingElement:
    if rr.roots is None or not rr.roots.is_global:
        raise MissingRoots("no factorization in R[t] attached")
    return x.r + x.i * rr.roots.beta
