"""Computable base rings, canonical elements and the ideal calculus.

Two backends are supported: ``ZModRing(n)`` and ``QuotientRing``, a
polynomial ring over QQ or GF(p) modulo an ideal ``J`` (stored as its
reduced Groebner basis).  Every element is kept in canonical form, so
equality of elements is equality of representatives.

Ideals are finitely generated and stored by canonical generators.  On the
polynomial backend all ideal operations are carried out on the lift to the
ambient polynomial ring, where ``J`` is added back in.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from . import expr as _expr
from .polyalg import (
    QQ,
    AmbientError,
    Field,
    MonomialOrder,
    Poly,
    PolyRing,
    degrevlex,
    divide,
    eliminate,
    normal_form,
    reduced_groebner,
    standard_monomials,
)

__all__ = [
    "AmbientError",
    "BadModulus",
    "ImproperIdeal",
    "Truth",
    "TriState",
    "Unknown",
    "RingHandle",
    "ZModRing",
    "QuotientRing",
    "RingElement",
    "IdealHandle",
    "define_zmod",
    "define_quotient_ring",
    "radical_membership",
    "annihilator",
]


class ImproperIdeal(ValueError):
    """The defining ideal contains 1."""


class BadModulus(ValueError):
    pass


class Truth(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TriState:
    """A yes/no/unknown answer.

    ``witness`` certifies a yes or no answer; ``provenance`` records whether
    the answer was computed or asserted by the user.
    """

    value: Truth
    witness: object = None
    provenance: str = "computed"
    reason: str = ""

    @classmethod
    def yes(cls, witness=None, provenance="computed", reason=""):
        return cls(Truth.YES, witness, provenance, reason)

    @classmethod
    def no(cls, witness=None, provenance="computed", reason=""):
        return cls(Truth.NO, witness, provenance, reason)

    @classmethod
    def unknown(cls, reason=""):
        return cls(Truth.UNKNOWN, None, "unknown", reason)

    @classmethod
    def of(cls, flag: bool, witness=None, reason=""):
        return cls(Truth.YES if flag else Truth.NO, witness, "computed", reason)

    @property
    def is_yes(self) -> bool:
        return self.value is Truth.YES

    @property
    def is_no(self) -> bool:
        return self.value is Truth.NO

    @property
    def is_unknown(self) -> bool:
        return self.value is Truth.UNKNOWN

    def __bool__(self):
        raise TypeError("TriState has no truth value; use .is_yes / .is_no")

    def __str__(self):
        return self.value.value


@dataclass(frozen=True)
class Unknown:
    """A computation the backend cannot decide."""

    reason: str = ""


# ---------------------------------------------------------------------------
# Rings and elements


class RingHandle:
    """Common surface of the two base-ring backends."""

    characteristic: int

    def __init__(self, asserted: dict | None = None, minimal_primes=None):
        self._asserted = dict(asserted or {})
        self._asserted_minprimes = minimal_primes

    # elements
    def __call__(self, value) -> RingElement:
        if isinstance(value, RingElement):
            if value.owner != self:
                raise AmbientError(f"{value!s} is not an element of {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, _expr.Num | _expr.Var | _expr.Neg | _expr.BinOp | _expr.Pow):
            return self.from_expr(value)
        return self._make(value)

    def zero(self) -> RingElement:
        return self._make(0)

    def one(self) -> RingElement:
        return self._make(1)

    def parse(self, text: str) -> RingElement:
        return self.from_expr(_expr.parse(text))

    def from_expr(self, e) -> RingElement:
        return _expr.evaluate(e, self._make, self.var, self.inverse)

    def var(self, name: str) -> RingElement:
        raise AmbientError(f"{self} has no variable {name!r}")

    def inverse(self, x: RingElement) -> RingElement:
        raise NotImplementedError

    def ideal(self, gens: Iterable = (), *, prime: bool = False) -> IdealHandle:
        return IdealHandle(self, [self(g) for g in gens], asserted_prime=prime)

    def zero_ideal(self) -> IdealHandle:
        return self.ideal([])

    def unit_ideal(self) -> IdealHandle:
        return self.ideal([1])

    # overridden by backends
    def _make(self, value) -> RingElement:
        raise NotImplementedError

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return self is other or (isinstance(other, RingHandle) and self._key() == other._key())

    def __hash__(self):
        return hash(self._key())

    @property
    def size(self):
        """Number of elements, or None when infinite."""
        return None

    def elements(self):
        raise NotImplementedError(f"{self} is not enumerable")

    def flags(self) -> dict[str, TriState]:
        raise NotImplementedError

    def minimal_primes(self):
        raise NotImplementedError

    def _flag_or_asserted(self, name: str, computed: TriState | None) -> TriState:
        if computed is not None:
            return computed
        if name in self._asserted:
            v = self._asserted[name]
            return TriState(Truth.YES if v else Truth.NO, None, "asserted", "user assertion")
        return TriState.unknown(f"{name} is not decidable for this presentation")


class RingElement:
    """Canonical representative of an element of a base ring."""

    __slots__ = ("owner", "value")

    def __init__(self, owner: RingHandle, value):
        self.owner = owner
        self.value = value

    def _other(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if other.owner is not self.owner and other.owner != self.owner:
                raise AmbientError(f"{other.owner} vs {self.owner}")
            return other
        if isinstance(other, int):
            return self.owner._make(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.owner._add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.owner._add(self, self.owner._neg(other))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.owner._add(other, self.owner._neg(self))

    def __neg__(self):
        return self.owner._neg(self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.owner._mul(self, other)

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
        if isinstance(other, int):
            other = self.owner._make(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.owner == other.owner and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def is_zero(self) -> bool:
        return not self.value

    def __str__(self):
        return self.owner.format(self)

    def __repr__(self):
        return f"<{self} in {self.owner}>"


def _factorize(n: int) -> dict[int, int]:
    out, f = {}, 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class ZModRing(RingHandle):
    """The ring of integers modulo ``n``."""

    def __init__(self, n: int):
        if n < 2:
            raise BadModulus(f"modulus must be >= 2, got {n}")
        super().__init__()
        self.n = n
        self.characteristic = n
        self.prime_factors = _factorize(n)

    def _key(self):
        return ("zmod", self.n)

    def _make(self, value) -> RingElement:
        if isinstance(value, Poly):
            if not value.is_constant():
                raise AmbientError("polynomial value in Z/n")
            value = int(value.constant_coeff())
        return RingElement(self, int(value) % self.n)

    def _add(self, a, b):
        return RingElement(self, (a.value + b.value) % self.n)

    def _neg(self, a):
        return RingElement(self, -a.value % self.n)

    def _mul(self, a, b):
        return RingElement(self, a.value * b.value % self.n)

    def inverse(self, x):
        x = self(x)
        if gcd(x.value, self.n) != 1:
            raise ZeroDivisionError(f"{x} is not a unit mod {self.n}")
        return RingElement(self, pow(x.value, -1, self.n))

    def format(self, x) -> str:
        return str(x.value)

    def __repr__(self):
        return f"Z/{self.n}"

    @property
    def size(self):
        return self.n

    def elements(self):
        return [RingElement(self, k) for k in range(self.n)]

    def flags(self) -> dict[str, TriState]:
        n = self.n
        exps = self.prime_factors
        if all(e == 1 for e in exps.values()):
            reduced = TriState.yes(reason=f"{n} is squarefree")
        else:
            w = 1
            for p, e in exps.items():
                w *= p ** ((e + 1) // 2)
            reduced = TriState.no(self._make(w), reason=f"({w})^2 = 0")
        if len(exps) == 1 and n in exps:
            domain = TriState.yes(reason=f"{n} is prime")
        else:
            p = min(exps)
            domain = TriState.no((self._make(p), self._make(n // p)), reason=f"{p}*{n // p} = 0")
        return {"reduced": reduced, "domain": domain}

    def minimal_primes(self):
        return [self.ideal([p]) for p in sorted(self.prime_factors)]


class QuotientRing(RingHandle):
    """``field[vars] / J`` with ``J`` held as a reduced Groebner basis."""

    def __init__(
        self,
        field: Field,
        variables: Sequence[str],
        order: MonomialOrder = degrevlex,
        relations: Iterable = (),
        asserted: dict | None = None,
        minimal_primes=None,
    ):
        super().__init__(asserted)
        self.field = field
        self.characteristic = field.p
        self.poly_ring = PolyRing(field, variables)
        self.order = order
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = _expr.parse(r)
            if not isinstance(r, Poly):
                r = _expr.evaluate(r, self.poly_ring.const, self.poly_ring.var, self._const_inverse)
            rels.append(r)
        self.J = reduced_groebner(rels, order)
        if self.J and self.J[0].is_constant():
            raise ImproperIdeal(f"1 lies in the defining ideal of {self}")
        self.staircase = standard_monomials(self.J, order, self.poly_ring.nvars)
        self.finite_dim = self.staircase is not None
        self._minprime_gens = minimal_primes

    def _const_inverse(self, c: Poly):
        if not c.is_constant() or not c:
            raise ZeroDivisionError(f"cannot invert {c}")
        return self.poly_ring.const(self.field.inv(c.constant_coeff()))

    def _key(self):
        return ("quot", self.field, self.poly_ring.vars, repr(self.order), tuple(self.J))

    @property
    def vars(self):
        return self.poly_ring.vars

    def _make(self, value) -> RingElement:
        if isinstance(value, Poly):
            value = value.to_ring(self.poly_ring)
        else:
            value = self.poly_ring.const(value)
        return RingElement(self, normal_form(value, self.J, self.order))

    def var(self, name):
        return RingElement(self, normal_form(self.poly_ring.var(name), self.J, self.order))

    def lift(self, x) -> Poly:
        return self(x).value

    def _add(self, a, b):
        # sums of normal forms are normal forms
        return RingElement(self, a.value + b.value)

    def _neg(self, a):
        return RingElement(self, -a.value)

    def _mul(self, a, b):
        return RingElement(self, normal_form(a.value * b.value, self.J, self.order))

    def inverse(self, x):
        x = self(x)
        if x.value.is_constant() and x.value:
            return self._make(self.field.inv(x.value.constant_coeff()))
        raise ZeroDivisionError(f"{x} is not a unit constant")

    def format(self, x) -> str:
        return x.value.format(self.order)

    def __repr__(self):
        base = f"{self.field!r}[{','.join(self.vars)}]"
        if not self.J:
            return base
        return f"{base}/({', '.join(g.format(self.order) for g in self.J)})"

    @property
    def size(self):
        if self.field.is_finite and self.finite_dim:
            return self.field.p ** len(self.staircase)
        return None

    def elements(self):
        if self.size is None:
            raise ValueError(f"{self} is infinite")
        p = self.field.p
        out = []
        for coeffs in itertools.product(range(p), repeat=len(self.staircase)):
            terms = {m: c for m, c in zip(self.staircase, coeffs) if c}
            out.append(RingElement(self, Poly(self.poly_ring, terms)))
        return out

    # structural flags ----------------------------------------------------

    def _is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.J)

    def _is_linear(self) -> bool:
        return all(g.degree() <= 1 for g in self.J)

    def flags(self) -> dict[str, TriState]:
        reduced = domain = None
        if self._is_linear():
            why = "zero ideal" if not self.J else "linear relations"
            reduced = TriState.yes(reason=f"polynomial ring ({why})")
            domain = TriState.yes(reason=f"polynomial ring ({why})")
        elif self._is_monomial():
            reduced = TriState.yes(reason="squarefree monomial relations")
            for g in self.J:
                (m,) = g.terms
                if any(e > 1 for e in m):
                    rad = self.poly_ring.monomial(tuple(1 if e else 0 for e in m))
                    reduced = TriState.no(self._make(rad), reason=f"{rad} is nilpotent")
                    break
            domain = TriState.yes(reason="relations are variables")
            for g in self.J:
                (m,) = g.terms
                if sum(m) > 1:
                    k = next(i for i, e in enumerate(m) if e)
                    x = [0] * len(m)
                    x[k] = 1
                    y = list(m)
                    y[k] -= 1
                    pr = self.poly_ring
                    pair = (self._make(pr.monomial(x)), self._make(pr.monomial(y)))
                    domain = TriState.no(pair, reason=f"{pair[0]}*{pair[1]} = 0")
                    break
        return {
            "reduced": self._flag_or_asserted("reduced", reduced),
            "domain": self._flag_or_asserted("domain", domain),
        }

    def minimal_primes(self):
        if self._minprime_gens is not None:
            return [self.ideal(gs, prime=True) for gs in self._minprime_gens]
        if not self._is_monomial():
            return Unknown("minimal primes are only computed for monomial relations")
        supports = [g.support_vars() for g in self.J]
        nv = self.poly_ring.nvars
        covers: list[set] = []
        for size in range(nv + 1):
            for cand in itertools.combinations(range(nv), size):
                s = set(cand)
                if all(s & sup for sup in supports) and not any(c <= s for c in covers):
                    covers.append(s)
        return [self.ideal([self.var(self.vars[k]) for k in sorted(c)]) for c in covers]


def define_zmod(n: int) -> ZModRing:
    return ZModRing(n)


def define_quotient_ring(field, variables, order=degrevlex, relations=(), **kw) -> QuotientRing:
    if isinstance(order, str):
        from .polyalg import order_by_name

        order = order_by_name(order)
    return QuotientRing(field, variables, order, relations, **kw)


# ---------------------------------------------------------------------------
# Ideals


class IdealHandle:
    """A finitely generated ideal with canonical generators."""

    def __init__(self, owner: RingHandle, gens: Sequence[RingElement], asserted_prime: bool = False):
        self.owner = owner
        self.asserted_prime = asserted_prime
        if isinstance(owner, ZModRing):
            d = owner.n
            for g in gens:
                d = gcd(d, g.value)
            self.generator = d
            self.lifted = None
            self.gens = () if d == owner.n else (owner._make(d),)
        else:
            lifts = [g.value for g in gens if g.value]
            self.lifted = reduced_groebner(list(owner.J) + lifts, owner.order)
            canon = []
            for g in self.lifted:
                r = normal_form(g, owner.J, owner.order)
                if r:
                    canon.append(RingElement(owner, r))
            self.gens = tuple(canon)

    # membership -----------------------------------------------------------

    def _check(self, other: IdealHandle):
        if other.owner != self.owner:
            raise AmbientError(f"{other.owner} vs {self.owner}")

    def __contains__(self, x) -> bool:
        x = self.owner(x)
        if self.lifted is None:
            return x.value % self.generator == 0
        if not self.lifted:
            return not x.value
        return not normal_form(x.value, self.lifted, self.owner.order)

    def membership(self, x) -> TriState:
        return TriState.of(x in self)

    def reduce(self, x) -> RingElement:
        """Canonical representative of ``x`` modulo this ideal (as an element of the base ring)."""
        x = self.owner(x)
        if self.lifted is None:
            return self.owner._make(x.value % self.generator)
        return self.owner._make(normal_form(x.value, self.lifted, self.owner.order))

    def contains(self, other: IdealHandle) -> TriState:
        self._check(other)
        for g in other.gens:
            if g not in self:
                return TriState.no(g, reason=f"{g} is not in the ideal")
        return TriState.yes()

    def __le__(self, other: IdealHandle) -> bool:
        return other.contains(self).is_yes

    def __ge__(self, other: IdealHandle) -> bool:
        return self.contains(other).is_yes

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.owner == other.owner and self >= other and other >= self

    def __hash__(self):
        return hash((self.owner, self.gens))

    def is_zero(self) -> TriState:
        if self.gens:
            return TriState.no(self.gens[0])
        return TriState.yes()

    @property
    def size(self):
        """Number of elements, or None for an infinite ideal."""
        R = self.owner
        if isinstance(R, ZModRing):
            return R.n // self.generator
        if R.size is None:
            return None
        quotient = standard_monomials(self.lifted, R.order, R.poly_ring.nvars)
        return R.field.p ** (len(R.staircase) - len(quotient))

    def is_unit(self) -> bool:
        return self.owner.one() in self

    @property
    def is_proper(self) -> bool:
        return not self.is_unit()

    # operations -------------------------------------------------------------

    def __add__(self, other: IdealHandle) -> IdealHandle:
        self._check(other)
        return IdealHandle(self.owner, self.gens + other.gens)

    def __mul__(self, other):
        if isinstance(other, RingElement | int):
            x = self.owner(other)
            return IdealHandle(self.owner, [g * x for g in self.gens])
        self._check(other)
        return IdealHandle(self.owner, [g * h for g in self.gens for h in other.gens])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IdealHandle:
        out = self.owner.unit_ideal()
        for _ in range(k):
            out = out * self
        return out

    def __and__(self, other: IdealHandle) -> IdealHandle:
        return self.intersect(other)

    def intersect(self, other: IdealHandle) -> IdealHandle:
        self._check(other)
        R = self.owner
        if isinstance(R, ZModRing):
            a, b = self.generator, other.generator
            return IdealHandle(R, [R._make(a * b // gcd(a, b))])
        return IdealHandle(R, [RingElement(R, g) for g in _lifted_intersection(R, self.lifted, other.lifted)])

    def colon(self, other) -> IdealHandle:
        """``(self : other)`` for an element or an ideal."""
        R = self.owner
        if isinstance(other, IdealHandle):
            self._check(other)
            out = R.unit_ideal()
            for k in other.gens:
                out = out & self.colon(k)
            return out
        f = R(other)
        if isinstance(R, ZModRing):
            d = self.generator
            return IdealHandle(R, [R._make(d // gcd(d, f.value))])
        if f in self:
            return R.unit_ideal()
        fl = f.value
        inter = _lifted_intersection(R, self.lifted, reduced_groebner([fl], R.order))
        quots = []
        for g in inter:
            (q,), r = divide(g, [fl], R.order)
            assert not r, "intersection with (f) must be divisible by f"
            quots.append(R._make(q))
        return IdealHandle(R, quots)

    # primality --------------------------------------------------------------

    def is_prime(self) -> TriState:
        R = self.owner
        if not self.is_proper:
            return TriState.no(reason="unit ideal")
        if isinstance(R, ZModRing):
            d = self.generator
            if len(_factorize(d)) == 1 and _factorize(d).get(d) == 1:
                return TriState.yes(reason=f"{d} is prime")
            p = min(_factorize(d))
            return TriState.no((R._make(p), R._make(d // p)), reason=f"{p}*{d // p} lies in the ideal")
        if all(g.degree() <= 1 for g in self.lifted):
            return TriState.yes(reason="linear ideal: quotient is a polynomial ring")
        if all(g.is_monomial() for g in self.lifted):
            for g in self.lifted:
                (m,) = g.terms
                if sum(m) > 1:
                    k = next(i for i, e in enumerate(m) if e)
                    x = [0] * len(m)
                    x[k] = 1
                    y = list(m)
                    y[k] -= 1
                    pr = R.poly_ring
                    return TriState.no((R._make(pr.monomial(x)), R._make(pr.monomial(y))))
        if self.asserted_prime:
            return TriState.yes(provenance="asserted", reason="user assertion")
        return TriState.unknown("primality not decidable for this ideal")

    def residue_field(self):
        """Describe ``R/self`` when it is decided to be a field or a polynomial ring.

        Returns ``("finite", p)`` for a prime field, ``("rational", 0)`` for QQ,
        ``("polynomial", free_vars)`` when the quotient is a polynomial ring in
        more than zero variables, or None otherwise.
        """
        R = self.owner
        if isinstance(R, ZModRing):
            if self.is_prime().is_yes:
                return ("finite", self.generator)
            return None
        if not self.is_proper or not all(g.degree() <= 1 for g in self.lifted):
            return None
        pivots = set()
        for g in self.lifted:
            pivots |= {k for k, e in enumerate(g.lm(R.order)) if e}
        free = [v for k, v in enumerate(R.vars) if k not in pivots]
        if free:
            return ("polynomial", tuple(free))
        return ("finite", R.field.p) if R.field.p else ("rational", 0)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.gens) if self.gens else "0"
        return f"({gens})"

    __str__ = __repr__


def _lifted_intersection(R: QuotientRing, A: list[Poly], B: list[Poly]) -> list[Poly]:
    """Generators of ``A ∩ B`` in the ambient polynomial ring (tag-variable elimination)."""
    if not A or not B:
        return []
    tag = "_u"
    while tag in R.vars:
        tag += "_"
    big = R.poly_ring.extend([tag])
    u = big.var(tag)
    gens = [u * a.to_ring(big) for a in A] + [(1 - u) * b.to_ring(big) for b in B]
    return [_restrict(g, R.poly_ring) for g in eliminate(gens, [tag], R.order)]


def _restrict(g: Poly, ring: PolyRing) -> Poly:
    """Drop the leading variables of ``g.ring`` that are absent from ``ring`` (they must not occur)."""
    shift = g.ring.nvars - ring.nvars
    out = {}
    for m, c in g.terms.items():
        if any(m[:shift]):
            raise AmbientError("eliminated variable survived")
        out[m[shift:]] = c
    return Poly(ring, out)


# ---------------------------------------------------------------------------
# Derived operations


def annihilator(x) -> IdealHandle:
    """``Ann(x) = (0 : x)`` for an element, or ``(0 : I)`` for an ideal."""
    if isinstance(x, IdealHandle):
        return x.owner.zero_ideal().colon(x)
    return x.owner.zero_ideal().colon(x)


def radical_membership(f, ideal: IdealHandle) -> TriState:
    """Whether some power of ``f`` lies in ``ideal``."""
    R = ideal.owner
    f = R(f)
    if isinstance(R, ZModRing):
        x = f
        for k in range(1, R.n.bit_length() + 2):
            if x in ideal:
                return TriState.yes(k, reason=f"power {k} lies in the ideal")
            x = x * f
        return TriState.no(reason="no power lies in the ideal")
    tag = "_y"
    while tag in R.vars:
        tag += "_"
    big = R.poly_ring.extend([tag])
    y = big.var(tag)
    gens = [g.to_ring(big) for g in ideal.lifted] + [1 - y * f.value.to_ring(big)]
    G = reduced_groebner(gens, degrevlex)
    if G and G[0].is_constant():
        x = f
        for k in range(1, 65):
            if x in ideal:
                return TriState.yes(k, reason=f"power {k} lies in the ideal")
            x = x * f
        return TriState.yes(reason="1 lies in the Rabinowitsch ideal")
    return TriState.no(reason="1 does not lie in the Rabinowitsch ideal")
