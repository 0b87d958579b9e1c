"""Exact multivariate polynomials over QQ and GF(p), with Groebner bases.

Polynomials are immutable maps from exponent tuples to nonzero
coefficients.  Orders are separate objects, so the same polynomial can be
reduced against bases computed for different orders.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class AmbientError(ValueError):
    """Operands live in different rings."""


class Field:
    """Coefficient field: ``Field(0)`` is QQ, ``Field(p)`` is GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p < 0 or p == 1:
            raise ValueError(f"bad characteristic {p}")
        if p and not _is_prime(p):
            raise ValueError(f"GF({p}): {p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def __call__(self, c) -> int | Fraction:
        if self.p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    def sqrt(self, c):
        """A square root of ``c`` in the field, or None."""
        if self.p:
            return sqrt_mod_prime(int(c), self.p)
        c = Fraction(c)
        if c < 0:
            return None
        n, d = _isqrt_exact(c.numerator), _isqrt_exact(c.denominator)
        if n is None or d is None:
            return None
        return Fraction(n, d)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _isqrt_exact(n: int):
    from math import isqrt

    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def sqrt_mod_prime(c: int, p: int):
    """Least square root of ``c`` modulo the prime ``p`` (Tonelli-Shanks), or None."""
    c %= p
    if c == 0 or p == 2:
        return c
    if pow(c, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, cc, t, r = s, pow(z, q, p), pow(c, q, p), pow(c, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(cc, 1 << (m - i - 1), p)
        m, cc, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


# ---------------------------------------------------------------------------
# Monomial orders


class MonomialOrder:
    """A term order given by a sort key on exponent tuples (larger key = larger)."""

    name = "order"

    def key(self, exp: tuple):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(other) is type(self) and repr(other) == repr(self)

    def __hash__(self):
        return hash(repr(self))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exp):
        return exp


class DegRevLex(MonomialOrder):
    name = "degrevlex"

    def key(self, exp):
        return (sum(exp), tuple(-e for e in reversed(exp)))


class BlockOrder(MonomialOrder):
    """Variables at ``elim`` indices dominate; ``inner`` breaks ties in each block."""

    def __init__(self, elim: Iterable[int], inner: MonomialOrder | None = None):
        self.elim = tuple(sorted(set(elim)))
        self.inner = inner or DegRevLex()

    @property
    def name(self):
        return f"block({list(self.elim)}, {self.inner!r})"

    def key(self, exp):
        first = tuple(exp[i] for i in self.elim)
        rest = tuple(e for i, e in enumerate(exp) if i not in self.elim)
        return (self.inner.key(first), self.inner.key(rest))


lex = Lex()
degrevlex = DegRevLex()


def order_by_name(name: str) -> MonomialOrder:
    try:
        return {"lex": lex, "degrevlex": degrevlex, "grevlex": degrevlex}[name]
    except KeyError:
        raise ValueError(f"unknown monomial order {name!r}") from None


# ---------------------------------------------------------------------------
# Polynomial rings and polynomials


class PolyRing:
    """The ambient ``field[vars]``."""

    __slots__ = ("field", "vars", "_index")

    def __init__(self, field: Field, variables: Sequence[str]):
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        self.field = field
        self.vars = tuple(variables)
        self._index = {v: k for k, v in enumerate(self.vars)}

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise AmbientError(f"{var!r} is not a variable of {self}") from None

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c) -> Poly:
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Poly:
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return Poly(self, {tuple(exp): self.field(1)})

    def gens(self) -> list[Poly]:
        return [self.var(v) for v in self.vars]

    def monomial(self, exp, coeff=1) -> Poly:
        coeff = self.field(coeff)
        return Poly(self, {tuple(exp): coeff} if coeff else {})

    def extend(self, new_vars: Sequence[str]) -> PolyRing:
        """Ring with ``new_vars`` prepended to the variable list."""
        return PolyRing(self.field, tuple(new_vars) + self.vars)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.field == self.field and other.vars == self.vars

    def __hash__(self):
        return hash((self.field, self.vars))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.vars)}]"


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # construction helpers -------------------------------------------------

    def _new(self, terms):
        return Poly(self.ring, terms)

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise AmbientError(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(_add_terms(self.terms, other.terms, 1, self.ring.field.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return self._new({m: p - c for m, c in self.terms.items()})
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(_add_terms(self.terms, other.terms, -1, self.ring.field.p))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = out.get(m, 0) + c1 * c2
                if p:
                    c %= p
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Poly:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p:
            return self._new({m: v * c % p for m, v in self.terms.items()})
        return self._new({m: v * c for m, v in self.terms.items()})

    def mul_term(self, exp, c) -> Poly:
        p = self.ring.field.p
        if p:
            return self._new({tuple(a + b for a, b in zip(m, exp)): v * c % p for m, v in self.terms.items()})
        return self._new({tuple(a + b for a, b in zip(m, exp)): v * c for m, v in self.terms.items()})

    # comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # inspection ----------------------------------------------------------

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def support_vars(self) -> set[int]:
        return {k for m in self.terms for k, e in enumerate(m) if e}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def lm(self, order: MonomialOrder) -> tuple:
        return max(self.terms, key=order.key)

    def lc(self, order: MonomialOrder):
        return self.terms[self.lm(order)]

    def monic(self, order: MonomialOrder) -> Poly:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc(order)))

    def sorted_terms(self, order: MonomialOrder) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def to_ring(self, ring: PolyRing) -> Poly:
        """Re-embed into ``ring`` by variable name; variables absent from ``ring`` must not occur."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise AmbientError(f"{self.ring.field} vs {ring.field}")
        pos = []
        for k, v in enumerate(self.ring.vars):
            pos.append(ring._index.get(v))
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for k, a in enumerate(m):
                if a:
                    if pos[k] is None:
                        raise AmbientError(f"{self.ring.vars[k]!r} not in {ring}")
                    e[pos[k]] = a
            out[tuple(e)] = c
        return Poly(ring, out)

    def format(self, order: MonomialOrder = None) -> str:
        order = order or degrevlex
        if not self.terms:
            return "0"
        p = self.ring.field.p
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.ring.vars, m) if e
            )
            neg = False
            if not p and c < 0:
                neg, c = True, -c
            if mono:
                text = mono if c == 1 else f"{c}*{mono}"
            else:
                text = str(c)
            if "/" in text and mono:
                text = f"({c})*{mono}"
            parts.append(("-" if neg else "+", text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r})"


def _add_terms(a: dict, b: dict, sign: int, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _check_ambient(f: Poly, G: Sequence[Poly]):
    for g in G:
        if g.ring != f.ring:
            raise AmbientError(f"{g.ring} vs {f.ring}")


# ---------------------------------------------------------------------------
# Division and Groebner bases


def divide(f: Poly, G: Sequence[Poly], order: MonomialOrder) -> tuple[list[Poly], Poly]:
    """Multivariate division: ``f == sum(q*g) + r`` with ``r`` reduced.

    Always divides by the first element of ``G`` whose leading monomial
    divides the current leading term.
    """
    _check_ambient(f, G)
    ring = f.ring
    p = ring.field.p
    leads = []
    for g in G:
        if not g:
            raise ValueError("zero divisor polynomial in division")
        m = g.lm(order)
        leads.append((m, g.terms[m]))
    quotients = [dict() for _ in G]
    rem: dict = {}
    work = dict(f.terms)
    key = order.key
    while work:
        m = max(work, key=key)
        c = work[m]
        for k, (lm, lc) in enumerate(leads):
            if _divides(lm, m):
                q = c * ring.field.inv(lc)
                if p:
                    q %= p
                qm = tuple(x - y for x, y in zip(m, lm))
                quotients[k][qm] = quotients[k].get(qm, 0) + q
                for gm, gc in G[k].terms.items():
                    t = tuple(x + y for x, y in zip(gm, qm))
                    v = work.get(t, 0) - q * gc
                    if p:
                        v %= p
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
            del work[m]
    qs = []
    for qd in quotients:
        if p:
            qd = {m: c % p for m, c in qd.items() if c % p}
        else:
            qd = {m: c for m, c in qd.items() if c}
        qs.append(Poly(ring, qd))
    return qs, Poly(ring, rem)


def normal_form(f: Poly, G: Sequence[Poly], order: MonomialOrder) -> Poly:
    """Remainder of ``f`` on division by ``G``."""
    if not G:
        return f
    return _reduce(f, G, order)


def _reduce(f: Poly, G: Sequence[Poly], order: MonomialOrder) -> Poly:
    # same as divide() without bookkeeping for the quotients
    _check_ambient(f, G)
    ring = f.ring
    p = ring.field.p
    inv = ring.field.inv
    leads = []
    for g in G:
        if not g:
            raise ValueError("zero polynomial in reducer list")
        m = g.lm(order)
        leads.append((m, inv(g.terms[m]), g.terms))
    rem: dict = {}
    work = dict(f.terms)
    key = order.key
    while work:
        m = max(work, key=key)
        c = work[m]
        for lm, ilc, gterms in leads:
            if _divides(lm, m):
                q = c * ilc
                if p:
                    q %= p
                qm = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in gterms.items():
                    t = tuple(x + y for x, y in zip(gm, qm))
                    v = work.get(t, 0) - q * gc
                    if p:
                        v %= p
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
            del work[m]
    return Poly(ring, rem)


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    mf, mg = f.lm(order), g.lm(order)
    L = _lcm(mf, mg)
    inv = f.ring.field.inv
    a = f.mul_term(tuple(x - y for x, y in zip(L, mf)), inv(f.terms[mf]))
    b = g.mul_term(tuple(x - y for x, y in zip(L, mg)), inv(g.terms[mg]))
    return a - b


def reduced_groebner(gens: Iterable[Poly], order: MonomialOrder) -> list[Poly]:
    """The reduced Groebner basis of ``(gens)``, sorted by increasing leading monomial.

    Buchberger's algorithm with the coprime-leading-monomial and chain
    criteria; pairs are processed by smallest lcm (degree first).
    """
    G = [g.monic(order) for g in gens if g]
    if not G:
        return []
    ring = G[0].ring
    _check_ambient(G[0], G)
    key = order.key
    if any(g.is_constant() for g in G):
        return [ring.one()]

    basis: list[Poly] = []
    leads: list[tuple] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: Poly):
        k = len(basis)
        basis.append(h)
        leads.append(h.lm(order))
        for j in range(k):
            pairs.add((j, k))

    for g in G:
        add(g)

    def pair_key(pr):
        L = _lcm(leads[pr[0]], leads[pr[1]])
        return (sum(L), key(L), pr)

    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.discard(pr)
        i, j = pr
        mi, mj = leads[i], leads[j]
        if basis[i] is None or basis[j] is None:
            continue
        if all(not (a and b) for a, b in zip(mi, mj)):
            continue  # coprime leading monomials
        L = _lcm(mi, mj)
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or basis[k] is None:
                continue
            if _divides(leads[k], L) and (min(i, k), max(i, k)) not in pairs and (
                min(j, k),
                max(j, k),
            ) not in pairs:
                chain = True
                break
        if chain:
            continue
        live = [g for g in basis if g is not None]
        h = _reduce(s_polynomial(basis[i], basis[j], order), live, order)
        if h:
            h = h.monic(order)
            if h.is_constant():
                return [ring.one()]
            add(h)

    return _interreduce([g for g in basis if g is not None], order)


def _interreduce(G: list[Poly], order: MonomialOrder) -> list[Poly]:
    key = order.key
    G = sorted(G, key=lambda g: key(g.lm(order)))
    minimal: list[Poly] = []
    for g in G:
        m = g.lm(order)
        if not any(_divides(h.lm(order), m) for h in minimal):
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        r = _reduce(g, others, order) if others else g
        out.append(r.monic(order))
    return sorted(out, key=lambda g: key(g.lm(order)))


def is_groebner(G: Sequence[Poly], order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    for f, g in combinations(G, 2):
        if _reduce(s_polynomial(f, g, order), G, order):
            return False
    return True


def eliminate(gens: Iterable[Poly], drop: Iterable[str], order: MonomialOrder | None = None) -> list[Poly]:
    """Generators of ``(gens)`` intersected with the subring free of ``drop``.

    Uses a block order with the dropped variables in the dominant block;
    ``order`` is the inner order of each block (degrevlex by default).
    """
    gens = [g for g in gens if g]
    drop = list(drop)
    if not gens:
        return []
    ring = gens[0].ring
    if not drop:
        return reduced_groebner(gens, order or degrevlex)
    idx = [ring.index(v) for v in drop]
    block = BlockOrder(idx, order or degrevlex)
    G = reduced_groebner(gens, block)
    dropped = set(idx)
    return [g for g in G if not (g.support_vars() & dropped)]


def leading_monomials(G: Sequence[Poly], order: MonomialOrder) -> list[tuple]:
    return [g.lm(order) for g in G]


def standard_monomials(G: Sequence[Poly], order: MonomialOrder, nvars: int):
    """Monomials outside the leading-term ideal, or None if there are infinitely many."""
    leads = leading_monomials(G, order)
    bounds = []
    for k in range(nvars):
        pure = [m[k] for m in leads if m[k] and all(e == 0 for j, e in enumerate(m) if j != k)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def rec(prefix):
        if len(prefix) == nvars:
            m = tuple(prefix)
            if not any(_divides(l, m) for l in leads):
                out.append(m)
            return
        for e in range(bounds[len(prefix)]):
            rec(prefix + [e])

    rec([])
    return out


def poly_sqrt(f: Poly, order: MonomialOrder = degrevlex):
    """Exact square root of ``f`` in the polynomial ring, or None.

    In characteristic 2 every coefficient is a square and squaring is
    additive, so ``f`` is a square iff all exponents are even.
    """
    ring = f.ring
    field = ring.field
    if not f:
        return f
    if field.p == 2:
        if any(e % 2 for m in f.terms for e in m):
            return None
        return Poly(ring, {tuple(e // 2 for e in m): c for m, c in f.terms.items()})
    lm = f.lm(order)
    if any(e % 2 for e in lm):
        return None
    c0 = field.sqrt(f.terms[lm])
    if c0 is None:
        return None
    s = ring.monomial(tuple(e // 2 for e in lm), c0)
    slm, slc = tuple(e // 2 for e in lm), field(c0)
    two_inv = field.inv(field(2))
    r = f - s * s
    while r:
        m = r.lm(order)
        if not _divides(slm, m):
            return None
        qm = tuple(x - y for x, y in zip(m, slm))
        if order.key(qm) >= order.key(slm):
            return None
        q = field(r.terms[m] * two_inv * field.inv(slc))
        s = s + ring.monomial(qm, q)
        r = f - s * s
    return s
