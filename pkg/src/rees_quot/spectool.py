"""Primes of R(I)_{a,b} over a prime of R, and the structural predicates built on them.

Over a prime ``P`` of ``R`` the answer depends on whether ``t^2 + a t + b``
splits over the fraction field of ``R/P``:

* irreducible: one prime, ``{r + i t : r in P, i in I ∩ P}``;
* split with roots ``alpha/gamma``, ``beta/gamma``: the primes
  ``{gamma r + alpha i in P}`` and ``{gamma r + beta i in P}``, which agree
  exactly when ``(alpha - beta) I ⊆ P``.

Primes of R(I)_{a,b} are kept as membership predicates, never as generator
lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .polyalg import poly_sqrt
from .reesfam import MissingRoots, RabElement, RabRing, RootData, duplication, idealization, verify_factorization
from .ringcore import AmbientError, IdealHandle, QuotientRing, RingElement, TriState, Unknown, ZModRing, annihilator

__all__ = [
    "BadPrime",
    "NeedRoots",
    "Irreducible",
    "PrimeDescriptor",
    "FiberResult",
    "LocalizationReport",
    "SpecialReport",
    "factor_quadratic_mod_prime",
    "fiber_over_prime",
    "minimal_primes_rab",
    "localization_class",
    "is_domain_rab",
    "is_reduced_rab",
    "recognize_special",
    "find_global_roots",
]


class BadPrime(ValueError):
    pass


class NeedRoots(ValueError):
    """The residual factorization is undecided; supply RootData."""


@dataclass(frozen=True)
class Irreducible:
    reason: str = ""


# ---------------------------------------------------------------------------
# factorization over the residue field


def _finite_field_root(a: int, b: int, p: int):
    """A root of t^2 + a t + b over GF(p), or None."""
    a, b = a % p, b % p
    if p == 2:
        if a:
            # Artin-Schreier: t = a u gives u^2 + u + b/a^2, split iff Tr(b/a^2) = 0
            return 0 if b == 0 else None
        return b  # every element of GF(2) is its own square root
    half = (p + 1) // 2  # inverse of 2
    ha = a * half % p
    c = (ha * ha - b) % p
    if c == 0:
        return -ha % p
    if pow(c, (p - 1) // 2, p) != 1:
        return None
    from .polyalg import sqrt_mod_prime

    s = sqrt_mod_prime(c, p)
    return (-ha + s) % p


def _rational_root(a: Fraction, b: Fraction):
    from .polyalg import QQ

    ha = Fraction(a) / 2
    s = QQ.sqrt(ha * ha - Fraction(b))
    return None if s is None else -ha + s


def factor_quadratic_mod_prime(rr: RabRing, P: IdealHandle):
    """Decide whether ``t^2 + a t + b`` splits over the fraction field of ``R/P``.

    Returns ``Irreducible``, a ``RootData`` with ``gamma = 1`` relative to
    ``P``, or ``Unknown`` when the residue field is outside the decided
    classes and no square root of the discriminant is visible.
    """
    R = rr.base
    if P.owner != R:
        raise AmbientError("prime of a different ring")
    if not P.is_proper:
        raise BadPrime(f"{P} is not proper")
    primality = P.is_prime()
    if primality.is_no:
        raise BadPrime(f"{P} is not prime")
    a, b = rr.a, rr.b
    kind = P.residue_field()

    if isinstance(R, ZModRing):
        p = kind[1]
        rho = _finite_field_root(a.value, b.value, p)
        if rho is None:
            return Irreducible(f"no root over GF({p})")
        return RootData.make(a, b, R(rho), modulus=P)

    A = P.reduce(a).value
    B = P.reduce(b).value
    if kind is not None and kind[0] in ("finite", "rational"):
        ac, bc = A.constant_coeff(), B.constant_coeff()
        if kind[0] == "finite":
            rho = _finite_field_root(int(ac), int(bc), kind[1])
            where = f"GF({kind[1]})"
        else:
            rho = _rational_root(ac, bc)
            where = "QQ"
        if rho is None:
            return Irreducible(f"no root over {where}")
        return RootData.make(a, b, R(rho), modulus=P)

    decided = kind is not None  # R/P is a polynomial ring: squares are visible syntactically
    field_ = R.field
    if field_.p == 2:
        if A:
            return Unknown("characteristic 2 with a not in P over an infinite residue field")
        s = poly_sqrt(B)
        if s is None:
            if decided:
                return Irreducible("b is not a square in the residue field")
            return Unknown("no syntactic square root of b")
        return RootData.make(a, b, R(s), modulus=P)
    half = field_.inv(field_(2))
    ha = A.scale(half)
    c = P.reduce(R(ha * ha - B)).value
    s = poly_sqrt(c)
    if s is None:
        if decided:
            return Irreducible("discriminant is not a square in the residue field")
        return Unknown("no syntactic square root of the discriminant")
    return RootData.make(a, b, R(s - ha), modulus=P)


def _syntactic_root(rr: RabRing):
    """A root read off a square root of the discriminant's normal form, or None."""
    R = rr.base
    field_ = R.field
    A, B = rr.a.value, rr.b.value
    if field_.p == 2:
        s = None if A else poly_sqrt(B)
        return None if s is None else R(s)
    ha = A.scale(field_.inv(field_(2)))
    s = poly_sqrt(R(ha * ha - B).value)
    if s is None:
        return None
    root = R(s - ha)
    return root if (root * root + rr.a * root + rr.b).is_zero() else None


def find_global_roots(rr: RabRing, cap: int = 10_000):
    """A factorization of ``t^2 + a t + b`` in ``R[t]``, or None.

    Finite base rings are searched exhaustively; otherwise only a syntactic
    square root of the discriminant is tried.
    """
    R = rr.base
    if R.size is None or R.size > cap:
        if isinstance(R, QuotientRing):
            root = _syntactic_root(rr)
            if root is not None:
                return RootData.make(rr.a, rr.b, root)
        return None
    a, b = rr.a, rr.b
    if isinstance(R, ZModRing):
        n, av, bv = R.n, a.value, b.value
        for x in range(n):
            if (x * x + av * x + bv) % n == 0:
                return RootData.make(a, b, R(x))
        return None
    for x in R.elements():
        if (x * x + a * x + b).is_zero():
            return RootData.make(a, b, x)
    return None


# ---------------------------------------------------------------------------
# fibers


@dataclass(frozen=True, eq=False)
class PrimeDescriptor:
    """A prime of R(I)_{a,b} lying over ``base_prime``.

    ``kind`` is "irreducible", "root1" (``gamma r + alpha i in P``) or
    "root2" (``gamma r + beta i in P``).
    """

    kind: str
    ring: RabRing
    base_prime: IdealHandle
    roots: RootData | None = None

    def _coeffs(self):
        if self.kind == "root1":
            return self.roots.gamma, self.roots.alpha
        return self.roots.gamma, self.roots.beta

    def __contains__(self, x: RabElement) -> bool:
        P = self.base_prime
        if self.kind == "irreducible":
            return x.r in P and x.i in P
        g, c = self._coeffs()
        return g * x.r + c * x.i in P

    def mask(self, model) -> np.ndarray:
        """Membership of every element of a finite model of the ring, by model index."""
        comps = model.zmod_components() if hasattr(model, "zmod_components") else None
        if comps is not None and isinstance(self.ring.base, ZModRing):
            r, i = comps
            n = self.ring.base.n
            d = self.base_prime.generator
            if self.kind == "irreducible":
                return (r % d == 0) & (i % d == 0)
            g, c = self._coeffs()
            return (g.value * r + c.value * i) % n % d == 0
        return np.array([model.decode(k) in self for k in range(model.size)], dtype=bool)

    def describe(self) -> str:
        if self.kind == "irreducible":
            return f"{{r + it : r in {self.base_prime}, i in I ∩ {self.base_prime}}}"
        g, c = self._coeffs()
        return f"{{r + it : ({g})*r + ({c})*i in {self.base_prime}}}"

    def __repr__(self):
        return f"PrimeDescriptor({self.kind}, {self.describe()})"


@dataclass
class FiberResult:
    base_prime: IdealHandle
    reducible: bool
    q: PrimeDescriptor | None = None
    p1: PrimeDescriptor | None = None
    p2: PrimeDescriptor | None = None
    merged: bool | None = None
    merged_witness: object = None
    roots: RootData | None = None

    @property
    def primes(self) -> list[PrimeDescriptor]:
        if not self.reducible:
            return [self.q]
        return [self.p1] if self.merged else [self.p1, self.p2]


def _relative_roots(rr: RabRing, P: IdealHandle, roots: RootData | None):
    """Root choice to use over ``P``: explicit, then attached global roots, then computed."""
    if roots is not None:
        if roots.modulus is None:
            roots = RootData(roots.alpha, roots.beta, roots.gamma, roots.p_corr, P)
        elif roots.modulus != P:
            raise BadPrime("roots were given relative to a different prime")
        verify_factorization(rr, roots)
        return roots
    if rr.roots is not None and rr.roots.is_global:
        g = rr.roots
        return RootData(g.alpha, g.beta, g.gamma, g.p_corr, P)
    return factor_quadratic_mod_prime(rr, P)


def fiber_over_prime(rr: RabRing, P: IdealHandle, roots: RootData | None = None) -> FiberResult:
    """The primes of ``rr`` contracting to ``P``."""
    found = _relative_roots(rr, P, roots)
    if isinstance(found, Irreducible):
        return FiberResult(P, False, q=PrimeDescriptor("irreducible", rr, P))
    if isinstance(found, Unknown):
        raise NeedRoots(found.reason)
    roots = found
    diff = roots.alpha - roots.beta
    merged, witness = True, [diff * g for g in rr.ideal.gens]
    for g in rr.ideal.gens:
        if diff * g not in P:
            merged = False
            # -alpha*g + gamma*g t lies in the first prime and not in the second
            witness = rr.element(-roots.alpha * g, roots.gamma * g, check=False)
            break
    return FiberResult(
        P,
        True,
        p1=PrimeDescriptor("root1", rr, P, roots),
        p2=PrimeDescriptor("root2", rr, P, roots),
        merged=merged,
        merged_witness=witness,
        roots=roots,
    )


def minimal_primes_rab(rr: RabRing):
    """Union of the fibers over the minimal primes of the base ring."""
    mins = rr.base.minimal_primes()
    if isinstance(mins, Unknown):
        return mins
    out = []
    for P in mins:
        try:
            out.extend(fiber_over_prime(rr, P).primes)
        except NeedRoots as exc:
            return Unknown(f"fiber over {P}: {exc}")
    return out


# ---------------------------------------------------------------------------
# localizations


@dataclass
class LocalizationReport:
    case: str  # Case1_IrreducibleIsoRabLocal | Case2a_MergedIsoRabLocal | Case2b_IsoBaseLocal | CaseOpenQuestion
    lam: RingElement | None = None
    p_corr_ok: bool | None = None
    roots: RootData | None = None
    notes: str = ""


def _zmod_lambda_search(rr: RabRing, P: IdealHandle, cap: int):
    """Exhaustive search over root choices and lambda in I for Z/n.

    Returns ``(lam, roots)`` or ``(None, exhausted)``.
    """
    R = rr.base
    n, p = R.n, P.generator
    g = rr.ideal.generator
    a, b = rr.a.value, rr.b.value
    rho = _finite_field_root(a, b, p)
    roots_mod_p = sorted({rho % p, (-a - rho) % p})
    gammas = [1] + [x for x in range(2, n) if x % p]
    lambdas = [(k * g) % n for k in range(1, n // g)]
    budget = len(gammas) * (n // p) * len(lambdas) * len(roots_mod_p)
    exhausted = budget <= cap
    steps = 0
    for gam in gammas:
        for r0 in roots_mod_p:
            base = gam * r0 % p
            for q in range(0, n, p):
                al = (base + q) % n
                be = (-a * gam - al) % n
                pc = (b * gam * gam - al * be) % n
                for lam in lambdas:
                    steps += 1
                    if steps > cap:
                        return None, False
                    if (al - be) * lam % n % p == 0:
                        continue
                    if pc * lam * g % n == 0:
                        roots = RootData(R(al), R(be), R(gam), R(pc), P)
                        return R(lam), roots
    return None, exhausted


def _poly_lambda_search(rr: RabRing, P: IdealHandle, roots: RootData, degree_cap: int):
    R = rr.base
    gens = list(rr.ideal.gens)
    monos = [R.one()]
    variables = [R.var(v) for v in R.vars]
    layer = [R.one()]
    for _ in range(degree_cap):
        layer = [m * v for m in layer for v in variables]
        monos.extend(layer)
    lambdas = [m * g for g in gens for m in monos]
    lambdas += [g + h for g, h in itertools.combinations(gens, 2)]
    shifts = [R.zero()] + [s * m for s in P.gens for m in monos] + [-s for s in P.gens]
    for q in shifts:
        cand = roots.shifted(q)
        diff = cand.alpha - cand.beta
        for lam in lambdas:
            if lam.is_zero() or diff * lam in P:
                continue
            if all((cand.p_corr * lam * g).is_zero() for g in gens):
                return lam, cand
    return None, None


def localization_class(rr: RabRing, P: IdealHandle, roots: RootData | None = None, *, cap: int = 10**6, degree_cap: int = 2):
    """Which description of the localization at a prime over ``P`` applies."""
    fib = fiber_over_prime(rr, P, roots)
    if not fib.reducible:
        return LocalizationReport("Case1_IrreducibleIsoRabLocal", notes="residual quadratic is irreducible")
    if fib.merged:
        return LocalizationReport("Case2a_MergedIsoRabLocal", roots=fib.roots, notes="(alpha-beta)I lies in P")
    roots = fib.roots
    if rr.roots is not None and rr.roots.is_global:
        diff = roots.alpha - roots.beta
        lam = next(g for g in rr.ideal.gens if diff * g not in P)
        return LocalizationReport(
            "Case2b_IsoBaseLocal", lam, True, roots, "factorization in R[t] forces p_corr = 0"
        )
    if isinstance(rr.base, ZModRing):
        lam, found = _zmod_lambda_search(rr, P, cap)
        if lam is not None:
            return LocalizationReport("Case2b_IsoBaseLocal", lam, True, found, "root choice found by exhaustive search")
        note = "exhaustive search found no admissible root choice" if found else "search budget exhausted"
        return LocalizationReport("CaseOpenQuestion", None, False, roots, note)
    lam, found = _poly_lambda_search(rr, P, roots, degree_cap)
    if lam is not None:
        return LocalizationReport("Case2b_IsoBaseLocal", lam, True, found, "root choice found by bounded search")
    return LocalizationReport("CaseOpenQuestion", None, False, roots, "bounded search found no admissible root choice")


# ---------------------------------------------------------------------------
# structural predicates


def _zero_divisor_pair(rr: RabRing, roots: RootData):
    """``(-beta i + i t)(-alpha i + i t) = 0`` for a nonzero generator ``i``."""
    i = rr.ideal.gens[0]
    x = rr.element(-roots.beta * i, i, check=False)
    y = rr.element(-roots.alpha * i, i, check=False)
    return x, y


def is_domain_rab(rr: RabRing) -> TriState:
    R = rr.base
    dom = R.flags()["domain"]
    if dom.is_no:
        x, y = dom.witness
        return TriState.no((rr.element(x, 0), rr.element(y, 0)), reason=f"base ring is not a domain: {dom.reason}")
    if dom.is_unknown:
        return TriState.unknown("base ring domain property unknown")
    zero = R.zero_ideal()
    if rr.roots is not None and rr.roots.is_global:
        found = rr.roots
    else:
        found = factor_quadratic_mod_prime(rr, zero)
    if isinstance(found, Irreducible):
        return TriState.yes(reason="domain base and irreducible quadratic over its fraction field")
    if isinstance(found, Unknown):
        return TriState.unknown(found.reason)
    x, y = _zero_divisor_pair(rr, found)
    return TriState.no((x, y), reason="quadratic splits over the fraction field")


def _global_roots(rr: RabRing):
    if rr.roots is not None and rr.roots.is_global:
        return rr.roots
    found = find_global_roots(rr)
    if found is not None:
        verify_factorization(rr, found)
    return found


def _last_nonzero_power(w):
    """``w^j`` with ``w^(j+1) = 0``; it squares to zero since ``2j >= j+1``."""
    cur = w
    while not (cur * w).is_zero():
        cur = cur * w
    return cur


def is_reduced_rab(rr: RabRing) -> TriState:
    R = rr.base
    red = R.flags()["reduced"]
    if red.is_no:
        w = _last_nonzero_power(red.witness)
        return TriState.no(rr.element(w, 0), reason=f"base ring is not reduced: {red.reason}")
    roots = _global_roots(rr)
    if roots is not None:
        if red.is_unknown:
            return TriState.unknown("base ring reducedness unknown")
        diff = roots.alpha - roots.beta
        inter = rr.ideal & annihilator(diff)
        if inter.is_zero().is_yes:
            return TriState(red.value, None, red.provenance, "I ∩ Ann(alpha - beta) = 0")
        i = inter.gens[0]
        w = rr.element(-roots.beta * i, i, check=False)
        return TriState.no(w, reason=f"{i} lies in I ∩ Ann(alpha - beta); the witness squares to zero")
    mins = R.minimal_primes()
    if isinstance(mins, Unknown):
        return TriState.unknown("no factorization in R[t] and minimal primes unknown")
    for P in mins:
        try:
            f = factor_quadratic_mod_prime(rr, P)
        except BadPrime:
            return TriState.unknown(f"{P} is not prime")
        if not isinstance(f, Irreducible):
            return TriState.unknown(f"quadratic does not stay irreducible over {P}")
    if red.is_unknown:
        return TriState.unknown("base ring reducedness unknown")
    return TriState(red.value, None, red.provenance, "irreducible over every minimal prime")


@dataclass
class SpecialReport:
    idealization: TriState
    duplication: TriState
    idealization_map: object = None
    duplication_map: object = None
    idealization_target: RabRing | None = None
    duplication_target: RabRing | None = None
    notes: list = field(default_factory=list)


def recognize_special(rr: RabRing) -> SpecialReport:
    """Decide whether ``rr`` is an idealization ``R ⋉ I`` or a duplication ``R ⋈ (alpha-beta)I``.

    Needs a factorization in ``R[t]``.  Positive answers carry an explicit
    isomorphism ``RabElement -> RabElement``.
    """
    if rr.roots is None or not rr.roots.is_global:
        raise MissingRoots("recognition needs a factorization in R[t]")
    R, I = rr.base, rr.ideal
    alpha, beta = rr.roots.alpha, rr.roots.beta
    diff = alpha - beta
    reduced = R.flags()["reduced"].is_yes
    notes = []

    ann_I2 = annihilator(I * I)
    if diff in ann_I2:
        ideal_ts = TriState.yes(reason="alpha - beta annihilates I^2")
    elif reduced:
        ideal_ts = TriState.no(reason="R reduced and alpha - beta does not annihilate I")
    else:
        ideal_ts = TriState.unknown("alpha - beta does not annihilate I^2 and R is not known to be reduced")

    inter = annihilator(diff) & I
    if inter.is_zero().is_yes:
        dup_ts = TriState.yes(reason="Ann(alpha - beta) ∩ I = 0")
    elif reduced:
        dup_ts = TriState.no(inter.gens[0], reason="R reduced and Ann(alpha - beta) ∩ I ≠ 0")
    else:
        dup_ts = TriState.unknown("Ann(alpha - beta) ∩ I ≠ 0 and R is not known to be reduced")

    report = SpecialReport(ideal_ts, dup_ts, notes=notes)
    if ideal_ts.is_yes:
        target = idealization(R, I, check=rr.check)
        I2 = I * I
        literal = all((rr.a * g).is_zero() and (rr.b * g).is_zero() for g in I2.gens)
        if literal:
            notes.append("a and b annihilate I^2: multiplication is literally that of the idealization")

            def phi(x, target=target):
                return RabElement(target, x.r, x.i)

        else:

            def phi(x, target=target, beta=beta):
                return RabElement(target, x.r + beta * x.i, x.i)

        report.idealization_map = phi
        report.idealization_target = target
    if dup_ts.is_yes:
        target = duplication(R, I * diff, check=rr.check)

        def psi(x, target=target, beta=beta, diff=diff):
            return RabElement(target, x.r + beta * x.i, diff * x.i)

        report.duplication_map = psi
        report.duplication_target = target
    return report
