"""Brute-force ground truth: nilradical, spectrum and local factors of a finite model."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .. import spectool
from ..reesfam import RabRing
from ..ringcore import ZModRing
from . import kernels
from .model import FiniteModel, RabModel, TableModel, TooLarge, enumerate_model

__all__ = [
    "OracleMismatch",
    "BruteSpec",
    "LocalFactor",
    "nilradical_bf",
    "primes_bf",
    "local_factor_bf",
    "isomorphism_bf",
    "ring_axioms_bf",
    "crosscheck",
    "CrosscheckReport",
]


class OracleMismatch(AssertionError):
    def __init__(self, what: str, witness=None):
        self.what, self.witness = what, witness
        super().__init__(f"{what} (witness: {witness})")


def nilradical_bf(M: FiniteModel) -> np.ndarray:
    """Mask of the nilpotent elements, by repeated squaring."""
    cur = M.indices
    for _ in range(max(1, math.ceil(math.log2(M.size))) + 1):
        cur = M.squares[cur]
    return cur == M.zero


@dataclass
class BruteSpec:
    model: FiniteModel
    nilradical: np.ndarray
    primes: list[np.ndarray]
    idempotents: list[int]  # primitive idempotent e with the matching prime = {x : xe nilpotent}

    def sets(self) -> list[frozenset]:
        return [frozenset(np.flatnonzero(P).tolist()) for P in self.primes]


def _idempotents(M: FiniteModel) -> np.ndarray:
    return np.flatnonzero(M.squares == M.indices)


def _primitive(M: FiniteModel, idem: np.ndarray) -> list[int]:
    out = []
    for e in idem:
        if e == M.zero:
            continue
        others = idem[(idem != e) & (idem != M.zero)]
        # f below e means f*e = f
        if not np.any(np.asarray(M.mul(others, e)) == others):
            out.append(int(e))
    return out


def primes_bf(M: FiniteModel, verify: bool = True) -> BruteSpec:
    """Every prime ideal of a finite ring.

    Idempotents of a finite ring biject with those of its reduction, so the
    primitive idempotents ``e`` are read off ``M`` directly and each prime is
    ``{x : x e nilpotent}``.
    """
    nil = nilradical_bf(M)
    prims = _primitive(M, _idempotents(M))
    primes = [nil[np.asarray(M.mul(M.indices, e))] for e in prims]
    if verify:
        T = M.mul_table
        for P in primes:
            if P[M.one]:
                raise OracleMismatch("prime contains 1", M.one)
            hit = kernels.prime_violation(T, P)
            if hit is not None:
                raise OracleMismatch("set is not prime", hit)
        keys = {P.tobytes() for P in primes}
        if len(keys) != len(primes):
            raise OracleMismatch("repeated prime")
    return BruteSpec(M, nil, primes, prims)


@dataclass
class LocalFactor:
    model: TableModel
    idempotent: int
    size: int
    residue_size: int
    cotangent_size: int  # |m / m^2|

    def invariants(self) -> tuple:
        return (self.size, self.residue_size, self.cotangent_size)


def local_factor_bf(M: FiniteModel, P: np.ndarray, spec: BruteSpec | None = None) -> LocalFactor:
    """The factor ``M e`` for the primitive idempotent ``e`` outside ``P``."""
    spec = primes_bf(M) if spec is None else spec
    keys = [Q.tobytes() for Q in spec.primes]
    P = np.asarray(P, dtype=bool)
    if P.tobytes() not in keys:
        raise spectool.BadPrime("not a prime of this ring")
    e = spec.idempotents[keys.index(P.tobytes())]
    members = np.unique(np.asarray(M.mul(M.indices, e)))
    L = TableModel(M, members, e)
    maxl = P[members]
    mx = np.flatnonzero(maxl)
    prods = np.asarray(L.mul(mx[:, None], mx[None, :])).ravel() if len(mx) else np.array([L.zero])
    m2 = L.span(prods)
    return LocalFactor(L, e, L.size, L.size // len(mx), len(mx) // int(m2.sum()))


def isomorphism_bf(M1: FiniteModel, M2: FiniteModel):
    """An isomorphism as an index array ``M1 -> M2``, or None."""
    if M1.size != M2.size:
        return None
    return kernels.hom_search(
        M1.add_table, M1.mul_table, M2.add_table, M2.mul_table, M1.zero, M1.one, M2.zero, M2.one
    )


def ring_axioms_bf(M: FiniteModel):
    """First axiom failure as ``(name, witness)``, or None."""
    A, T = M.add_table, M.mul_table
    checks = [
        ("commutativity", lambda: kernels.comm_violation(T)),
        ("associativity", lambda: kernels.assoc_violation(T)),
        ("distributivity", lambda: kernels.distrib_violation(A, T)),
        ("additive associativity", lambda: kernels.assoc_violation(A)),
    ]
    for name, run in checks:
        hit = run()
        if hit is not None:
            return name, hit
    if not np.array_equal(T[M.one], M.indices):
        return "identity", int(np.flatnonzero(T[M.one] != M.indices)[0])
    return None


# ---------------------------------------------------------------------------
# crosscheck


@dataclass
class CrosscheckReport:
    ring: str
    size: int
    fibers: list = field(default_factory=list)
    reduced: tuple | None = None
    domain: tuple | None = None
    maps: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "ring": self.ring,
            "size": self.size,
            "fibers": self.fibers,
            "reduced": self.reduced,
            "domain": self.domain,
            "maps": self.maps,
            "skipped": self.skipped,
        }


def _base_primes(rr: RabRing, M: RabModel):
    R = rr.base
    if isinstance(R, ZModRing):
        return [(P, np.asarray(M.base.indices % P.generator == 0)) for P in R.minimal_primes()]
    out = []
    for mask in primes_bf(M.base).primes:
        P = R.ideal([M.base.decode(k) for k in np.flatnonzero(mask)])
        out.append((P, mask))
    return out


def _mask_mismatch(predicted: list, found: list):
    """Smallest index separating the two families, or None when they agree."""
    pk = {m.tobytes(): m for m in predicted}
    fk = {m.tobytes(): m for m in found}
    if pk.keys() == fk.keys():
        return None
    diff = [m for k, m in pk.items() if k not in fk] + [m for k, m in fk.items() if k not in pk]
    witness = None
    for m in diff:
        others = list(fk.values()) if m.tobytes() in pk else list(pk.values())
        for o in others or [np.zeros_like(m)]:
            k = int(np.flatnonzero(m != o)[0])
            witness = k if witness is None else min(witness, k)
    return witness


def _check_map(name, fn, M: RabModel, target: RabRing, cap: int):
    N = enumerate_model(target, cap)
    img = np.array([N.encode(fn(M.decode(k))) for k in range(M.size)], dtype=np.int64)
    if N.size != M.size:
        raise OracleMismatch(f"{name} target has {N.size} elements, source has {M.size}")
    _, first = np.unique(img, return_index=True)
    if len(first) != M.size:
        dup = int(np.setdiff1d(M.indices, first)[0])
        raise OracleMismatch(f"{name} map is not injective", M.decode(dup))
    A1, T1, A2, T2 = M.add_table, M.mul_table, N.add_table, N.mul_table
    for label, src, dst in (("additive", A1, A2), ("multiplicative", T1, T2)):
        bad = img[src] != dst[img[:, None], img[None, :]]
        if bad.any():
            x, y = np.argwhere(bad)[0]
            raise OracleMismatch(f"{name} map is not {label}", (int(x), int(y)))
    if img[M.one] != N.one:
        raise OracleMismatch(f"{name} map does not preserve 1", M.one)
    return N


def crosscheck(rr: RabRing, cap: int | None = None) -> CrosscheckReport:
    """Compare every spectool prediction on a finite ring with brute force.

    Raises OracleMismatch on the first disagreement.
    """
    M = enumerate_model(rr, cap)
    if M.size > 4096:
        raise TooLarge("crosscheck needs full tables")
    report = CrosscheckReport(str(rr), M.size)
    if rr.roots is None:
        found = spectool.find_global_roots(rr)
        if found is not None:
            rr.attach_roots(found)

    spec = primes_bf(M)
    base_idx = M.base_slice()
    for P, pmask in _base_primes(rr, M):
        over = [Q for Q in spec.primes if np.array_equal(Q[base_idx], pmask)]
        try:
            fib = spectool.fiber_over_prime(rr, P)
        except spectool.NeedRoots as exc:
            report.skipped.append(f"fiber over {P}: {exc}")
            continue
        predicted = [d.mask(M) for d in fib.primes]
        w = _mask_mismatch(predicted, over)
        if w is not None:
            raise OracleMismatch(f"fiber over {P} differs from brute force", M.decode(w))
        report.fibers.append({"prime": str(P), "primes": len(over), "merged": fib.merged})
    contracted = sum(
        1 for Q in spec.primes if any(np.array_equal(Q[base_idx], pm) for _, pm in _base_primes(rr, M))
    )
    if contracted != len(spec.primes):
        raise OracleMismatch("a prime contracts to no base prime")

    nil = spec.nilradical
    bf_reduced = int(nil.sum()) == 1
    pred = spectool.is_reduced_rab(rr)
    report.reduced = (str(pred), bf_reduced)
    if not pred.is_unknown and pred.is_yes != bf_reduced:
        nz = np.flatnonzero(nil & (M.indices != M.zero))
        raise OracleMismatch("reducedness disagrees", M.decode(nz[0]) if len(nz) else None)
    if pred.is_no and pred.witness is not None:
        w = pred.witness
        if w.is_zero() or not (w * w).is_zero():
            raise OracleMismatch("reducedness witness is not a nonzero square-zero element", w)

    zd = kernels.zero_divisor_mask(M.mul_table, M.zero)
    bf_domain = not zd.any()
    pred = spectool.is_domain_rab(rr)
    report.domain = (str(pred), bf_domain)
    if not pred.is_unknown and pred.is_yes != bf_domain:
        hits = np.flatnonzero(zd)
        raise OracleMismatch("domain property disagrees", M.decode(hits[0]) if len(hits) else None)

    if rr.roots is not None and rr.roots.is_global:
        sp = spectool.recognize_special(rr)
        for name, fn, target in (
            ("idealization", sp.idealization_map, sp.idealization_target),
            ("duplication", sp.duplication_map, sp.duplication_target),
        ):
            if fn is not None:
                _check_map(name, fn, M, target, cap)
                report.maps.append(name)
    else:
        report.skipped.append("recognition: no factorization in R[t]")
    return report
