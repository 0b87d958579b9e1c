"""Sweep Z/n instances for the uncovered localization case and test them by brute force."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..reesfam import make_rab
from ..ringcore import define_zmod
from ..spectool import localization_class
from .model import enumerate_model
from .oracle import isomorphism_bf, local_factor_bf, primes_bf

__all__ = ["SearchBounds", "search_localization_question", "sweep_instances"]

ISO_LIMIT = 64


@dataclass
class SearchBounds:
    n_min: int = 2
    n_max: int = 36
    pairs: int | None = None  # None sweeps all (a, b); otherwise a seeded sample of this size
    seed: int = 0

    @classmethod
    def from_dict(cls, d: dict) -> SearchBounds:
        return cls(**{k: d[k] for k in ("n_min", "n_max", "pairs", "seed") if k in d})


def sweep_instances(bounds: SearchBounds):
    """Yield ``(n, d, a, b)`` for every principal proper nonzero ideal ``(d)`` of Z/n."""
    rng = np.random.default_rng(bounds.seed)
    for n in range(max(bounds.n_min, 2), bounds.n_max + 1):
        divisors = [d for d in range(2, n) if n % d == 0]
        if not divisors:
            continue
        if bounds.pairs is None or bounds.pairs >= n * n:
            pairs = [(a, b) for a in range(n) for b in range(n)]
        else:
            flat = rng.choice(n * n, size=bounds.pairs, replace=False)
            pairs = [(int(k) // n, int(k) % n) for k in sorted(flat)]
        for d in divisors:
            for a, b in pairs:
                yield n, d, a, b


def _has_global_root(n, a, b) -> bool:
    x = np.arange(n)
    return bool(np.any((x * x + a * x + b) % n == 0))


def _compare(rr, P, report):
    M = enumerate_model(rr, check=False)
    spec = primes_bf(M)
    R = enumerate_model(rr.base)
    base_factor = local_factor_bf(R, np.asarray(R.indices % P.generator == 0))
    from ..spectool import fiber_over_prime

    fib = fiber_over_prime(rr, P, report.roots)
    out = []
    for desc in fib.primes:
        mask = desc.mask(M)
        lf = local_factor_bf(M, mask, spec)
        same = lf.invariants() == base_factor.invariants()
        if not same:
            verdict = "counterexample"
        elif lf.size <= ISO_LIMIT:
            iso = isomorphism_bf(lf.model, base_factor.model)
            verdict = "confirmed" if iso is not None else "counterexample"
        else:
            verdict = "invariants-only"
        out.append({"prime": desc.describe(), "local": lf.invariants(), "base": base_factor.invariants(), "verdict": verdict})
    return out


def search_localization_question(
    bounds, sink=None, stats: dict | None = None, verify_proved: bool = False
) -> list[dict]:
    """Instances whose localization falls outside every proved case, with brute-force verdicts.

    Instances with a root of ``t^2 + a t + b`` in Z/n are excluded.  Each
    candidate is written to ``sink`` (a callable taking one JSON line) as soon
    as it is found.  With ``verify_proved`` the instances classified as
    ``Case2b_IsoBaseLocal`` are compared by brute force as well and reported
    alongside, tagged by their case.
    """
    if isinstance(bounds, dict):
        bounds = SearchBounds.from_dict(bounds)
    rings = {}
    out = []
    counts = {"instances": 0, "excluded_global_roots": 0, "primes_examined": 0, "candidates": 0}
    for n, d, a, b in sweep_instances(bounds):
        counts["instances"] += 1
        if _has_global_root(n, a, b):
            counts["excluded_global_roots"] += 1
            continue
        R = rings.setdefault(n, define_zmod(n))
        rr = make_rab(R, R.ideal([d]), a, b, check=False)
        for P in R.minimal_primes():
            counts["primes_examined"] += 1
            rep = localization_class(rr, P)
            if rep.case == "Case2b_IsoBaseLocal" and verify_proved:
                counts["proved_verified"] = counts.get("proved_verified", 0) + 1
            elif rep.case != "CaseOpenQuestion":
                continue
            record = {"n": n, "I": d, "a": a, "b": b, "prime": P.generator, "case": rep.case, "notes": rep.notes}
            record["factors"] = _compare(rr, P, rep)
            record["counterexample"] = any(f["verdict"] == "counterexample" for f in record["factors"])
            if rep.case == "CaseOpenQuestion":
                counts["candidates"] += 1
            out.append(record)
            if sink is not None:
                sink(json.dumps(record, sort_keys=True))
    if stats is not None:
        stats.update(counts)
    return out
