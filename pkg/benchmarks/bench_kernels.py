"""Compiled kernels against the numpy fallback on the tables the oracle actually builds.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from rees_quot.finoracle import _pykernels, enumerate_model, local_factor_bf, primes_bf
from rees_quot.reesfam import make_rab
from rees_quot.polyalg import GF
from rees_quot.ringcore import define_quotient_ring, define_zmod

try:
    from rees_quot.finoracle import _kernels
except ImportError:
    _kernels = None


def cases():
    Z16 = define_zmod(16)
    Z36 = define_zmod(36)
    Z15 = define_zmod(15)
    small = enumerate_model(make_rab(Z16, Z16.ideal([2]), 4, 0))  # 128 elements
    big = enumerate_model(make_rab(Z36, Z36.ideal([2]), 1, 5))  # 648 elements
    spec = primes_bf(big)
    r15 = enumerate_model(make_rab(Z15, Z15.ideal([3]), 0, -1))
    s15 = primes_bf(r15)
    lf = local_factor_bf(r15, s15.primes[0], s15).model
    lf_tabs = (lf.add_table, lf.mul_table, lf.add_table, lf.mul_table, lf.zero, lf.one, lf.zero, lf.one)
    # square-zero maximal ideal of dimension 5: a 64-element local ring with a large automorphism group
    v = ["x", "y", "z", "u", "w"]
    sq0 = enumerate_model(define_quotient_ring(GF(2), v, relations=[f"{a}*{b}" for a in v for b in v]))
    rv = v[::-1]
    sq1 = enumerate_model(define_quotient_ring(GF(2), rv, relations=[f"{a}*{b}" for a in rv for b in rv]))
    sq_tabs = (sq0.add_table, sq0.mul_table, sq1.add_table, sq1.mul_table, sq0.zero, sq0.one, sq1.zero, sq1.one)
    return [
        ("assoc_violation n=128", "assoc_violation", (small.mul_table,)),
        ("distrib_violation n=128", "distrib_violation", (small.add_table, small.mul_table)),
        ("prime_violation n=648", "prime_violation", (big.mul_table, spec.primes[0])),
        ("zero_divisor_mask n=648", "zero_divisor_mask", (big.mul_table, big.zero)),
        ("ideal_violation n=648", "ideal_violation", (big.add_table, big.mul_table, spec.nilradical)),
        (f"hom_search n={lf.size}", "hom_search", lf_tabs),
        (f"hom_search n={sq0.size}", "hom_search", sq_tabs),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'kernel':<28}{'cython ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for label, name, call_args in cases():
        py = min(timeit.repeat(lambda: getattr(_pykernels, name)(*call_args), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{label:<28}{'-':>12}{py * 1e3:>12.2f}{'-':>10}")
            continue
        fast = getattr(_kernels, name)
        cy = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        a, b = fast(*call_args), getattr(_pykernels, name)(*call_args)
        same = np.array_equal(a, b) if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else a == b
        flag = "" if same else "  RESULTS DIFFER"
        print(f"{label:<28}{cy * 1e3:>12.2f}{py * 1e3:>12.2f}{py / cy:>9.1f}x{flag}")


if __name__ == "__main__":
    main()
