import random

import numpy as np
import pytest

from rees_quot.finoracle import enumerate_model
from rees_quot.polyalg import GF, QQ
from rees_quot.reesfam import MissingRoots, RootData, duplication, make_rab
from rees_quot.ringcore import define_quotient_ring, define_zmod
from rees_quot.spectool import (
    BadPrime,
    Irreducible,
    NeedRoots,
    factor_quadratic_mod_prime,
    fiber_over_prime,
    find_global_roots,
    is_domain_rab,
    is_reduced_rab,
    localization_class,
    minimal_primes_rab,
    recognize_special,
)
from rees_quot.ringcore import Unknown


class TestFactor:
    def test_double_root_mod_2(self):
        Z = define_zmod(6)
        rr = make_rab(Z, Z.ideal([3]), 0, -1)
        r = factor_quadratic_mod_prime(rr, Z.ideal([2]))
        assert r.alpha.value % 2 == 1 and r.beta.value % 2 == 1

    def test_split_mod_3(self):
        Z = define_zmod(6)
        rr = make_rab(Z, Z.ideal([3]), 0, -1)
        r = factor_quadratic_mod_prime(rr, Z.ideal([3]))
        assert {r.alpha.value % 3, r.beta.value % 3} == {1, 2}

    def test_syntactic_root(self, ex2):
        R = ex2.base
        r = factor_quadratic_mod_prime(ex2, R.ideal([R.var("x")]))
        y = R.var("y")
        assert {r.alpha, r.beta} == {y, -y}

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_prime_field_against_brute_force(self, p):
        Z = define_zmod(p * 2) if p != 2 else define_zmod(4)
        P = Z.ideal([p])
        for a in range(p):
            for b in range(p):
                rr = make_rab(Z, Z.ideal([Z.n // p]), a, b)
                has_root = any((x * x + a * x + b) % p == 0 for x in range(p))
                res = factor_quadratic_mod_prime(rr, P)
                assert isinstance(res, Irreducible) != has_root
                if has_root:
                    assert res.p_corr in P

    def test_irreducible_over_polynomial_residue(self):
        F = define_quotient_ring(GF(3), ["u"], "degrevlex", [])
        u = F.var("u")
        rr = make_rab(F, F.ideal([u]), 0, -u)
        assert isinstance(factor_quadratic_mod_prime(rr, F.zero_ideal()), Irreducible)

    def test_unknown_for_nonlinear_prime(self):
        R = define_quotient_ring(QQ, ["x", "y"], "degrevlex", [])
        P = R.ideal([R.parse("x^2 + y^2 - 1")], prime=True)
        rr = make_rab(R, R.ideal([R.var("x")]), 0, R.parse("-x"))
        assert isinstance(factor_quadratic_mod_prime(rr, P), Unknown)
        with pytest.raises(NeedRoots):
            fiber_over_prime(rr, P)

    def test_bad_primes(self):
        Z = define_zmod(12)
        rr = make_rab(Z, Z.ideal([2]), 0, 1)
        with pytest.raises(BadPrime):
            factor_quadratic_mod_prime(rr, Z.ideal([4]))
        with pytest.raises(BadPrime):
            factor_quadratic_mod_prime(rr, Z.unit_ideal())


class TestFibers:
    def test_example_two(self, ex2):
        R = ex2.base
        fx = fiber_over_prime(ex2, R.ideal([R.var("x")]))
        assert fx.reducible and fx.merged is False and len(fx.primes) == 2
        w = fx.merged_witness
        assert w in fx.p1 and w not in fx.p2
        fy = fiber_over_prime(ex2, R.ideal([R.var("y")]))
        assert fy.reducible and fy.merged and len(fy.primes) == 1

    def test_z15(self):
        Z = define_zmod(15)
        rr = make_rab(Z, Z.ideal([3]), 0, -1)
        f = fiber_over_prime(rr, Z.ideal([5]))
        assert f.reducible and not f.merged

    def test_minimal_primes(self, ex2):
        assert len(minimal_primes_rab(ex2)) == 3
        Z = define_zmod(6)
        assert len(minimal_primes_rab(make_rab(Z, Z.ideal([3]), 0, -1))) == 2
        F = define_quotient_ring(GF(3), ["u"], "degrevlex", [])
        u = F.var("u")
        mins = minimal_primes_rab(make_rab(F, F.ideal([u]), 0, -u))
        assert len(mins) == 1 and mins[0].kind == "irreducible" and mins[0].base_prime.is_zero().is_yes

    def test_minimal_primes_unknown(self):
        R = define_quotient_ring(QQ, ["x", "y"], "degrevlex", ["x^2 + y^2 - 1"])
        rr = make_rab(R, R.ideal([R.var("x")]), 0, 0)
        assert isinstance(minimal_primes_rab(rr), Unknown)

    def test_supplied_roots(self, ex2):
        R = ex2.base
        P = R.ideal([R.var("x")])
        y = R.var("y")
        f = fiber_over_prime(ex2, P, RootData.make(ex2.a, ex2.b, -y, modulus=P))
        assert f.roots.alpha == -y

    def test_contraction_and_closure(self):
        # exhaustive on a finite ring: each descriptor is an ideal, prime, and contracts to P
        Z = define_zmod(36)
        rr = make_rab(Z, Z.ideal([6]), 1, 5)
        M = enumerate_model(rr)
        T, A = M.mul_table, M.add_table
        for P in Z.minimal_primes():
            for d in fiber_over_prime(rr, P).primes:
                m = d.mask(M)
                assert np.array_equal(m[M.base_slice()], M.base.indices % P.generator == 0)
                inside = np.flatnonzero(m)
                assert m[A[np.ix_(inside, inside)]].all()
                assert m[T[inside]].all()
                outside = np.flatnonzero(~m)
                assert not m[T[np.ix_(outside, outside)]].any()

    def test_mask_matches_membership(self, ex2):
        # the vectorised mask agrees with the predicate on a Z/n ring
        Z = define_zmod(20)
        rr = make_rab(Z, Z.ideal([4]), 3, 2)
        M = enumerate_model(rr)
        for P in Z.minimal_primes():
            for d in fiber_over_prime(rr, P).primes:
                m = d.mask(M)
                assert [M.decode(k) in d for k in range(M.size)] == m.tolist()


class TestLocalization:
    def test_irreducible_case(self):
        Z = define_zmod(10)
        rr = make_rab(Z, Z.ideal([2]), 0, 2)  # t^2 + 2 has no root mod 5
        assert localization_class(rr, Z.ideal([5])).case == "Case1_IrreducibleIsoRabLocal"

    def test_merged(self):
        Z = define_zmod(16)
        rr = make_rab(Z, Z.ideal([2]), 4, 0)
        assert localization_class(rr, Z.ideal([2])).case == "Case2a_MergedIsoRabLocal"

    def test_base_case(self):
        Z = define_zmod(15)
        rr = make_rab(Z, Z.ideal([3]), 0, -1)
        rep = localization_class(rr, Z.ideal([5]))
        assert rep.case == "Case2b_IsoBaseLocal" and rep.lam == Z(3)
        r = rep.roots
        assert (r.p_corr * rep.lam * 3).is_zero() and (r.alpha - r.beta) * rep.lam not in Z.ideal([5])

    def test_polynomial_search(self, ex2):
        R = ex2.base
        rep = localization_class(ex2, R.ideal([R.var("x")]))
        assert rep.case == "Case2b_IsoBaseLocal" and rep.p_corr_ok


class TestPredicates:
    def test_domain(self):
        F = define_quotient_ring(GF(3), ["u"], "degrevlex", [])
        u = F.var("u")
        assert is_domain_rab(make_rab(F, F.ideal([u]), 0, -u)).is_yes
        Z = define_zmod(16)
        assert is_domain_rab(make_rab(Z, Z.ideal([2]), 4, 0)).is_no

    def test_domain_split_witness(self):
        F = define_quotient_ring(GF(3), ["u"], "degrevlex", [])
        u = F.var("u")
        ts = is_domain_rab(make_rab(F, F.ideal([u]), 0, -u * u))
        x, y = ts.witness
        assert ts.is_no and (x * y).is_zero() and not x.is_zero() and not y.is_zero()

    def test_example_two_domain(self, ex2):
        ts = is_domain_rab(ex2)
        x, y = ts.witness
        assert ts.is_no and (x * y).is_zero()

    def test_reduced_example_one(self, ex1):
        ts = is_reduced_rab(ex1["y"])
        w = ts.witness
        R = ex1["y"].base
        y = R.var("y")
        assert ts.is_no and w.r == y * y and w.i == y and (w * w).is_zero()
        assert is_reduced_rab(ex1["x"]).is_yes

    def test_reduced_example_two(self, ex2):
        ts = is_reduced_rab(ex2)
        assert ts.is_no and not ts.witness.is_zero() and (ts.witness * ts.witness).is_zero()

    def test_reduced_remark_path(self):
        F = define_quotient_ring(QQ, ["u"], "degrevlex", [])
        u = F.var("u")
        assert is_reduced_rab(make_rab(F, F.ideal([u]), 0, -u)).is_yes

    def test_nonreduced_base_witness(self):
        Z = define_zmod(16)
        ts = is_reduced_rab(make_rab(Z, Z.ideal([2]), 1, 1))
        assert ts.is_no and (ts.witness * ts.witness).is_zero() and not ts.witness.is_zero()

    def test_global_roots(self):
        Z = define_zmod(15)
        r = find_global_roots(make_rab(Z, Z.ideal([3]), 0, -1))
        assert r.p_corr.is_zero()
        assert find_global_roots(make_rab(Z, Z.ideal([3]), 0, 2)) is None


class TestRecognize:
    def test_missing_roots(self, ex2):
        with pytest.raises(MissingRoots):
            recognize_special(ex2)

    def test_example_one(self, ex1):
        rep = recognize_special(ex1["y"])
        assert rep.idealization.is_yes
        rep = recognize_special(ex1["x"])
        assert rep.duplication.is_yes and rep.idealization.is_no
        R = ex1["x"].base
        assert rep.duplication_target.ideal == R.ideal([R.var("x") ** 2])

    def test_example_two(self, ex2):
        R = ex2.base
        ex2.attach_roots(RootData.make(ex2.a, ex2.b, R.var("y")))
        rep = recognize_special(ex2)
        assert rep.idealization.is_no and rep.duplication.is_no

    def test_maps_are_homomorphisms_sampled(self, ex1):
        rng = random.Random(3)
        for key, attr in (("y", "idealization_map"), ("x", "duplication_map")):
            rr = ex1[key]
            fn = getattr(recognize_special(rr), attr)
            R, g = rr.base, rr.ideal.gens[0]
            pool = [R.parse(s) for s in ("0", "1", "x", "y", "x+1", "y^2+x", "x^3")]
            for _ in range(300):
                u = rr.element(rng.choice(pool), rng.choice(pool) * g)
                v = rr.element(rng.choice(pool), rng.choice(pool) * g)
                assert fn(u * v) == fn(u) * fn(v)
                assert fn(u + v) == fn(u) + fn(v)
                if not u.is_zero():
                    assert not fn(u).is_zero()

    def test_naive_map_is_not_multiplicative(self):
        # (r, i) -> (r, (alpha-beta) i) breaks once beta*I != 0; the emitted map does not
        Z = define_zmod(16)
        rr = make_rab(Z, Z.ideal([2]), -5, 6)  # roots 3 and 2
        rr.attach_roots(RootData.make(rr.a, rr.b, Z(3)))
        target = duplication(Z, Z.ideal([2]))
        naive = lambda e: target.element(e.r, e.i)  # noqa: E731
        u = rr.element(0, 2)
        assert naive(u * u) != naive(u) * naive(u)
        fn = recognize_special(rr).duplication_map
        elems = [rr.element(r, i) for r in range(16) for i in range(0, 16, 2)]
        for v in elems:
            for w in elems:
                assert fn(v * w) == fn(v) * fn(w)
