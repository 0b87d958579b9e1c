import random

import pytest

from rees_quot.polyalg import AmbientError
from rees_quot.reesfam import (
    BadIdeal,
    FactorizationMismatch,
    MissingRoots,
    RootData,
    duplication,
    ev_alpha,
    idealization,
    make_rab,
    verify_factorization,
)
from rees_quot.ringcore import define_zmod


def test_bad_ideals():
    Z = define_zmod(6)
    with pytest.raises(BadIdeal):
        make_rab(Z, Z.zero_ideal(), 0, 0)
    with pytest.raises(BadIdeal):
        make_rab(Z, Z.unit_ideal(), 0, 0)


def test_identity_and_zero(ex1):
    rr = ex1["x"]
    s = rr.element(rr.base.var("y"), rr.base.var("x"))
    assert rr.one() * s == s and (rr.zero() * s).is_zero() and s + rr.zero() == s


def test_square_of_t_multiple(ex1_ring):
    # (x t)^2 = -b x^2 + (-a x^2) t = y^2 x^2 + x^3 t = x^3 t
    R = ex1_ring
    x, y = R.var("x"), R.var("y")
    rr = make_rab(R, R.ideal([x]), x, y * y)
    sq = rr.element(0, x) ** 2
    assert sq.r.is_zero() and sq.i == x**3


def test_idealization_law():
    Z = define_zmod(16)
    rr = idealization(Z, Z.ideal([2]))
    for i in range(0, 16, 2):
        for j in range(0, 16, 2):
            assert (rr.element(0, i) * rr.element(0, j)).is_zero()


def test_duplication_law():
    # (r, i) -> (r, r + i) into R x R is multiplicative and additive
    Z = define_zmod(12)
    rr = duplication(Z, Z.ideal([3]))
    phi = lambda e: (e.r, e.r + e.i)  # noqa: E731
    elems = [rr.element(r, i) for r in range(12) for i in range(0, 12, 3)]
    for u in elems:
        for v in elems:
            pu, pv, pw = phi(u), phi(v), phi(u * v)
            assert pw == (pu[0] * pv[0], pu[1] * pv[1])
            assert phi(u + v) == (pu[0] + pv[0], pu[1] + pv[1])


def test_literal_minus_one_member_is_not_duplication_shaped():
    # t^2 - 1 breaks the (r, r+i) law: (0,3)^2 = (9, 0) but the image squares to (0, 9)
    Z = define_zmod(12)
    rr = make_rab(Z, Z.ideal([3]), 0, -1)
    u = rr.element(0, 3)
    assert (u * u).r != u.r * u.r


def test_verify_factorization(ex1_ring):
    R = ex1_ring
    x, y = R.var("x"), R.var("y")
    rr = make_rab(R, R.ideal([y]), x, y * y)
    assert verify_factorization(rr, RootData.make(rr.a, rr.b, y + x))
    assert rr.roots is not None
    bad = RootData(y, y, R.one(), R.zero())
    with pytest.raises(FactorizationMismatch, match="alpha"):
        verify_factorization(rr, bad)
    Z = define_zmod(16)
    r16 = make_rab(Z, Z.ideal([2]), 4, 0)
    assert verify_factorization(r16, RootData(Z(0), Z(-4), Z(1), Z(0)))


def test_relative_roots_checks():
    Z = define_zmod(6)
    rr = make_rab(Z, Z.ideal([3]), 0, -1)
    P = Z.ideal([2])
    verify_factorization(rr, RootData.make(rr.a, rr.b, Z(1), modulus=P))
    assert rr.roots is None  # relative roots are not attached
    with pytest.raises(FactorizationMismatch):
        verify_factorization(rr, RootData.make(rr.a, rr.b, Z(0), modulus=P))
    with pytest.raises(FactorizationMismatch):
        verify_factorization(rr, RootData.make(rr.a, rr.b, Z(2), gamma=Z(2), modulus=P))


def test_ev_alpha(ex1):
    rr = ex1["y"]
    R = rr.base
    y = R.var("y")
    assert ev_alpha(rr, rr.element(0, y)) == y * y
    assert ev_alpha(rr, rr.element(R.var("x"), 0)) == R.var("x")
    Z = define_zmod(16)
    r16 = make_rab(Z, Z.ideal([2]), 4, 0)
    with pytest.raises(MissingRoots):
        ev_alpha(r16, r16.one())
    r16.attach_roots(RootData.make(r16.a, r16.b, Z(0)))
    assert ev_alpha(r16, r16.element(5, 6)) == Z(5)


def test_ev_alpha_homomorphism_sampled(ex1):
    rng = random.Random(7)
    for rr in ex1.values():
        R = rr.base
        g = rr.ideal.gens[0]
        pool = [R.parse(s) for s in ("0", "1", "x", "y", "x+y", "x^2", "y^3+1", "x^3+x+1")]
        for _ in range(300):
            u = rr.element(rng.choice(pool), rng.choice(pool) * g)
            v = rr.element(rng.choice(pool), rng.choice(pool) * g)
            assert ev_alpha(rr, u * v) == ev_alpha(rr, u) * ev_alpha(rr, v)
            assert ev_alpha(rr, u + v) == ev_alpha(rr, u) + ev_alpha(rr, v)


def test_owner_mismatch():
    Z = define_zmod(6)
    a = make_rab(Z, Z.ideal([2]), 0, 0)
    b = make_rab(Z, Z.ideal([3]), 0, 0)
    with pytest.raises(AmbientError):
        a.one() + b.one()


def test_membership_checked():
    Z = define_zmod(6)
    rr = make_rab(Z, Z.ideal([2]), 0, 0)
    with pytest.raises(ValueError):
        rr.element(0, 3)
