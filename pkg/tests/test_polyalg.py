import pytest
from hypothesis import given
from hypothesis import strategies as st

from rees_quot.polyalg import (
    GF,
    QQ,
    AmbientError,
    BlockOrder,
    PolyRing,
    degrevlex,
    divide,
    eliminate,
    is_groebner,
    lex,
    normal_form,
    poly_sqrt,
    reduced_groebner,
    sqrt_mod_prime,
    standard_monomials,
)

from helpers import poly

QXY = PolyRing(QQ, ["X", "Y"])


def P(s, ring=QXY):
    return poly(ring, s)


def same_ideal(A, B, order):
    """Two-way membership certificate."""
    GA, GB = reduced_groebner(A, order), reduced_groebner(B, order)
    return all(not normal_form(f, GB, order) for f in A) and all(not normal_form(f, GA, order) for f in B)


class TestNormalForm:
    def test_monomial_multiple(self):
        assert not normal_form(P("X^2*Y"), [P("X*Y")], degrevlex)

    def test_nothing_divides(self):
        assert normal_form(P("X+1"), [P("Y")], lex) == P("X+1")

    def test_reduces_to_one(self):
        # X^2 = (X+Y)(X-Y) + (Y^2-1) + 1
        assert normal_form(P("X^2"), [P("X-Y"), P("Y^2-1")], lex) == P("1")

    def test_ambient_mismatch(self):
        other = PolyRing(QQ, ["U"])
        with pytest.raises(AmbientError):
            normal_form(P("X"), [poly(other, "U")], lex)

    def test_division_certificate(self):
        f, G = P("X^3*Y + 2*X*Y^2 - 7"), [P("X*Y - 1"), P("Y^2 + X")]
        qs, r = divide(f, G, degrevlex)
        assert sum((q * g for q, g in zip(qs, G)), r) == f


class TestGroebner:
    def test_single_monomial(self):
        for order in (lex, degrevlex):
            assert reduced_groebner([P("X*Y")], order) == [P("X*Y")]

    def test_worked_basis(self):
        G = reduced_groebner([P("X^2-1"), P("X*Y-1")], lex)
        assert set(G) == {P("X-Y"), P("Y^2-1")}
        assert same_ideal(G, [P("X^2-1"), P("X*Y-1")], lex)

    def test_zero_ideal(self):
        assert reduced_groebner([], lex) == []

    def test_unit_ideal(self):
        assert reduced_groebner([P("X"), P("X+1")], lex) == [P("1")]

    def test_finite_field(self):
        R = PolyRing(GF(2), ["x", "y"])
        G = reduced_groebner([poly(R, "x*y"), poly(R, "x^3"), poly(R, "y^3")], degrevlex)
        assert len(standard_monomials(G, degrevlex, 2)) == 5

    def test_infinite_staircase(self):
        assert standard_monomials(reduced_groebner([P("X*Y")], degrevlex), degrevlex, 2) is None


class TestEliminate:
    def test_intersection_by_tag(self):
        R = PolyRing(QQ, ["u", "X", "Y"])
        out = eliminate([poly(R, "u*X"), poly(R, "(1-u)*Y")], ["u"])
        assert same_ideal(out, [poly(R, "X*Y")], degrevlex)

    def test_parametric_curve(self):
        R = PolyRing(QQ, ["u", "X", "Y"])
        out = eliminate([poly(R, "X-u"), poly(R, "Y-u^2")], ["u"])
        assert same_ideal(out, [poly(R, "Y-X^2")], degrevlex)

    def test_nothing_dropped(self):
        assert eliminate([P("X*Y")], []) == [P("X*Y")]

    def test_block_order_prefers_dropped(self):
        order = BlockOrder([0])
        assert order.key((1, 0)) > order.key((0, 5))


class TestSquareRoots:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 13, 17, 97, 101])
    def test_sqrt_mod_prime_against_table(self, p):
        squares = {x * x % p for x in range(p)}
        for c in range(p):
            s = sqrt_mod_prime(c, p)
            if c in squares:
                assert s is not None and s * s % p == c
            else:
                assert s is None

    def test_poly_sqrt(self):
        assert poly_sqrt(P("X^2 + 2*X*Y + Y^2")) in (P("X+Y"), P("-X-Y"))
        assert poly_sqrt(P("X^2 + Y")) is None
        assert poly_sqrt(P("4*Y^2")) in (P("2*Y"), P("-2*Y"))

    def test_poly_sqrt_char2(self):
        R = PolyRing(GF(2), ["x", "y"])
        assert poly_sqrt(poly(R, "x^2 + y^4")) == poly(R, "x + y^2")
        assert poly_sqrt(poly(R, "x*y")) is None


# random polynomials over GF(5)[x, y, z]; degrees kept small so lex bases stay desk-sized
R5 = PolyRing(GF(5), ["x", "y", "z"])
exps = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))
polys = st.dictionaries(exps, st.integers(1, 4), min_size=1, max_size=4).map(
    lambda d: sum((R5.monomial(e, c) for e, c in d.items()), R5.zero())
)


@given(st.lists(polys, min_size=1, max_size=3), st.sampled_from([lex, degrevlex]))
def test_groebner_properties(gens, order):
    G = reduced_groebner(gens, order)
    assert is_groebner(G, order)
    assert reduced_groebner(G, order) == G  # idempotent
    assert all(not normal_form(g, G, order) for g in gens)


@given(st.lists(polys, min_size=1, max_size=3), st.lists(polys, min_size=1, max_size=3))
def test_membership_of_combinations(gens, mults):
    G = reduced_groebner(gens, degrevlex)
    f = sum((m * g for m, g in zip(mults, gens)), R5.zero())
    assert not normal_form(f, G, degrevlex)


@given(polys, st.lists(polys, min_size=1, max_size=3))
def test_remainder_difference_in_ideal(f, gens):
    G = reduced_groebner(gens, degrevlex)
    r = normal_form(f, gens, degrevlex)
    assert not normal_form(f - r, G, degrevlex)


@given(polys)
def test_poly_sqrt_of_square(f):
    s = poly_sqrt(f * f)
    assert s is not None and s * s == f * f
