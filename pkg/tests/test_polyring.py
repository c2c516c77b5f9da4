"""Polynomial layer: division, irreducibility, splitting, digits."""

import pytest
from hypothesis import given, strategies as st

from carlitzfields import errors
from carlitzfields.ff import build_field, frobenius
from carlitzfields.polyring import (
    Polynomial,
    RationalFunction,
    Residue,
    T_gen,
    canonical_irreducible,
    embed_poly,
    is_irreducible,
    padic_digits,
    poly,
    poly_gcd,
    poly_powmod,
    split_over_extension,
    unit_order,
)

F2 = build_field(2, 1)
F3 = build_field(3, 1)
F4 = build_field(2, 2)
F9 = build_field(3, 2)


def rand_poly(spec, max_deg):
    return st.lists(
        st.integers(0, spec.order - 1), min_size=0, max_size=max_deg + 1
    ).map(lambda cs: poly(spec, [spec.from_int(c) for c in cs]))


class TestArithmetic:
    def test_add_mul_basics(self):
        f = poly(F2, (1, 1))  # T + 1
        assert (f * f).coeffs == poly(F2, (1, 0, 1)).coeffs  # T^2 + 1 in char 2
        assert (f - f).is_zero()
        assert (f + f).is_zero()

    def test_degree_and_zero(self):
        assert poly(F3, ()).degree == -1
        assert poly(F3, (0, 0)).degree == -1
        assert poly(F3, (0, 0, 2)).degree == 2

    @given(rand_poly(F9, 4), rand_poly(F9, 3))
    def test_divmod_round_trip(self, a, b):
        if b.is_zero():
            with pytest.raises(errors.DivisionByZeroPoly):
                divmod(a, b)
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree

    @given(rand_poly(F4, 4), rand_poly(F4, 4), rand_poly(F4, 3))
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a

    def test_gcd_example(self):
        a = poly(F2, (1, 0, 1))  # T^2+1 = (T+1)^2
        b = poly(F2, (1, 1))
        assert poly_gcd(a, b) == b

    @given(rand_poly(F9, 3), rand_poly(F9, 3))
    def test_gcd_divides(self, a, b):
        g = poly_gcd(a, b)
        if g.is_zero():
            assert a.is_zero() and b.is_zero()
        else:
            assert (a % g).is_zero() and (b % g).is_zero()
            assert g.is_monic()

    def test_powmod(self):
        m = poly(F2, (1, 1, 1))
        assert poly_powmod(T_gen(F2), 3, m) == poly(F2, (1,))

    def test_field_mismatch(self):
        with pytest.raises(errors.FieldMismatch):
            poly(F4, (1,)) + poly(F9, (1,))

    def test_evaluate(self):
        f = poly(F3, (1, 0, 1))  # 1 + T^2
        assert f.evaluate(F3.element(1)) == F3.element(2)
        assert f.evaluate(F3.element(0)) == F3.element(1)


class TestIrreducibility:
    def test_known(self):
        assert is_irreducible(poly(F2, (1, 1, 1)))
        assert not is_irreducible(poly(F2, (1, 0, 1)))
        assert is_irreducible(poly(F3, (1, 0, 1)))
        assert not is_irreducible(poly(F3, (2, 0, 1)))  # T^2+2 = (T+1)(T+2)

    def test_constant_rejected(self):
        with pytest.raises(errors.ConstantPolynomial):
            is_irreducible(poly(F2, (1,)))

    def test_quadratics_over_f4_oracle(self):
        # degree 2 over GF(4): irreducible iff no root
        for f_coeffs in [(c0, c1, 1) for c0 in range(4) for c1 in range(4)]:
            f = poly(F4, [F4.from_int(c) for c in f_coeffs[:2]] + [F4.one])
            has_root = any(not f.evaluate(x) for x in F4.elements())
            assert is_irreducible(f) == (not has_root)

    def test_canonical_frozen(self):
        assert canonical_irreducible(F2, 1) == T_gen(F2)
        assert canonical_irreducible(F2, 2) == poly(F2, (1, 1, 1))
        assert canonical_irreducible(F3, 2) == poly(F3, (1, 0, 1))
        assert canonical_irreducible(F2, 3) == poly(F2, (1, 1, 0, 1))


class TestSplitting:
    def test_f2_quadratic(self):
        sd = split_over_extension(poly(F2, (1, 1, 1)), 2)
        assert sd.ext_spec.order == 4
        assert tuple(r.coeffs for r in sd.roots) == ((0, 1), (1, 1))

    def test_f3_quadratic(self):
        sd = split_over_extension(poly(F3, (1, 0, 1)), 2)
        assert tuple(r.coeffs for r in sd.roots) == ((0, 1), (0, 2))

    def test_orbit_structure(self):
        sd = split_over_extension(canonical_irreducible(F2, 2), 4)
        assert len(sd.roots) == 2
        assert frobenius(sd.roots[0], 2) == sd.roots[1]
        assert frobenius(sd.roots[1], 2) == sd.roots[0]

    def test_linear_split(self):
        sd = split_over_extension(T_gen(F3), 2)
        assert sd.roots == (sd.ext_spec.zero,)

    def test_rejects(self):
        with pytest.raises(errors.DegreeNotDividing):
            split_over_extension(poly(F2, (1, 1, 1)), 3)
        with pytest.raises(errors.NotIrreducible):
            split_over_extension(poly(F2, (0, 0, 1)), 2)


class TestResidues:
    def test_unit_order_example(self):
        m = poly(F2, (1, 1, 1))
        t = Residue(m, T_gen(F2))
        assert unit_order(t) == 3

    def test_unit_detection(self):
        m = poly(F2, (0, 0, 1))  # T^2
        assert not Residue(m, T_gen(F2)).is_unit()
        assert Residue(m, poly(F2, (1, 1))).is_unit()
        with pytest.raises(errors.NotAUnit):
            unit_order(Residue(m, T_gen(F2)))

    def test_inverse(self):
        m = poly(F3, (0, 0, 0, 1))  # T^3
        u = Residue(m, poly(F3, (1, 1)))
        one = Residue(m, poly(F3, (1,)))
        assert u * u.inverse() == one

    def test_mixed_modulus(self):
        a = Residue(poly(F2, (1, 1, 1)), T_gen(F2))
        b = Residue(poly(F2, (0, 0, 1)), T_gen(F2))
        with pytest.raises(errors.FieldMismatch):
            a + b


class TestPadicDigits:
    def test_example(self):
        m = poly(F3, (0, 0, 0, 1))  # T^3
        d = Residue(m, poly(F3, (1, 1, 1)))
        assert padic_digits(d) == (F3.element(1), F3.element(1), F3.element(1))

    def test_shifted_base(self):
        # modulus (T-1)^2 over GF(3): digits of T = 1 + (T-1)
        base = poly(F3, (2, 1))
        m = base * base
        d = Residue(m, T_gen(F3))
        assert padic_digits(d, base) == (F3.element(1), F3.element(1))

    @given(st.integers(0, 80))
    def test_round_trip(self, code):
        m = poly(F9, (0, 0, 1))  # T^2 over GF(9)
        rep = poly(F9, (F9.from_int(code % 9), F9.from_int(code // 9)))
        digs = padic_digits(Residue(m, rep))
        rebuilt = poly(F9, digs)
        assert rebuilt == rep

    def test_rejects(self):
        with pytest.raises(errors.NonLinearBase):
            padic_digits(
                Residue(poly(F2, (1, 1, 1)), T_gen(F2))
            )  # irreducible quadratic has no linear factor
        with pytest.raises(errors.ModulusNotAPower):
            padic_digits(Residue(poly(F2, (0, 1, 1)), T_gen(F2)))  # T(T+1)
        with pytest.raises(errors.NonLinearBase):
            padic_digits(
                Residue(poly(F2, (0, 0, 1)), T_gen(F2)), base=poly(F2, (1, 1, 1))
            )


class TestRationalFunctions:
    def test_reduction(self):
        t = T_gen(F3)
        r = RationalFunction(t * t + poly(F3, (0, 1)) * poly(F3, (1,)), t)
        # (T^2 + T)/T reduces to T + 1
        assert r.num == poly(F3, (1, 1))
        assert r.den == poly(F3, (1,))

    def test_arith(self):
        t = T_gen(F9)
        one = RationalFunction(poly(F9, (1,)))
        a = one / RationalFunction(t)
        b = one / RationalFunction(t + poly(F9, (1,)))
        s = a - b
        # 1/T - 1/(T+1) = 1/(T(T+1))
        assert s == one / RationalFunction(t * (t + poly(F9, (1,))))

    def test_zero_den(self):
        with pytest.raises(errors.DivisionByZeroPoly):
            RationalFunction(poly(F2, (1,)), poly(F2, ()))

    def test_monic_den_normalization(self):
        t = T_gen(F3)
        r = RationalFunction(poly(F3, (1,)), t * F3.element(2))
        assert r.den.is_monic()


class TestEmbedPoly:
    def test_constants_lift(self):
        f = poly(F2, (1, 1, 1))
        g = embed_poly(f, F4)
        assert g.spec is F4
        assert [c.coeffs for c in g.coeffs] == [(1, 0), (1, 0), (1, 0)]
