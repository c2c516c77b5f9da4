"""Carlitz images, composition law, torsion Toeplitz action."""

import pytest
from hypothesis import given, strategies as st

from carlitzfields import errors
from carlitzfields.carlitz import (
    ToeplitzMatrix,
    basis_vector,
    carlitz_apply,
    carlitz_poly,
    toeplitz_of,
    torsion_action,
)
from carlitzfields.ff import build_field
from carlitzfields.polyring import Residue, T_gen, poly

F2 = build_field(2, 1)
F3 = build_field(3, 1)
F4 = build_field(2, 2)
F9 = build_field(3, 2)


class TestCarlitzPoly:
    def test_generator(self):
        c = carlitz_poly(T_gen(F2))
        assert c.coeffs == (T_gen(F2), poly(F2, (1,)))

    def test_t_squared_f2(self):
        # C(T^2)(u) = T^2 u + (T^2+T) u^2 + u^4
        c = carlitz_poly(poly(F2, (0, 0, 1)))
        assert c.coeffs == (
            poly(F2, (0, 0, 1)),
            poly(F2, (0, 1, 1)),
            poly(F2, (1,)),
        )

    def test_t_squared_f4(self):
        # over GF(4): middle coefficient is T + T^4
        c = carlitz_poly(poly(F4, (0, 0, 1)))
        assert c.coeffs == (
            poly(F4, (0, 0, 1)),
            poly(F4, (0, 1, 0, 0, 1)),
            poly(F4, (1,)),
        )

    def test_constants_are_scalars(self):
        c = carlitz_poly(poly(F9, (F9.element(2),)))
        assert c.coeffs == (poly(F9, (2,)),)

    def test_zero_rejected(self):
        with pytest.raises(errors.ZeroPolynomial):
            carlitz_poly(poly(F2, ()))

    def test_shifted_square_display(self):
        # C((T-rho)^2) = (T-rho)^2 u + ((T-rho)^Q + (T-rho)) u^Q + u^(Q^2)
        for spec in (F2, F3, F4):
            Q = spec.order
            for rho_code in range(spec.order):
                rho = spec.from_int(rho_code)
                wp = poly(spec, (-rho, spec.one))
                c = carlitz_poly(wp * wp)
                assert c.coeffs[0] == wp * wp
                assert c.coeffs[1] == wp**Q + wp
                assert c.coeffs[2] == poly(spec, (1,))

    @given(
        st.lists(st.integers(0, 1), min_size=1, max_size=3),
        st.lists(st.integers(0, 1), min_size=1, max_size=3),
    )
    def test_composition_law_f2(self, mc, nc):
        M, N = poly(F2, mc), poly(F2, nc)
        if M.is_zero() or N.is_zero():
            return
        lhs = carlitz_poly(M * N)
        rhs = carlitz_poly(M).compose(carlitz_poly(N))
        assert lhs == rhs

    @given(
        st.lists(st.integers(0, 8), min_size=1, max_size=2),
        st.lists(st.integers(0, 8), min_size=1, max_size=2),
    )
    def test_composition_law_f9(self, mc, nc):
        M = poly(F9, [F9.from_int(c) for c in mc])
        N = poly(F9, [F9.from_int(c) for c in nc])
        if M.is_zero() or N.is_zero():
            return
        assert carlitz_poly(M * N) == carlitz_poly(M).compose(carlitz_poly(N))

    def test_additivity_in_m(self):
        a, b = poly(F3, (1, 1)), poly(F3, (0, 0, 2))
        ca, cb, cab = carlitz_poly(a), carlitz_poly(b), carlitz_poly(a + b)
        assert ca + cb == cab


class TestCarlitzApply:
    def test_t_on_t(self):
        # C(T)(T) = T*T + T^2 = 0 in char 2
        assert carlitz_apply(T_gen(F2), T_gen(F2)).is_zero()

    def test_poly_vs_residue_consistency(self):
        M = poly(F3, (0, 0, 1))
        N = poly(F3, (0, 0, 0, 0, 1))  # T^4
        u = poly(F3, (1, 2))
        direct = carlitz_apply(M, u) % N
        modded = carlitz_apply(M, Residue(N, u))
        assert modded.rep == direct

    def test_torsion_annihilation(self):
        # anything killed by C(T) over GF(2) satisfies T*u + u^2 = 0
        M = T_gen(F2)
        for u in (poly(F2, ()), T_gen(F2)):
            assert carlitz_apply(M, u).is_zero()


class TestToeplitz:
    def test_action_digits(self):
        # modulus T^2 over GF(4); D = a0 + a1*T acts on lambda_2 as
        # a1*lambda_1 + a0*lambda_2
        m = poly(F4, (0, 0, 1))
        a0, a1 = F4.element((1, 1)), F4.element((0, 1))
        D = Residue(m, poly(F4, (a0, a1)))
        out = torsion_action(D, basis_vector(F4, 2, 2))
        assert out.coords == (a1, a0)

    def test_identity_action(self):
        m = poly(F3, (0, 0, 0, 1))
        one = Residue(m, poly(F3, (1,)))
        v = basis_vector(F3, 3, 3)
        assert torsion_action(one, v) == v

    def test_non_unit_rejected(self):
        m = poly(F2, (0, 0, 1))
        with pytest.raises(errors.NotAUnit):
            torsion_action(Residue(m, T_gen(F2)), basis_vector(F2, 2, 1))

    def test_matrix_shape(self):
        m = poly(F3, (0, 0, 0, 1))
        D = Residue(m, poly(F3, (1, 2, 1)))
        t = toeplitz_of(D)
        rows = t.rows()
        assert rows[0] == (F3.element(1), F3.element(2), F3.element(1))
        assert rows[1] == (F3.element(0), F3.element(1), F3.element(2))
        assert rows[2] == (F3.element(0), F3.element(0), F3.element(1))

    def test_inverse_first_row(self):
        # (1, a, b)^-1 = (1, -a, a^2 - b)
        a, b = F9.element((1, 1)), F9.element((0, 2))
        t = ToeplitzMatrix(F9, (F9.one, a, b))
        assert t.inverse().first_row == (F9.one, -a, a * a - b)
        assert t * t.inverse() == ToeplitzMatrix.identity(F9, 3)

    def test_abelian(self):
        x = ToeplitzMatrix(F4, (F4.one, F4.element((0, 1)), F4.element((1, 1))))
        y = ToeplitzMatrix(F4, (F4.element((0, 1)), F4.one, F4.zero))
        assert x * y == y * x

    def test_singular_inverse_rejected(self):
        t = ToeplitzMatrix(F4, (F4.zero, F4.one))
        with pytest.raises(errors.NotAUnit):
            t.inverse()


class TestActionIsRepresentation:
    def _units(self, spec, wp, alpha):
        m = wp**alpha
        q = spec.order
        for code in range(q ** m.degree):
            coeffs = []
            c = code
            for _ in range(m.degree):
                coeffs.append(spec.from_int(c % q))
                c //= q
            D = Residue(m, poly(spec, coeffs))
            if D.is_unit():
                yield D

    @pytest.mark.parametrize(
        "p,r,alpha", [(2, 2, 3), (3, 1, 4), (3, 2, 2)]
    )
    def test_multiplicativity(self, p, r, alpha):
        spec = build_field(p, r)
        wp = T_gen(spec)
        units = list(self._units(spec, wp, alpha))
        mats = {D: toeplitz_of(D) for D in units}
        for D1 in units:
            for D2 in units:
                assert mats[D1] * mats[D2] == toeplitz_of(D1 * D2)

    def test_action_matches_carlitz_on_residues(self):
        # the Toeplitz action of D on lambda-coordinates must agree with
        # multiplying D inside the residue ring under the digit
        # correspondence v <-> sum v_k wp^(alpha-k)
        spec = F3
        wp = poly(F3, (2, 1))  # T - 1
        alpha = 3
        m = wp**alpha
        for D in self._units(spec, wp, alpha):
            digits_D = toeplitz_of(D, wp)
            for k in range(1, alpha + 1):
                v = basis_vector(spec, alpha, k)
                out = digits_D.apply(v)
                # residue-side: D * wp^(alpha-k) has digit j of the
                # product equal to coordinate (alpha - j) of the action
                prod = D * Residue(m, wp ** (alpha - k))
                from carlitzfields.polyring import padic_digits

                pd = padic_digits(prod, wp)
                for j in range(alpha):
                    assert pd[j] == out.coords[alpha - 1 - j]
