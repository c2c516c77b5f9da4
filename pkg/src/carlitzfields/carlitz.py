"""Additive polynomials, the Carlitz action, and torsion Toeplitz matrices.

An additive polynomial over GF(Q) is sum c_i * u^(Q^i) with c_i in
GF(Q)[T]; composition twists coefficients by Q-power Frobenius.  The
Carlitz image of M in GF(Q)[T] is built from C(T)(u) = T*u + u^Q by
composition and GF(Q)-linearity.

The torsion side: for a monic linear base wp with wp^alpha the residue
modulus, a basis lambda_1, ..., lambda_alpha with C(wp)(lambda_k) =
lambda_{k-1} (lambda_0 = 0) turns the action of a residue D with
wp-digits (a_0, ..., a_{alpha-1}) into the upper unitriangular Toeplitz
matrix with first row the digit vector: D . lambda_j = sum_l a_l *
lambda_{j-l}.
"""

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NotAUnit,
    ZeroPolynomial,
)
from .ff import FieldElement, frobenius
from .polyring import (
    Polynomial,
    RationalFunction,
    Residue,
    T_gen,
    padic_digits,
    poly,
)

__all__ = [
    "AdditivePolynomial",
    "carlitz_poly",
    "carlitz_apply",
    "TorsionBasisVector",
    "basis_vector",
    "torsion_action",
    "ToeplitzMatrix",
    "toeplitz_of",
]


class AdditivePolynomial:
    """sum coeffs[i] * u^(Q^i), coefficients in GF(Q)[T]."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        object.__setattr__(self, "spec", spec)
        i = len(coeffs)
        while i > 0 and coeffs[i - 1].is_zero():
            i -= 1
        object.__setattr__(self, "coeffs", tuple(coeffs[:i]))

    def __setattr__(self, *a):
        raise AttributeError("AdditivePolynomial is immutable")

    @property
    def twist(self):
        return self.spec.order

    def __eq__(self, other):
        if not isinstance(other, AdditivePolynomial):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __add__(self, other):
        if other.spec != self.spec:
            raise FieldMismatch("additive polynomials over different fields")
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return AdditivePolynomial(self.spec, out)

    def scale(self, c):
        """Left multiplication by a field constant (no twist)."""
        cp = poly(self.spec, (c,))
        return AdditivePolynomial(self.spec, tuple(cp * f for f in self.coeffs))

    def compose(self, other):
        """self after other; coefficients of `other` get Q^i-powered."""
        if other.spec != self.spec:
            raise FieldMismatch("additive polynomials over different fields")
        Q = self.twist
        if not self.coeffs or not other.coeffs:
            return AdditivePolynomial(self.spec, ())
        zero = poly(self.spec, ())
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * (b ** (Q**i))
        return AdditivePolynomial(self.spec, out)

    def apply(self, u):
        """Evaluate at u, which may be a Polynomial, Residue,
        RationalFunction, or any object exposing a compatible ring via
        u.ring.lift_poly."""
        Q = self.twist
        if isinstance(u, Polynomial):
            acc = poly(self.spec, ())
            for i, c in enumerate(self.coeffs):
                if not c.is_zero():
                    acc = acc + c * (u ** (Q**i))
            return acc
        if isinstance(u, Residue):
            acc = Residue(u.modulus, poly(self.spec, ()))
            for i, c in enumerate(self.coeffs):
                if not c.is_zero():
                    acc = acc + Residue(u.modulus, c) * (u ** (Q**i))
            return acc
        if isinstance(u, RationalFunction):
            acc = RationalFunction(poly(self.spec, ()))
            for i, c in enumerate(self.coeffs):
                if not c.is_zero():
                    acc = acc + RationalFunction(c) * (u ** (Q**i))
            return acc
        ring = getattr(u, "ring", None)
        if ring is not None and hasattr(ring, "lift_poly"):
            acc = ring.zero()
            for i, c in enumerate(self.coeffs):
                if not c.is_zero():
                    acc = acc + ring.lift_poly(c) * (u ** (Q**i))
            return acc
        raise TypeError("cannot apply additive polynomial to %r" % (u,))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append("(%s)*u^%d" % (c.text(), self.twist**i))
        return "Additive(%s)" % (" + ".join(parts) or "0")


def carlitz_poly(M):
    """Carlitz image of a nonzero M in GF(Q)[T] as an AdditivePolynomial."""
    if M.is_zero():
        raise ZeroPolynomial("the Carlitz image of 0 carries no information")
    spec = M.spec
    # C(T) = T*u + u^Q
    ct = AdditivePolynomial(spec, (T_gen(spec), poly(spec, (1,))))
    # identity map u -> u
    power = AdditivePolynomial(spec, (poly(spec, (1,)),))
    acc = AdditivePolynomial(spec, ())
    for j, m in enumerate(M.coeffs):
        if j > 0:
            power = ct.compose(power)
        if m:
            acc = acc + power.scale(m)
    return acc


def carlitz_apply(M, u):
    """Carlitz action of M on u (any supported ambient ring)."""
    return carlitz_poly(M).apply(u)


class TorsionBasisVector:
    """Coordinates on the torsion basis lambda_1 .. lambda_alpha."""

    __slots__ = ("spec", "coords")

    def __init__(self, spec, coords):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, *a):
        raise AttributeError("TorsionBasisVector is immutable")

    @property
    def alpha(self):
        return len(self.coords)

    def __eq__(self, other):
        if not isinstance(other, TorsionBasisVector):
            return NotImplemented
        return self.spec == other.spec and self.coords == other.coords

    def __add__(self, other):
        if other.spec != self.spec or other.alpha != self.alpha:
            raise DimensionMismatch("torsion vectors of different shape")
        return TorsionBasisVector(
            self.spec, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __repr__(self):
        from .ff import fmt_element

        terms = [
            "%s*L%d" % (fmt_element(c), k + 1)
            for k, c in enumerate(self.coords)
            if c
        ]
        return "Torsion(%s)" % (" + ".join(terms) or "0")


def basis_vector(spec, alpha, k):
    """lambda_k as a coordinate vector (1-based k)."""
    if not 1 <= k <= alpha:
        raise DimensionMismatch("basis index %d outside 1..%d" % (k, alpha))
    coords = [spec.zero] * alpha
    coords[k - 1] = spec.one
    return TorsionBasisVector(spec, coords)


class ToeplitzMatrix:
    """Upper unitriangular-shape Toeplitz matrix, stored as its first row.

    Entry (i, j), 0-based, is first_row[j-i] for j >= i and 0 below the
    diagonal.  Products, inverses, and vector application all reduce to
    truncated convolution of first rows, so the group of these matrices
    with invertible corner entry is abelian.
    """

    __slots__ = ("spec", "first_row")

    def __init__(self, spec, first_row):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "first_row", tuple(first_row))

    def __setattr__(self, *a):
        raise AttributeError("ToeplitzMatrix is immutable")

    @property
    def size(self):
        return len(self.first_row)

    @classmethod
    def identity(cls, spec, alpha):
        return cls(spec, (spec.one,) + (spec.zero,) * (alpha - 1))

    def __eq__(self, other):
        if not isinstance(other, ToeplitzMatrix):
            return NotImplemented
        return self.spec == other.spec and self.first_row == other.first_row

    def __hash__(self):
        return hash((self.spec.order, tuple(c.coeffs for c in self.first_row)))

    def __mul__(self, other):
        if not isinstance(other, ToeplitzMatrix):
            return NotImplemented
        if other.spec != self.spec or other.size != self.size:
            raise DimensionMismatch("Toeplitz shapes differ")
        n = self.size
        zero = self.spec.zero
        out = [zero] * n
        for i, a in enumerate(self.first_row):
            if not a:
                continue
            for j in range(n - i):
                b = other.first_row[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return ToeplitzMatrix(self.spec, out)

    def inverse(self):
        a = self.first_row
        if not a[0]:
            raise NotAUnit("corner entry is zero")
        inv0 = a[0].inverse()
        n = self.size
        b = [inv0] + [self.spec.zero] * (n - 1)
        for mu in range(1, n):
            s = self.spec.zero
            for k in range(1, mu + 1):
                if a[k]:
                    s = s + a[k] * b[mu - k]
            b[mu] = -(inv0 * s)
        return ToeplitzMatrix(self.spec, b)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = ToeplitzMatrix.identity(self.spec, self.size)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def apply(self, vec):
        """Matrix times coordinate vector (TorsionBasisVector or tuple)."""
        coords = vec.coords if isinstance(vec, TorsionBasisVector) else tuple(vec)
        n = self.size
        if len(coords) != n:
            raise DimensionMismatch("vector length %d, matrix size %d" % (len(coords), n))
        zero = self.spec.zero
        out = []
        for i in range(n):
            s = zero
            for mu in range(n - i):
                a = self.first_row[mu]
                if a:
                    s = s + a * coords[i + mu]
            out.append(s)
        if isinstance(vec, TorsionBasisVector):
            return TorsionBasisVector(self.spec, out)
        return tuple(out)

    def rows(self):
        """Dense row tuples, for display and generic matrix consumers."""
        n = self.size
        zero = self.spec.zero
        return tuple(
            tuple(self.first_row[j - i] if j >= i else zero for j in range(n))
            for i in range(n)
        )

    def entrywise_power(self, q):
        """Apply x -> x^q to every entry (q a subfield Frobenius size)."""
        return ToeplitzMatrix(
            self.spec, tuple(frobenius(c, q) for c in self.first_row)
        )

    def __repr__(self):
        from .ff import fmt_element

        return "Toeplitz[%s]" % ", ".join(fmt_element(c) for c in self.first_row)


def toeplitz_of(D, base=None):
    """Toeplitz matrix of a residue's action on the torsion basis."""
    digits = padic_digits(D, base)
    return ToeplitzMatrix(D.spec, digits)


def torsion_action(D, vec, base=None):
    """Action of a unit residue D on a torsion coordinate vector."""
    digits = padic_digits(D, base)
    if not digits[0]:
        raise NotAUnit("residue is divisible by the base, not a unit")
    if len(digits) != vec.alpha:
        raise DimensionMismatch(
            "residue modulus depth %d, vector depth %d" % (len(digits), vec.alpha)
        )
    return ToeplitzMatrix(D.spec, digits).apply(vec)
