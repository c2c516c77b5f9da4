"""Univariate polynomials, residue rings, and rational functions over a field.

Polynomials are immutable coefficient tuples, low degree first, with no
trailing zeros; the zero polynomial has the empty tuple and degree -1.
Residue arithmetic carries its modulus and refuses to mix moduli.
Everything here is generic over any FieldSpec from the field layer.
"""

from .config import charge
from .errors import (
    ConstantPolynomial,
    DegreeNotDividing,
    DivisionByZeroPoly,
    FieldMismatch,
    InternalInconsistency,
    ModulusNotAPower,
    NonLinearBase,
    NotAUnit,
    NotIrreducible,
    NoSuchRoot,
    ZeroPolynomial,
)
from .ff import FieldElement, embed, fmt_element

__all__ = [
    "Polynomial",
    "Residue",
    "RationalFunction",
    "SplittingData",
    "poly",
    "poly_from_ints",
    "T_gen",
    "poly_gcd",
    "poly_powmod",
    "is_irreducible",
    "canonical_irreducible",
    "split_over_extension",
    "unit_order",
    "padic_digits",
    "embed_poly",
]


class Polynomial:
    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        object.__setattr__(self, "spec", spec)
        # normalize: drop trailing zeros
        i = len(coeffs)
        while i > 0 and not coeffs[i - 1]:
            i -= 1
        object.__setattr__(self, "coeffs", tuple(coeffs[:i]))

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.spec.one

    def leading(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError("expected Polynomial, got %r" % (other,))
        if other.spec is not self.spec and other.spec != self.spec:
            raise FieldMismatch(
                "polynomials over %r and %r" % (self.spec, other.spec)
            )

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec.order, tuple(c.coeffs for c in self.coeffs)))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self.spec, out)

    def __neg__(self):
        return Polynomial(self.spec, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return Polynomial(self.spec, tuple(c * other for c in self.coeffs))
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(self.spec, ())
        zero = self.spec.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Polynomial(self.spec, out)

    def __rmul__(self, other):
        if isinstance(other, FieldElement):
            return self * other
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        acc = Polynomial(self.spec, (self.spec.one,))
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise DivisionByZeroPoly("division by the zero polynomial")
        spec = self.spec
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Polynomial(spec, ()), self
        inv_lead = other.coeffs[-1].inverse()
        quot = [spec.zero] * (dq + 1)
        db = other.degree
        for k in range(dq, -1, -1):
            c = rem[db + k] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[j + k] = rem[j + k] - c * b
        return Polynomial(spec, quot), Polynomial(spec, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        inv = self.coeffs[-1].inverse()
        return Polynomial(self.spec, tuple(c * inv for c in self.coeffs))

    def evaluate(self, x):
        if not isinstance(x, FieldElement):
            raise TypeError("evaluate expects a FieldElement")
        if x.spec != self.spec:
            raise FieldMismatch("evaluation point lives in a different field")
        acc = self.spec.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k):
        """Multiply by T^k."""
        if self.is_zero():
            return self
        return Polynomial(self.spec, (self.spec.zero,) * k + self.coeffs)

    def __repr__(self):
        return "Poly(%s)" % (self.text(),)

    def text(self, var="T"):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(fmt_element(c))
            else:
                mono = var if i == 1 else "%s^%d" % (var, i)
                cs = fmt_element(c)
                parts.append(mono if cs == "1" else "%s*%s" % (cs, mono))
        return " + ".join(parts)

    def coeff_text(self):
        """Machine form: comma-joined coefficient codes, low to high."""
        return ",".join(_coeff_token(c) for c in self.coeffs)


def _coeff_token(c):
    if not any(c.coeffs[1:]):
        return str(c.coeffs[0])
    return "[" + ";".join(str(v) for v in c.coeffs) + "]"


def poly(spec, coeffs):
    """Polynomial from an iterable of FieldElements or ints, low to high."""
    return Polynomial(spec, tuple(spec.element(c) for c in coeffs))


def poly_from_ints(spec, ints):
    return poly(spec, list(ints))


def T_gen(spec):
    """The polynomial T."""
    return poly(spec, (0, 1))


def constant(spec, c):
    return poly(spec, (c,))


def poly_gcd(a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def poly_powmod(base, e, modulus):
    """base**e mod modulus by square and multiply."""
    if modulus.is_zero():
        raise DivisionByZeroPoly("zero modulus")
    if e < 0:
        raise ValueError("negative exponent")
    spec = base.spec
    acc = poly(spec, (1,)) % modulus
    base = base % modulus
    while e:
        if e & 1:
            acc = (acc * base) % modulus
        base = (base * base) % modulus
        e >>= 1
    return acc


def is_irreducible(f, budget=None):
    """Trial division by monic polynomials of degree up to deg(f)/2."""
    if f.degree <= 0:
        raise ConstantPolynomial("irreducibility needs degree >= 1")
    if f.degree == 1:
        return True
    spec = f.spec
    q = spec.order
    for d in range(1, f.degree // 2 + 1):
        charge(q**d, budget, "trial divisors of degree %d" % d)
        for g in _monic_of_degree(spec, d):
            if (f % g).is_zero():
                return False
    return True


def _monic_of_degree(spec, d):
    # all monic degree-d polynomials, lower coefficients in code order
    q = spec.order
    for code in range(q**d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(spec.from_int(c % q))
            c //= q
        coeffs.append(spec.one)
        yield Polynomial(spec, coeffs)


def canonical_irreducible(spec, degree, budget=None):
    """First monic irreducible of the given degree in enumeration order."""
    if degree < 1:
        raise ConstantPolynomial("degree must be >= 1")
    charge(spec.order**degree, budget, "irreducible scan of degree %d" % degree)
    for f in _monic_of_degree(spec, degree):
        if is_irreducible(f, budget):
            return f
    raise NotIrreducible("no irreducible of degree %d found" % degree)


def embed_poly(f, target_spec, budget=None):
    """Apply the canonical field embedding to every coefficient."""
    return Polynomial(
        target_spec, tuple(embed(c, target_spec, budget) for c in f.coeffs)
    )


class SplittingData:
    """Roots of an irreducible base-field polynomial in an extension.

    roots[0] is the enumeration-first root in the extension field and
    roots[i+1] = roots[i] ** q (q the base field order), so the tuple
    is a full Frobenius orbit in a deterministic order.
    """

    __slots__ = ("base", "ext_spec", "q", "roots")

    def __init__(self, base, ext_spec, q, roots):
        self.base = base
        self.ext_spec = ext_spec
        self.q = q
        self.roots = roots

    def __repr__(self):
        return "SplittingData(%s over GF(%d): %d roots in GF(%d))" % (
            self.base.text(),
            self.q,
            len(self.roots),
            self.ext_spec.order,
        )


def split_over_extension(P, d, ext_spec=None, budget=None):
    """Split an irreducible P over GF(q) inside GF(q^d).

    Requires deg(P) | d (else DegreeNotDividing) and P irreducible
    (else NotIrreducible).  Returns SplittingData with the Frobenius
    orbit of the enumeration-first root; the reassembled product of
    (T - root) factors is checked against the embedded P.
    """
    from .ff import build_field

    s = P.degree
    if s < 1:
        raise ConstantPolynomial("cannot split a constant")
    if not P.is_monic():
        P = P.monic()
    if d % s != 0:
        raise DegreeNotDividing("deg P = %d does not divide d = %d" % (s, d))
    if not is_irreducible(P, budget):
        raise NotIrreducible("%s is reducible" % P.text())
    spec = P.spec
    if ext_spec is None:
        ext_spec = build_field(spec.p, spec.r * d, budget=budget)
    big = embed_poly(P, ext_spec, budget)
    charge(ext_spec.order, budget, "root scan in GF(%d)" % ext_spec.order)
    first = None
    for x in ext_spec.elements():
        if not big.evaluate(x):
            first = x
            break
    if first is None:
        raise NoSuchRoot("%s has no root in GF(%d)" % (P.text(), ext_spec.order))
    q = spec.order
    roots = [first]
    from .ff import frobenius

    cur = frobenius(first, q)
    while cur != first:
        roots.append(cur)
        cur = frobenius(cur, q)
    if len(roots) != s:
        raise InternalInconsistency(
            "Frobenius orbit size != degree", expected=s, observed=len(roots)
        )
    prod = poly(ext_spec, (1,))
    for rho in roots:
        prod = prod * Polynomial(ext_spec, (-rho, ext_spec.one))
    if prod != big:
        raise InternalInconsistency(
            "root product does not reassemble the modulus",
            expected=big.coeffs,
            observed=prod.coeffs,
        )
    return SplittingData(P, ext_spec, q, tuple(roots))


class Residue:
    """An element of spec[T]/(modulus); refuses mixed-modulus arithmetic."""

    __slots__ = ("modulus", "rep")

    def __init__(self, modulus, rep):
        if modulus.is_zero():
            raise DivisionByZeroPoly("zero modulus")
        if not modulus.is_monic():
            modulus = modulus.monic()
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "rep", rep % modulus)

    def __setattr__(self, *a):
        raise AttributeError("Residue is immutable")

    @property
    def spec(self):
        return self.modulus.spec

    def _check(self, other):
        if not isinstance(other, Residue):
            raise TypeError("expected Residue, got %r" % (other,))
        if other.modulus != self.modulus:
            raise FieldMismatch(
                "residues mod %s and mod %s" % (self.modulus.text(), other.modulus.text())
            )

    def __eq__(self, other):
        if not isinstance(other, Residue):
            return NotImplemented
        return self.modulus == other.modulus and self.rep == other.rep

    def __hash__(self):
        return hash((hash(self.modulus), hash(self.rep)))

    def __bool__(self):
        return bool(self.rep)

    def __add__(self, other):
        self._check(other)
        return Residue(self.modulus, self.rep + other.rep)

    def __neg__(self):
        return Residue(self.modulus, -self.rep)

    def __sub__(self, other):
        self._check(other)
        return Residue(self.modulus, self.rep - other.rep)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return Residue(self.modulus, self.rep * other)
        self._check(other)
        return Residue(self.modulus, self.rep * other.rep)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return Residue(self.modulus, poly_powmod(self.rep, e, self.modulus))

    def is_unit(self):
        g = poly_gcd(self.rep, self.modulus)
        return (not g.is_zero()) and g.degree == 0

    def inverse(self):
        g, u = _half_xgcd(self.rep, self.modulus)
        if g.degree != 0:
            raise NotAUnit("%s is not invertible mod %s" % (self.rep.text(), self.modulus.text()))
        inv_c = g.coeffs[0].inverse()
        return Residue(self.modulus, (u * inv_c) % self.modulus)

    def __repr__(self):
        return "Residue(%s mod %s)" % (self.rep.text(), self.modulus.text())


def _half_xgcd(a, m):
    # returns (g, u) with u*a = g mod m
    spec = a.spec
    r0, r1 = a % m, m
    u0, u1 = poly(spec, (1,)), poly(spec, ())
    while not r1.is_zero():
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        u0, u1 = u1, u0 - q * u1
    return r0, u0


def unit_order(D, budget=None):
    """Multiplicative order of a unit residue by direct power iteration."""
    if not D.is_unit():
        raise NotAUnit("residue is not a unit")
    charge(D.spec.order ** D.modulus.degree, budget, "unit order iteration")
    one = Residue(D.modulus, poly(D.spec, (1,)))
    acc = D
    n = 1
    limit = D.spec.order ** max(D.modulus.degree, 1)
    while acc != one:
        acc = acc * D
        n += 1
        if n > limit:
            raise InternalInconsistency(
                "unit order exceeded group size", expected=limit, observed=n
            )
    return n


def padic_digits(D, base=None):
    """Digits of a residue in powers of a monic linear base.

    The modulus must be base**alpha for a monic linear polynomial; with
    base None the linear factor is detected from the modulus.  Returns
    a length-alpha tuple of FieldElements, lowest digit first, with
    rep = sum digits[k] * base**k.
    """
    modulus = D.modulus
    spec = modulus.spec
    alpha = modulus.degree
    if alpha < 1:
        raise ConstantPolynomial("modulus must have positive degree")
    if base is None:
        root = None
        for x in spec.elements():
            if not modulus.evaluate(x):
                root = x
                break
        if root is None:
            raise NonLinearBase("modulus has no linear factor in its own field")
        base = Polynomial(spec, (-root, spec.one))
    else:
        if base.degree != 1 or not base.is_monic():
            raise NonLinearBase("base must be monic linear")
        if base.spec != spec:
            raise FieldMismatch("base over a different field")
    if base**alpha != modulus:
        raise ModulusNotAPower(
            "modulus %s is not %s^%d" % (modulus.text(), base.text(), alpha)
        )
    digits = []
    cur = D.rep
    for _ in range(alpha):
        q, r = divmod(cur, base)
        digits.append(r.coeffs[0] if r.coeffs else spec.zero)
        cur = q
    if not cur.is_zero():
        raise InternalInconsistency(
            "digit extraction left a remainder", observed=cur.coeffs
        )
    return tuple(digits)


class RationalFunction:
    """Quotient of two polynomials, kept reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = poly(num.spec, (1,))
        num._check(den)
        if den.is_zero():
            raise DivisionByZeroPoly("zero denominator")
        if num.is_zero():
            den = poly(num.spec, (1,))
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lead = den.coeffs[-1]
            if lead != num.spec.one:
                inv = lead.inverse()
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    @property
    def spec(self):
        return self.num.spec

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    def __add__(self, other):
        other = _as_rat(other, self.spec)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rat(other, self.spec))

    def __rsub__(self, other):
        return _as_rat(other, self.spec) - self

    def __mul__(self, other):
        other = _as_rat(other, self.spec)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        other = _as_rat(other, self.spec)
        if other.is_zero():
            raise DivisionByZeroPoly("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, e):
        if e < 0:
            if self.is_zero():
                raise DivisionByZeroPoly("zero to a negative power")
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num**e, self.den**e)

    def __repr__(self):
        if self.den.degree == 0:
            return "Rat(%s)" % self.num.text()
        return "Rat((%s)/(%s))" % (self.num.text(), self.den.text())


def _as_rat(v, spec):
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, Polynomial):
        return RationalFunction(v)
    if isinstance(v, FieldElement):
        return RationalFunction(poly(spec, (v,)))
    if isinstance(v, int):
        return RationalFunction(poly(spec, (v,)))
    raise TypeError("cannot coerce %r to a rational function" % (v,))
