"""Small finite fields with fully deterministic conventions.

An element of GF(p^r) is a coefficient tuple (c_0, ..., c_{r-1}) over
GF(p), low degree first, reduced modulo a monic degree-r modulus.  Two
orderings drive every "canonical" choice in the package and both come
from reading the tuple as the base-p integer sum(c_i * p^i):

* moduli: the default modulus of GF(p^r) is the monic irreducible of
  degree r whose lower-coefficient integer code is smallest;
* elements: enumeration visits codes 0, 1, ..., p^r - 1 in order, and
  "first" (primitive roots, fallback roots) always means first in that
  enumeration.

All arithmetic is exact.  Memoized tables (discrete logs, code-level
add/mul tables for the vectorized engines) are per-spec and write-once.
"""

from .config import charge, resolve_budget
from .errors import (
    BudgetExceeded,
    CompositeCharacteristic,
    InvalidSubfield,
    NoSuchRoot,
    ReducibleModulus,
    ZeroElement,
)

__all__ = [
    "FieldSpec",
    "FieldElement",
    "build_field",
    "frobenius",
    "mult_order",
    "primitive_root",
    "nth_root_of_unity",
    "dlog",
    "embed",
    "fmt_element",
    "prime_power",
    "arith_tables",
]


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q):
    """Write q as p**r with p prime; raise CompositeCharacteristic otherwise."""
    if q < 2:
        raise CompositeCharacteristic("%r is not a prime power" % (q,))
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            if m != 1 or not _is_prime(p):
                raise CompositeCharacteristic("%r is not a prime power" % (q,))
            return p, r
    raise CompositeCharacteristic("%r is not a prime power" % (q,))


def factorize(n):
    """Prime factorization of a positive int as {prime: exponent}."""
    out = {}
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


# ---------------------------------------------------------------------------
# integer-coded polynomials over GF(p), used only for the modulus scan

def _ip_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _ip_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _ip_trim(tuple(out))


def _ip_mod(a, f, p):
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(_ip_trim(tuple(a))) - 1 >= df:
        a = list(_ip_trim(tuple(a)))
        k = len(a) - 1 - df
        c = a[-1]
        for j in range(len(f)):
            a[k + j] = (a[k + j] - c * f[j]) % p
    return _ip_trim(tuple(a))


def _ip_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = (x - y) % p
    return _ip_trim(tuple(out))


def _ip_gcd(a, b, p):
    while b:
        # make b monic before reducing
        lead = b[-1]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            b = tuple((c * inv) % p for c in b)
        a, b = b, _ip_mod(a, b, p)
    return a


def _ip_frob_pow(h, f, p, times):
    # h -> h^(p^times) mod f, via repeated p-th powers
    for _ in range(times):
        acc = (1,)
        base = h
        e = p
        while e:
            if e & 1:
                acc = _ip_mod(_ip_mul(acc, base, p), f, p)
            base = _ip_mod(_ip_mul(base, base, p), f, p)
            e >>= 1
        h = acc
    return h


def _ip_is_irreducible(f, p):
    # Rabin's test; f monic of degree >= 1
    r = len(f) - 1
    if r == 1:
        return True
    x = (0, 1)
    for t in factorize(r):
        g = _ip_frob_pow(x, f, p, r // t)
        if len(_ip_gcd(f, _ip_sub(g, x, p), p)) > 1:
            return False
    return _ip_frob_pow(x, f, p, r) == _ip_mod(x, f, p)


# ---------------------------------------------------------------------------

class FieldSpec:
    """Description of one concrete GF(p^r) with a fixed modulus.

    Instances are interned: building the same (p, r, modulus) twice
    yields the same object, so identity checks between element specs
    are safe and cheap.
    """

    __slots__ = (
        "p", "r", "modulus", "order",
        "_red_rows", "_zero", "_one", "_dlog", "_proot", "_tables",
    )

    def __init__(self, p, r, modulus):
        self.p = p
        self.r = r
        self.modulus = modulus
        self.order = p**r
        self._red_rows = None
        self._dlog = None
        self._proot = None
        self._tables = None
        self._zero = FieldElement(self, (0,) * r)
        self._one = FieldElement(self, (1,) + (0,) * (r - 1))

    def __repr__(self):
        return "GF(%d; mod=%s)" % (self.order, ",".join(map(str, self.modulus)))

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.r == other.r
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def element(self, coeffs):
        """Build an element from a coefficient iterable or a single int."""
        if isinstance(coeffs, FieldElement):
            if coeffs.spec is not self and coeffs.spec != self:
                raise InvalidSubfield("element belongs to %r, not %r" % (coeffs.spec, self))
            return coeffs
        if isinstance(coeffs, int):
            return FieldElement(self, ((coeffs % self.p),) + (0,) * (self.r - 1))
        c = tuple(int(v) % self.p for v in coeffs)
        if len(c) > self.r:
            raise ValueError("coefficient tuple longer than degree %d" % self.r)
        return FieldElement(self, c + (0,) * (self.r - len(c)))

    def from_int(self, code):
        """Element whose little-endian base-p digit string is code."""
        if not 0 <= code < self.order:
            raise ValueError("code %d out of range for %r" % (code, self))
        digs = []
        for _ in range(self.r):
            digs.append(code % self.p)
            code //= self.p
        return FieldElement(self, tuple(digs))

    def to_int(self, x):
        code = 0
        for c in reversed(x.coeffs):
            code = code * self.p + c
        return code

    def elements(self):
        """Yield every element in canonical (integer-code) order."""
        for code in range(self.order):
            yield self.from_int(code)

    def reduction_rows(self):
        """Coefficients of T^k mod modulus, for k = r .. 2r-2."""
        if self._red_rows is None:
            p, r, f = self.p, self.r, self.modulus
            rows = []
            cur = [(-f[j]) % p for j in range(r)]  # T^r
            rows.append(tuple(cur))
            for _ in range(r - 2):
                nxt = [0] * r
                for j in range(r - 1):
                    nxt[j + 1] = cur[j]
                top = cur[r - 1]
                if top:
                    for j in range(r):
                        nxt[j] = (nxt[j] + top * ((-f[j]) % p)) % p
                rows.append(tuple(nxt))
                cur = nxt
            self._red_rows = tuple(rows)
        return self._red_rows


class FieldElement:
    """One element of a FieldSpec; immutable, hashable, full operator set."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    def __repr__(self):
        return "<%s in GF(%d)>" % (",".join(map(str, self.coeffs)), self.spec.order)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.spec == other.spec

    def __hash__(self):
        return hash((self.coeffs, self.spec.order))

    def __bool__(self):
        return any(self.coeffs)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError("expected FieldElement, got %r" % (other,))
        if other.spec is not self.spec and other.spec != self.spec:
            from .errors import FieldMismatch

            raise FieldMismatch("elements of %r and %r" % (self.spec, other.spec))

    def __add__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(
            self.spec,
            tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(
            self.spec,
            tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __mul__(self, other):
        self._check(other)
        spec = self.spec
        p, r = spec.p, spec.r
        a, b = self.coeffs, other.coeffs
        if r == 1:
            return FieldElement(spec, ((a[0] * b[0]) % p,))
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        out = prod[:r]
        rows = spec.reduction_rows()
        for k in range(r, 2 * r - 1):
            c = prod[k]
            if c:
                row = rows[k - r]
                for j in range(r):
                    if row[j]:
                        out[j] = (out[j] + c * row[j]) % p
        return FieldElement(spec, tuple(out))

    def inverse(self):
        if not self:
            raise ZeroElement("zero has no inverse")
        return self ** (self.spec.order - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.spec.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc


_SPEC_CACHE = {}


def build_field(p, r, modulus=None, budget=None):
    """Construct (or fetch the interned) GF(p^r).

    With modulus None the canonical modulus is chosen: the monic
    irreducible of degree r with the smallest integer code.  A supplied
    modulus must be a length r+1 little-endian monic tuple over GF(p)
    and irreducible, else ReducibleModulus.
    """
    p = int(p)
    r = int(r)
    if not _is_prime(p):
        raise CompositeCharacteristic("characteristic %d is not prime" % p)
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    charge(p**r, budget, "field GF(%d^%d)" % (p, r))

    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree r, low-to-high")
        key = (p, r, modulus)
        if key in _SPEC_CACHE:
            return _SPEC_CACHE[key]
        if not _ip_is_irreducible(modulus, p):
            raise ReducibleModulus("modulus %s factors over GF(%d)" % (modulus, p))
        spec = FieldSpec(p, r, modulus)
        _SPEC_CACHE[key] = spec
        return spec

    dkey = (p, r)
    if dkey in _SPEC_CACHE:
        return _SPEC_CACHE[dkey]
    found = None
    for code in range(p**r):
        digs = []
        c = code
        for _ in range(r):
            digs.append(c % p)
            c //= p
        cand = tuple(digs) + (1,)
        if _ip_is_irreducible(cand, p):
            found = cand
            break
    if found is None:  # cannot happen: irreducibles exist in every degree
        raise ReducibleModulus("no irreducible of degree %d over GF(%d)" % (r, p))
    key = (p, r, found)
    spec = _SPEC_CACHE.get(key)
    if spec is None:
        spec = FieldSpec(p, r, found)
        _SPEC_CACHE[key] = spec
    _SPEC_CACHE[dkey] = spec
    return spec


def frobenius(x, q):
    """x ** q for q = p^m with m dividing r; the subfield-q Frobenius."""
    spec = x.spec
    p = spec.p
    m = 0
    v = q
    while v > 1 and v % p == 0:
        v //= p
        m += 1
    if v != 1 or m == 0:
        raise InvalidSubfield("%d is not a positive power of char %d" % (q, p))
    if spec.r % m != 0:
        raise InvalidSubfield(
            "GF(%d) is not a subfield of GF(%d)" % (q, spec.order)
        )
    out = x
    for _ in range(m):
        out = out**p
    return out


def mult_order(x):
    """Multiplicative order of a nonzero element."""
    if not x:
        raise ZeroElement("zero has no multiplicative order")
    n = x.spec.order - 1
    if n == 0:
        return 1
    for ell in factorize(n):
        while n % ell == 0 and x ** (n // ell) == x.spec.one:
            n //= ell
    return n


def primitive_root(spec):
    """Enumeration-first generator of the multiplicative group."""
    if spec._proot is None:
        target = spec.order - 1
        found = None
        for x in spec.elements():
            if x and mult_order(x) == max(target, 1):
                found = x
                break
        if found is None:
            raise NoSuchRoot("no generator found in %r" % (spec,))
        spec._proot = found
    return spec._proot


def nth_root_of_unity(spec, n):
    """Canonical primitive n-th root of unity; NoSuchRoot if n does not divide q-1."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    size = spec.order - 1
    if n == 1:
        return spec.one
    if size % n != 0:
        raise NoSuchRoot(
            "GF(%d) has no primitive %d-th root of unity" % (spec.order, n)
        )
    return primitive_root(spec) ** (size // n)


def dlog(x):
    """Discrete log of nonzero x to base primitive_root(spec)."""
    spec = x.spec
    if not x:
        raise ZeroElement("zero has no discrete log")
    if spec._dlog is None:
        charge(spec.order, None, "discrete log table for GF(%d)" % spec.order)
        g = primitive_root(spec)
        table = {}
        acc = spec.one
        for k in range(max(spec.order - 1, 1)):
            table[acc.coeffs] = k
            acc = acc * g
        spec._dlog = table
    return spec._dlog[x.coeffs]


def _minpoly_over_prime(x):
    # product of (X - x^(p^j)) over the Frobenius orbit; coefficients must
    # land in the prime field, returned as an int tuple low-to-high
    spec = x.spec
    p = spec.p
    orbit = [x]
    cur = x**p
    while cur != x:
        orbit.append(cur)
        cur = cur**p
    poly = [spec.one]  # coefficients in spec, low-to-high, starts as 1
    for root in orbit:
        nxt = [spec.zero] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * root
        poly = nxt
    out = []
    for c in poly:
        if any(c.coeffs[1:]):
            raise InvalidSubfield("minimal polynomial has non-prime-field coefficient")
        out.append(c.coeffs[0])
    return tuple(out)


_EMBED_CACHE = {}


def _generator_image(src, dst, budget=None):
    key = ((src.p, src.r, src.modulus), (dst.p, dst.r, dst.modulus))
    if key in _EMBED_CACHE:
        return _EMBED_CACHE[key]
    g = primitive_root(src)
    mp = _minpoly_over_prime(g)

    def is_root(h):
        acc = dst.zero
        power = dst.one
        for c in mp:
            if c:
                acc = acc + power * dst.element(c)
            power = power * h
        return not acc

    # preferred image: the norm-compatible power of the target generator
    h = primitive_root(dst) ** ((dst.order - 1) // (src.order - 1))
    if not is_root(h):
        h = None
        charge(dst.order, budget, "root scan in GF(%d)" % dst.order)
        for cand in dst.elements():
            if is_root(cand):
                h = cand
                break
        if h is None:
            raise NoSuchRoot("generator minimal polynomial has no root in target")
    _EMBED_CACHE[key] = h
    return h


def embed(x, target, budget=None):
    """Canonical field embedding of x into the larger field `target`.

    The inclusion GF(p^m) -> GF(p^r) for m | r sends the source's
    canonical generator g to nth_root_of_unity(target, p^m - 1) when
    that power is a root of g's minimal polynomial (it is for every
    field pair this package exercises), otherwise to the
    enumeration-first root.  Either way the map is a ring embedding.
    """
    src = x.spec
    if src is target or src == target:
        return x
    if src.p != target.p or target.r % src.r != 0:
        raise InvalidSubfield(
            "no embedding GF(%d) -> GF(%d)" % (src.order, target.order)
        )
    if not x:
        return target.zero
    if src.r == 1:
        return target.element(x.coeffs[0])
    h = _generator_image(src, target, budget)
    return h ** dlog(x)


def fmt_element(x):
    """Short human form: ints for prime-field values, g^k otherwise."""
    if not x:
        return "0"
    if not any(x.coeffs[1:]):
        return str(x.coeffs[0])
    k = dlog(x)
    return "g" if k == 1 else "g^%d" % k


def arith_tables(spec, budget=None):
    """Code-level numpy tables for vectorized engines.

    Returns a dict with int16 arrays ADD, MUL (shape Q x Q), NEG (Q,),
    and FROBQ building blocks are left to callers.  Cached per spec.
    """
    import numpy as np

    if spec._tables is not None:
        return spec._tables
    q = spec.order
    if q * q > resolve_budget(budget):
        raise BudgetExceeded("arithmetic tables for GF(%d) exceed budget" % q)
    els = list(spec.elements())
    code = {e.coeffs: i for i, e in enumerate(els)}
    ADD = np.zeros((q, q), dtype=np.int16)
    MUL = np.zeros((q, q), dtype=np.int16)
    NEG = np.zeros(q, dtype=np.int16)
    for i, a in enumerate(els):
        NEG[i] = code[(-a).coeffs]
        for j, b in enumerate(els):
            ADD[i, j] = code[(a + b).coeffs]
            MUL[i, j] = code[(a * b).coeffs]
    spec._tables = {"ADD": ADD, "MUL": MUL, "NEG": NEG, "elements": els, "code": code}
    return spec._tables
