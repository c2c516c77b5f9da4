"""Explicit models of the torsion fields: Kummer data for the tame
layer, a relation ring certifying the wild layers, and residue sums.

The tame layer of the prime-torsion field over the extended constants
is cyclic of degree q^s - 1 and has a radical generator whose defining
equation only involves the Frobenius orbit of a primitive root; the
wild layers are certified symbolically in a ring with one generator per
level and a rewrite rule per defining relation, so every certificate is
an exact computation and not a formula transcription.
"""

from math import gcd

from .config import resolve_budget
from .errors import (
    ConsistencyFailure,
    DimensionMismatch,
    InternalInconsistency,
    ReductionFailure,
)
from .ff import (
    build_field,
    fmt_element,
    frobenius,
    mult_order,
    prime_power,
    primitive_root,
)
from .polyring import (
    Polynomial,
    RationalFunction,
    T_gen,
    canonical_irreducible,
    constant,
    poly,
    split_over_extension,
)

__all__ = [
    "kummer_exponents",
    "boseck_index",
    "boseck_indices",
    "tame_model",
    "z_values",
    "RelationRing",
    "RelationElement",
    "verify_as_tower",
    "as_character_sum",
]


def kummer_exponents(q, s):
    """The radical exponents (1, q, ..., q^(s-1)) with their identities.

    Multiplication by q permutes them cyclically modulo q^s - 1, each is
    a unit modulo q^s - 1, and their sum is (q^s - 1)/(q - 1).  All
    three facts are re-verified on the way out.
    """
    prime_power(q)
    if s < 1:
        raise DimensionMismatch("need at least one exponent")
    b = tuple(q**i for i in range(s))
    n = q**s - 1
    if n > 1:
        for i in range(s):
            if (b[i] * q - b[(i + 1) % s]) % n != 0:
                raise InternalInconsistency(
                    "exponents are not cyclic under multiplication by q",
                    observed=(i, b),
                )
        for bi in b:
            if gcd(bi, n) != 1:
                raise InternalInconsistency("exponent not a unit", observed=bi)
    if sum(b) != n // (q - 1):
        raise InternalInconsistency("exponent sum mismatch", observed=sum(b))
    return b


def boseck_index(n, b):
    """n / gcd(n, b), with the convention that a zero exponent gives 1."""
    if n < 1:
        raise DimensionMismatch("modulus must be positive")
    if n == 1 or b % n == 0:
        return 1
    return n // gcd(n, b % n)


def boseck_indices(q, s):
    n = q**s - 1
    return tuple(boseck_index(n, bi) for bi in kummer_exponents(q, s))


def tame_model(q, s, budget=None):
    """Radical equation for the tame layer over F_{q^s}(T).

    The roots are the Frobenius orbit of a primitive root zeta of
    F_{q^s}; the raw right-hand side carries exponent q^i on the factor
    (T - zeta^(q^(i-1))).  Each q^i is congruent to the reduced radical
    exponent modulo q^s - 1, which is checked, and in the degenerate
    case q^s - 1 = 1 the reduced exponents are the ones rendered.
    """
    p, r = prime_power(q)
    ext = build_field(p, r * s, budget=budget)
    z1 = primitive_root(ext)
    roots = [z1]
    for _ in range(s - 1):
        roots.append(frobenius(roots[-1], q))
    n = q**s - 1
    literal = tuple(q**i for i in range(1, s + 1))
    reduced = kummer_exponents(q, s)
    if n > 1:
        for i in range(s):
            if (literal[i] - reduced[(i + 1) % s]) % n != 0:
                raise InternalInconsistency(
                    "literal exponent disagrees with reduced exponent mod n",
                    observed=(literal[i], reduced[(i + 1) % s]),
                )
    # product of the orbit factors must come from the base: every
    # coefficient of prod (T - root) has to be Frobenius-fixed
    prod = poly(ext, (ext.one,))
    for rt in roots:
        prod = prod * (T_gen(ext) - constant(ext, rt))
    for c in prod.coeffs:
        if frobenius(c, q) != c:
            raise InternalInconsistency(
                "orbit product does not descend to the base field",
                observed=prod.text(),
            )
    degenerate = n == 1
    shown = reduced if degenerate else literal
    factors = []
    for rt, e in zip(roots, shown):
        t = "(T - %s)" % fmt_element(rt)
        factors.append(t if e == 1 else t + "^%d" % e)
    sign = "-" if s % 2 == 1 else ""
    equation = "L^%d = %s%s" % (n, sign, " ".join(factors))
    return {
        "q": q,
        "s": s,
        "n": n,
        "roots": [fmt_element(rt) for rt in roots],
        "literal_exponents": list(literal),
        "reduced_exponents": list(reduced),
        "rendered_exponents": list(shown),
        "degenerate": degenerate,
        "boseck_indices": list(boseck_indices(q, s)),
        "equation": equation,
    }


def z_values(q, s, P=None, budget=None):
    """Z_i = 1 - prod_{j != i} (rho_i - rho_j) over the splitting field.

    The Z_i form a Frobenius orbit (checked); each is reported with its
    multiplicative order and primitivity.  A vanishing or non-primitive
    Z is a finding, not an error: whether these elements generate the
    residue field is precisely the question this probes.
    """
    p, r = prime_power(q)
    base = build_field(p, r, budget=budget)
    if P is None:
        P = canonical_irreducible(base, s, budget)
    data = split_over_extension(P, s, budget=budget)
    roots = list(data.roots)
    ext = data.ext_spec
    zs = []
    for i, rho in enumerate(roots):
        acc = ext.one
        for j, other in enumerate(roots):
            if j != i:
                acc = acc * (rho - other)
        zs.append(ext.one - acc)
    for i in range(len(zs) - 1):
        if frobenius(zs[i], q) != zs[i + 1]:
            raise InternalInconsistency(
                "Z values do not form a Frobenius orbit",
                observed=[fmt_element(z) for z in zs],
            )
    full = ext.order - 1
    rows = []
    findings = []
    notes = []
    if s == 1:
        notes.append("single root: the product is empty and Z = 1 - 1 = 0")
    for i, z in enumerate(zs, start=1):
        order = None if not z else mult_order(z)
        primitive = order == full
        rows.append(
            {
                "index": i,
                "root": fmt_element(roots[i - 1]),
                "Z": fmt_element(z),
                "order": order,
                "primitive": primitive,
            }
        )
        if not z:
            findings.append({"kind": "z-value-vanishes", "index": i})
        elif not primitive:
            findings.append(
                {
                    "kind": "z-value-not-primitive",
                    "index": i,
                    "order": order,
                    "full_order": full,
                }
            )
    return {
        "q": q,
        "s": s,
        "P": P.text(),
        "values": rows,
        "findings": findings,
        "notes": notes,
    }


# ---------------------------------------------------------------------------
# relation ring for the wild tower certificates


class RelationRing:
    """F_{q^d}(T)[lam, U2, U3] modulo the level relations at T - rho.

    Rewrite rules, applied until no exponent reaches its bound:

        lam^(Q-1) -> -(T - rho)
        U2^Q      -> U2 - 1/(T - rho)
        U3^Q      -> U3 - U2/(T - rho)

    Q is the order of the coefficient field.  The rules terminate: each
    one strictly decreases (e3, e2, e1) lexicographically.  A runaway
    reduction (only possible through a bug) raises ReductionFailure.
    """

    MAX_STEPS = 10000

    def __init__(self, ext_spec, rho):
        if rho.spec is not ext_spec:
            raise DimensionMismatch("rho must live in the coefficient field")
        self.spec = ext_spec
        self.Q = ext_spec.order
        self.rho = rho
        self.lin = T_gen(ext_spec) - constant(ext_spec, rho)
        self._lin_rat = RationalFunction(self.lin)

    def zero(self):
        return RelationElement(self, {})

    def one(self):
        return self.lift_rat(RationalFunction(poly(self.spec, (self.spec.one,))))

    def lift_rat(self, ratfun):
        return RelationElement(self, {(0, 0, 0): ratfun})

    def lift_poly(self, f):
        return self.lift_rat(RationalFunction(f))

    def lam(self):
        return RelationElement(self, {(1, 0, 0): self._one_rat()})

    def u2(self):
        """The normalized level-2 generator U2 * lam."""
        return RelationElement(self, {(1, 1, 0): self._one_rat()})

    def u3(self):
        """The normalized level-3 generator U3 * lam."""
        return RelationElement(self, {(1, 0, 1): self._one_rat()})

    def _one_rat(self):
        return RationalFunction(poly(self.spec, (self.spec.one,)))

    def _normalize(self, terms):
        out = {}
        work = list(terms.items())
        steps = 0
        Q = self.Q
        while work:
            steps += 1
            if steps > self.MAX_STEPS:
                raise ReductionFailure(
                    "rewrite did not terminate within %d steps" % self.MAX_STEPS
                )
            (e1, e2, e3), c = work.pop()
            if c.is_zero():
                continue
            if e3 >= Q:
                work.append(((e1, e2, e3 - Q + 1), c))
                work.append(((e1, e2 + 1, e3 - Q), -(c / self._lin_rat)))
            elif e2 >= Q:
                work.append(((e1, e2 - Q + 1, e3), c))
                work.append(((e1, e2 - Q, e3), -(c / self._lin_rat)))
            elif e1 >= Q - 1 and Q > 2:
                work.append(((e1 - (Q - 1), e2, e3), -(c * self._lin_rat)))
            elif e1 >= 1 and Q == 2:
                # lam^(Q-1) = lam itself: the torsion point is rational
                work.append(((e1 - 1, e2, e3), -(c * self._lin_rat)))
            else:
                key = (e1, e2, e3)
                if key in out:
                    tot = out[key] + c
                    if tot.is_zero():
                        del out[key]
                    else:
                        out[key] = tot
                else:
                    out[key] = c
        return out


class RelationElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", ring._normalize(terms))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, RelationElement)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def __add__(self, other):
        self._check(other)
        merged = dict(self.terms)
        for k, v in other.terms.items():
            merged[k] = merged[k] + v if k in merged else v
        return RelationElement(self.ring, merged)

    def __neg__(self):
        return RelationElement(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (RationalFunction, Polynomial, int)):
            other = _coerce_scalar(self.ring, other)
            return RelationElement(
                self.ring, {k: v * other for k, v in self.terms.items()}
            )
        self._check(other)
        acc = {}
        for (a1, a2, a3), ca in self.terms.items():
            for (b1, b2, b3), cb in other.terms.items():
                key = (a1 + b1, a2 + b2, a3 + b3)
                prod = ca * cb
                acc[key] = acc[key] + prod if key in acc else prod
        return RelationElement(self.ring, acc)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not defined here")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def _check(self, other):
        if not isinstance(other, RelationElement) or other.ring is not self.ring:
            raise DimensionMismatch("mixed relation rings")

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, reverse=True):
            c = self.terms[key]
            mono = "".join(
                "%s^%d" % (nm, e) if e > 1 else nm
                for nm, e in zip(("lam", "U2", "U3"), key)
                if e
            )
            cs = "%s" % (c,)
            cs = cs[4:-1] if cs.startswith("Rat(") else cs
            parts.append("(%s)%s" % (cs, mono) if mono else "(%s)" % cs)
        return " + ".join(parts)

    def __repr__(self):
        return "Rel(%s)" % self.text()


def _coerce_scalar(ring, v):
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, Polynomial):
        return RationalFunction(v)
    return RationalFunction(poly(ring.spec, (ring.spec.element(v),)))


def verify_as_tower(q, d, alpha, rho=None, budget=None):
    """Certify the wild tower relations by exact symbolic computation.

    For each rho (all of F_{q^d} unless one is given), with C the module
    action and lin = T - rho:

        level 1: C(lin)(lam) = 0 and lam != 0
        level 2: C(lin)(u2) = lam,  C(lin^2)(u2) = 0      (alpha >= 2)
        level 3: C(lin)(u3) = u2,   C(lin^2)(u3) = lam,
                 C(lin^3)(u3) = 0                          (alpha >= 3)

    Every identity is evaluated in the relation ring; the record carries
    one row per rho and an overall flag.
    """
    from .carlitz import carlitz_apply

    if alpha not in (1, 2, 3):
        raise DimensionMismatch("tower certificates cover levels 1..3")
    p, r = prime_power(q)
    ext = build_field(p, r * d, budget=budget)
    resolve_budget(budget)
    rhos = [rho] if rho is not None else list(ext.elements())
    rows = []
    for rr in rhos:
        ring = RelationRing(ext, rr)
        lam, lin = ring.lam(), ring.lin
        checks = {"lam_torsion": carlitz_apply(lin, lam).is_zero() and not lam.is_zero()}
        if alpha >= 2:
            u2 = ring.u2()
            checks["u2_maps_to_lam"] = carlitz_apply(lin, u2) == lam
            checks["u2_torsion"] = carlitz_apply(lin**2, u2).is_zero()
        if alpha >= 3:
            u3 = ring.u3()
            checks["u3_maps_to_u2"] = carlitz_apply(lin, u3) == ring.u2()
            checks["u3_maps_twice_to_lam"] = carlitz_apply(lin**2, u3) == lam
            checks["u3_torsion"] = carlitz_apply(lin**3, u3).is_zero()
        rows.append(
            {
                "rho": fmt_element(rr),
                "checks": checks,
                "ok": all(checks.values()),
            }
        )
    return {
        "instance": {"q": q, "d": d, "alpha": alpha},
        "rows": rows,
        "all_ok": all(row["ok"] for row in rows),
    }


def as_character_sum(q, d, P=None, weights=None, budget=None):
    """Sum of weighted simple poles at the conjugate roots, under sigma.

    f = sum b_i / (T - rho_i); sigma sends the pair (b_i, rho_i) to
    (b_i^q, rho_{i+1}).  The difference sigma(f) - f is computed as an
    honest rational function.  When it vanishes the sum descends; when
    it does not, its poles are simple and at the rho_i, which is why no
    cancellation can occur (recorded as a note, the difference itself
    is the evidence).
    """
    p, r = prime_power(q)
    base = build_field(p, r, budget=budget)
    if P is None:
        P = canonical_irreducible(base, d, budget)
    data = split_over_extension(P, d, budget=budget)
    roots = list(data.roots)
    ext = data.ext_spec
    s = len(roots)
    if weights is None:
        weights = [ext.one] * s
    weights = [w if w.spec is ext else _embed_weight(w, ext, budget) for w in weights]
    if len(weights) != s:
        raise DimensionMismatch("one weight per root")
    T = T_gen(ext)

    def assemble(ws, rts):
        acc = RationalFunction(poly(ext, ()))
        for w, rho in zip(ws, rts):
            acc = acc + RationalFunction(constant(ext, w)) / RationalFunction(
                T - constant(ext, rho)
            )
        return acc

    f = assemble(weights, roots)
    shifted_weights = [frobenius(w, q) for w in weights]
    shifted_roots = roots[1:] + roots[:1]
    sigma_f = assemble(shifted_weights, shifted_roots)
    diff = sigma_f - f
    invariant = diff.is_zero()
    if invariant:
        note = "the weighted pole data is a union of sigma-orbits"
    else:
        note = (
            "sigma changes the residue at some simple pole; simple poles "
            "at distinct points cannot cancel, so the sum does not descend"
        )
    return {
        "q": q,
        "d": d,
        "P": P.text(),
        "weights": [fmt_element(w) for w in weights],
        "sum": repr(f),
        "sigma_sum": repr(sigma_f),
        "difference": repr(diff),
        "sigma_invariant": invariant,
        "note": note,
    }


def _embed_weight(w, ext, budget):
    from .ff import embed

    return embed(w, ext, budget)
