"""Ramification indices, differents, and divisor bookkeeping in the tower.

Five function fields sit in a square with one corner doubled:

    base_rational   F_q(T)
    ext_rational    F_{q^d}(T)          (constants extended)
    base_torsion    K = torsion field of P^alpha over base_rational
    compositum      L = K . F_{q^d}(T)
    ext_torsion     M = torsion field of P^alpha over ext_rational

P is irreducible of degree s over F_q with s | d, so P splits into s
places above it from ext_rational upward; those carry index 1..s.
Infinite places of one level are symmetric, so a single label stands
for each of them and divisor exponents are per place.

Every ramification index and different exponent below is produced two
ways (difference of Hilbert-type terms, and the closed form) and the
two are compared; a mismatch raises InternalInconsistency because both
routes are internal.  Filtration order displays are compared in a
report instead: the displayed exponents, the derived ones, and (budget
permitting) exhaustive enumeration all appear side by side, and
disagreements become findings rather than silent corrections.
"""

from dataclasses import dataclass, field

from .config import resolve_budget
from .errors import DegreeNotDividing, InternalInconsistency
from .ff import build_field, prime_power
from .polyring import canonical_irreducible
from . import galois as _galois

__all__ = [
    "BASE_RATIONAL",
    "EXT_RATIONAL",
    "BASE_TORSION",
    "COMPOSITUM",
    "EXT_TORSION",
    "PlaceLabel",
    "Divisor",
    "Tower",
    "ram_index",
    "hilbert_term",
    "different_main",
    "divisor_dT",
    "lower_filtration",
    "hilbert_sum_check",
]

BASE_RATIONAL = "base_rational"
EXT_RATIONAL = "ext_rational"
BASE_TORSION = "base_torsion"
COMPOSITUM = "compositum"
EXT_TORSION = "ext_torsion"

_LEVEL_ORDER = (BASE_RATIONAL, EXT_RATIONAL, BASE_TORSION, COMPOSITUM, EXT_TORSION)


@dataclass(frozen=True, order=True)
class PlaceLabel:
    level: str
    kind: str  # "finite" or "infinite"
    index: int | None = None  # which place over P, 1..s, when split

    def text(self):
        if self.kind == "infinite":
            return "inf@%s" % self.level
        if self.index is None:
            return "P@%s" % self.level
        return "P_%d@%s" % (self.index, self.level)


class Divisor:
    """Formal Z-combination of places, exponentwise arithmetic."""

    __slots__ = ("exps",)

    def __init__(self, exps=None):
        self.exps = {}
        if exps:
            for k, v in exps.items():
                if v:
                    self.exps[k] = int(v)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.exps == other.exps

    def __add__(self, other):
        out = dict(self.exps)
        for k, v in other.exps.items():
            out[k] = out.get(k, 0) + v
        return Divisor(out)

    def __neg__(self):
        return Divisor({k: -v for k, v in self.exps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n):
        return Divisor({k: v * n for k, v in self.exps.items()})

    def restrict(self, level):
        return Divisor({k: v for k, v in self.exps.items() if k.level == level})

    def items(self):
        def sort_key(kv):
            lab = kv[0]
            return (
                _LEVEL_ORDER.index(lab.level),
                lab.kind,
                -1 if lab.index is None else lab.index,
            )

        return sorted(self.exps.items(), key=sort_key)

    def record(self):
        return [{"place": k.text(), "exponent": v} for k, v in self.items()]

    def __repr__(self):
        return "Div(%s)" % ", ".join(
            "%s^%d" % (k.text(), v) for k, v in self.items()
        )


def _exact_div(num, den, what):
    if den == 0 or num % den != 0:
        raise InternalInconsistency(
            "%s is not an exact integer" % what, expected=0,
            observed=(num, den),
        )
    return num // den


def hilbert_term(q, x, alpha):
    """alpha * q^(x*alpha) - (alpha+1) * q^(x*(alpha-1))."""
    return alpha * q ** (x * alpha) - (alpha + 1) * q ** (x * (alpha - 1))


def ram_index(q, d, s, alpha):
    """Finite ramification index of ext_torsion over compositum.

    Both the quotient of unit-group orders and the closed form
    q^((d-s)(alpha-1)) (q^d - 1)/(q^s - 1) are computed and compared.
    """
    prime_power(q)
    if s < 1 or d < 1 or alpha < 1:
        raise ValueError("parameters must be positive")
    if d % s != 0:
        raise DegreeNotDividing("s = %d must divide d = %d" % (s, d))
    quot = _exact_div(
        q ** (d * alpha) - q ** (d * (alpha - 1)),
        q ** (s * alpha) - q ** (s * (alpha - 1)),
        "ramification index quotient",
    )
    closed = q ** ((d - s) * (alpha - 1)) * _exact_div(
        q**d - 1, q**s - 1, "(q^d-1)/(q^s-1)"
    )
    if quot != closed:
        raise InternalInconsistency(
            "ramification index forms disagree", expected=closed, observed=quot
        )
    return quot


class Tower:
    """The five-level field square with its ramification edge data."""

    def __init__(self, q, d, s, alpha):
        prime_power(q)
        if d % s != 0:
            raise DegreeNotDividing("s = %d must divide d = %d" % (s, d))
        self.q, self.d, self.s, self.alpha = q, d, s, alpha
        wild_base = q ** (s * alpha) - q ** (s * (alpha - 1))
        wild_ext = q ** (d * alpha) - q ** (d * (alpha - 1))
        ratio = ram_index(q, d, s, alpha)
        inf_ratio = _exact_div(q**d - 1, q - 1, "(q^d-1)/(q-1)")
        # "split" edges take the single place below P to the s indexed
        # ones; "keep" edges preserve the index (None stays None)
        self.edges = {
            (BASE_RATIONAL, EXT_RATIONAL): {"e_fin": 1, "e_inf": 1, "fan": "split"},
            (BASE_RATIONAL, BASE_TORSION): {"e_fin": wild_base, "e_inf": q - 1, "fan": "keep"},
            (EXT_RATIONAL, COMPOSITUM): {"e_fin": wild_base, "e_inf": q - 1, "fan": "keep"},
            (EXT_RATIONAL, EXT_TORSION): {"e_fin": wild_ext, "e_inf": q**d - 1, "fan": "keep"},
            (BASE_TORSION, COMPOSITUM): {"e_fin": 1, "e_inf": 1, "fan": "split"},
            (COMPOSITUM, EXT_TORSION): {"e_fin": ratio, "e_inf": inf_ratio, "fan": "keep"},
        }
        # the square must commute multiplicatively on both kinds of place
        for kind in ("e_fin", "e_inf"):
            via_ext = (
                self.edges[(BASE_RATIONAL, EXT_RATIONAL)][kind]
                * self.edges[(EXT_RATIONAL, EXT_TORSION)][kind]
            )
            via_tors = (
                self.edges[(BASE_RATIONAL, BASE_TORSION)][kind]
                * self.edges[(BASE_TORSION, COMPOSITUM)][kind]
                * self.edges[(COMPOSITUM, EXT_TORSION)][kind]
            )
            if via_ext != via_tors:
                raise InternalInconsistency(
                    "tower edges do not commute on %s" % kind,
                    expected=via_ext, observed=via_tors,
                )

    def finite_places(self, level):
        if level in (BASE_RATIONAL, BASE_TORSION):
            return [PlaceLabel(level, "finite")]
        return [PlaceLabel(level, "finite", i) for i in range(1, self.s + 1)]

    def infinite_place(self, level):
        return PlaceLabel(level, "infinite")

    def conorm_edge(self, div, lo, hi):
        edge = self.edges[(lo, hi)]
        out = Divisor()
        for lab, e in div.exps.items():
            if lab.level != lo:
                raise InternalInconsistency("divisor not at level %s" % lo)
            if lab.kind == "infinite":
                out = out + Divisor({self.infinite_place(hi): e * edge["e_inf"]})
            else:
                if edge["fan"] == "keep":
                    nxt = PlaceLabel(hi, "finite", lab.index)
                    out = out + Divisor({nxt: e * edge["e_fin"]})
                else:
                    for i in range(1, self.s + 1):
                        out = out + Divisor(
                            {PlaceLabel(hi, "finite", i): e * edge["e_fin"]}
                        )
        return out

    def conorm(self, div, path):
        for lo, hi in zip(path, path[1:]):
            div = self.conorm_edge(div, lo, hi)
        return div


def different_main(q, d, s, alpha):
    """Different exponents of ext_torsion over compositum, both routes.

    A (finite places) and B (infinite places) each come from a closed
    form and from the conorm-difference of the two absolute differents,
    replayed functorially on symbolic divisors.  The absolute different
    of the compositum over base_rational is also checked to telescope
    through the square.  Any disagreement raises InternalInconsistency.
    """
    tw = Tower(q, d, s, alpha)
    e_ratio = tw.edges[(COMPOSITUM, EXT_TORSION)]["e_fin"]
    inf_ratio = tw.edges[(COMPOSITUM, EXT_TORSION)]["e_inf"]

    A_diff = hilbert_term(q, d, alpha) - e_ratio * hilbert_term(q, s, alpha)
    A_closed = q ** (d * (alpha - 1)) * _exact_div(
        q**d - q**s, q**s - 1, "A closed-form quotient"
    )
    if A_diff != A_closed:
        raise InternalInconsistency(
            "finite different exponent forms disagree",
            expected=A_closed, observed=A_diff,
        )
    B_diff = (q**d - 2) - (q - 2) * inf_ratio
    B_closed = q * _exact_div(q ** (d - 1) - 1, q - 1, "B closed-form quotient")
    if B_diff != B_closed:
        raise InternalInconsistency(
            "infinite different exponent forms disagree",
            expected=B_closed, observed=B_diff,
        )

    # absolute differents as divisors
    diff_M = Divisor(
        {lab: hilbert_term(q, d, alpha) for lab in tw.finite_places(EXT_TORSION)}
    ) + Divisor({tw.infinite_place(EXT_TORSION): q**d - 2})
    diff_K = Divisor(
        {lab: hilbert_term(q, s, alpha) for lab in tw.finite_places(BASE_TORSION)}
    ) + Divisor({tw.infinite_place(BASE_TORSION): q - 2})
    diff_L = tw.conorm(diff_K, (BASE_TORSION, COMPOSITUM))

    relative = diff_M - tw.conorm(diff_L, (COMPOSITUM, EXT_TORSION))
    want = Divisor(
        {lab: A_closed for lab in tw.finite_places(EXT_TORSION)}
    ) + Divisor({tw.infinite_place(EXT_TORSION): B_closed})
    if relative != want:
        raise InternalInconsistency(
            "functorial relative different disagrees with closed forms",
            expected=want.record(), observed=relative.record(),
        )
    # telescoping: conorm(absolute of L) + relative = absolute of M
    rebuilt = tw.conorm(diff_L, (COMPOSITUM, EXT_TORSION)) + relative
    if rebuilt != diff_M:
        raise InternalInconsistency(
            "different tower does not telescope",
            expected=diff_M.record(), observed=rebuilt.record(),
        )
    return {
        "instance": {"q": q, "d": d, "s": s, "alpha": alpha},
        "e": e_ratio,
        "A": A_closed,
        "B": B_closed,
        "forms": {
            "A_difference": A_diff,
            "A_closed": A_closed,
            "B_difference": B_diff,
            "B_closed": B_closed,
        },
        "relative_different": relative.record(),
        "provenance": "both-agree",
    }


def divisor_dT(q, s, alpha):
    """div(dT) on the torsion field of P^alpha, deg P = s, over F_q(T).

    Assembled as Different + conorm(div(dT) on the rational field): the
    finite exponent is the Hilbert term, the infinite exponent is
    (q - 2) - 2(q - 1).
    """
    prime_power(q)
    tw = Tower(q, s, s, alpha)  # only the base column is used
    S = hilbert_term(q, s, alpha)
    inf_tame = q - 2
    inf_conorm = -2 * (q - 1)
    div = Divisor(
        {lab: S for lab in tw.finite_places(BASE_TORSION)}
    ) + Divisor({tw.infinite_place(BASE_TORSION): inf_tame + inf_conorm})
    return {
        "instance": {"q": q, "s": s, "alpha": alpha},
        "finite_exponent": S,
        "infinite_tame_part": inf_tame,
        "infinite_conorm_part": inf_conorm,
        "infinite_total": inf_tame + inf_conorm,
        "divisor": div.record(),
    }


@dataclass
class FiltrationReport:
    instance: dict
    g_levels: list
    h_levels: list
    enumerated: bool
    findings: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def record(self):
        return {
            "instance": self.instance,
            "g_levels": self.g_levels,
            "h_levels": self.h_levels,
            "enumerated": self.enumerated,
            "findings": self.findings,
            "notes": self.notes,
        }


def _enumerated_h_filtration(q, d, s, alpha, budget):
    """|H|, and |H cap N_k| for k = 0..alpha, by building the group."""
    p, r = prime_power(q)
    base_spec = build_field(p, r, budget=budget)
    P = canonical_irreducible(base_spec, s, budget)
    G = _galois.build_group(q, d, P**alpha, budget)
    H = _galois.compute_H(G, budget)
    levels = _galois.filtration_N(G, P, budget)
    return [len(H.members & lv.members) for lv in levels]


def lower_filtration(q, d, s, alpha, budget=None, enumerate_h=True):
    """Lower-numbering ramification data at a finite place, as a report.

    G-side: G_0 is the full group; G_i = N_k for q^(d(k-1)) <= i <=
    q^(dk) - 1, with |N_k| = q^(ds(alpha-k)) (those orders are exact and
    re-verified by enumeration whenever the budget allows).

    H-side rows carry three order columns: `displayed` (exponent
    d(s-1)(alpha-k) as printed), `derived` (exponent s(d-1)(alpha-k),
    the order of (sigma - 1)N_k), and `enumerated` (|H cap N_k| from an
    actual group table, None when out of budget).  Differences are
    reported as findings, never patched over.
    """
    tw = Tower(q, d, s, alpha)
    G_order = (q**d - 1) ** s * q ** (d * s * (alpha - 1))
    g_levels = [{"k": 0, "i_range": (0, 0), "order": G_order}]
    for k in range(1, alpha + 1):
        hi = q ** (d * k) - 1 if k < alpha else None
        g_levels.append(
            {
                "k": k,
                "i_range": (q ** (d * (k - 1)), hi),
                "order": q ** (d * s * (alpha - k)),
            }
        )

    pref = _exact_div((q**d - 1) ** s, q**s - 1, "H_0 prefactor")
    h0_displayed = pref * q ** (d * (s - 1) * (alpha - 1))
    h0_derived = pref * q ** (s * (d - 1) * (alpha - 1))
    h_levels = [
        {
            "k": 0,
            "i_range": (0, 0),
            "displayed": h0_displayed,
            "derived": h0_derived,
            "enumerated": None,
        }
    ]
    for k in range(1, alpha + 1):
        hi = q ** (d * k) - 1 if k < alpha else None
        h_levels.append(
            {
                "k": k,
                "i_range": (q ** (d * (k - 1)), hi),
                "displayed": q ** (d * (s - 1) * (alpha - k)),
                "derived": q ** (s * (d - 1) * (alpha - k)),
                "enumerated": None,
            }
        )

    enumerated = False
    total = (q**d) ** (s * alpha)
    if enumerate_h and total <= resolve_budget(budget):
        got = _enumerated_h_filtration(q, d, s, alpha, budget)
        for k in range(alpha + 1):
            h_levels[k]["enumerated"] = got[k]
        enumerated = True

    findings = []
    for row in h_levels:
        if row["displayed"] != row["derived"]:
            findings.append(
                {
                    "kind": "h-order-display-mismatch",
                    "k": row["k"],
                    "displayed": row["displayed"],
                    "derived": row["derived"],
                    "detail": "displayed exponent swaps the roles of d and s",
                }
            )
        if row["enumerated"] is not None and row["enumerated"] != row["derived"]:
            findings.append(
                {
                    "kind": "h-order-enumeration-mismatch",
                    "k": row["k"],
                    "derived": row["derived"],
                    "enumerated": row["enumerated"],
                }
            )
    notes = [
        "G_i ranges follow q^(dk) breakpoints; i is the lower index",
        "derived H orders are |(sigma-1)N_k| = |N_k| / |N_k^sigma|",
    ]
    return FiltrationReport(
        instance={"q": q, "d": d, "s": s, "alpha": alpha},
        g_levels=g_levels,
        h_levels=h_levels,
        enumerated=enumerated,
        findings=findings,
        notes=notes,
    )


def hilbert_sum_check(q, d, s, alpha, budget=None):
    """Compare sum (|H_i| - 1) against the finite different exponent A.

    The displayed filtration admits two readings (the subscript as a
    lower index occurring once, or as a level weighted by its index
    range) and two order columns (displayed and derived), plus the
    enumerated orders when available.  Every combination is summed and
    compared with A; the result is a report with findings, never an
    assertion, because disagreement here is data about the displayed
    filtration rather than an implementation bug.
    """
    rep = lower_filtration(q, d, s, alpha, budget)
    A = different_main(q, d, s, alpha)["A"]

    def level_weight(row):
        if row["k"] == 0:
            return 1
        lo, hi = row["i_range"]
        return (hi - lo + 1) if hi is not None else (q ** (d * row["k"]) - lo)

    sums = {}
    for col in ("displayed", "derived", "enumerated"):
        if any(row[col] is None for row in rep.h_levels):
            sums["per_level_" + col] = None
            sums["per_index_" + col] = None
            continue
        sums["per_level_" + col] = sum(
            level_weight(row) * (row[col] - 1) for row in rep.h_levels
        )
        sums["per_index_" + col] = sum(row[col] - 1 for row in rep.h_levels)

    matches = {k: (v == A) if v is not None else None for k, v in sums.items()}
    findings = list(rep.findings)
    if not any(v for v in matches.values() if v):
        findings.append(
            {
                "kind": "hilbert-sum-no-reading-matches",
                "A": A,
                "sums": sums,
            }
        )
    return {
        "instance": {"q": q, "d": d, "s": s, "alpha": alpha},
        "A": A,
        "sums": sums,
        "matches": matches,
        "findings": findings,
    }
