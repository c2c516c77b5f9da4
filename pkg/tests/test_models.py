"""Kummer data, tame radical equations, Z values, tower certificates."""

import pytest

from carlitzfields.carlitz import basis_vector, carlitz_apply, torsion_action
from carlitzfields.errors import DimensionMismatch
from carlitzfields.ff import build_field, fmt_element, primitive_root
from carlitzfields.models import (
    RelationRing,
    as_character_sum,
    boseck_index,
    boseck_indices,
    kummer_exponents,
    tame_model,
    verify_as_tower,
    z_values,
)
from carlitzfields.polyring import Residue, constant, poly


# ------------------------------------------------------------------ kummer

@pytest.mark.parametrize(
    "q,s,expected",
    [(2, 1, (1,)), (2, 2, (1, 2)), (3, 2, (1, 3)), (2, 3, (1, 2, 4)), (4, 2, (1, 4))],
)
def test_kummer_exponents(q, s, expected):
    assert kummer_exponents(q, s) == expected


def test_kummer_exponent_sum():
    for q, s in [(2, 3), (3, 2), (4, 2), (5, 2)]:
        assert sum(kummer_exponents(q, s)) == (q**s - 1) // (q - 1)


@pytest.mark.parametrize(
    "q,s,expected",
    [(2, 2, (3, 3)), (3, 2, (8, 8)), (2, 1, (1,)), (2, 3, (7, 7, 7))],
)
def test_boseck_indices(q, s, expected):
    assert boseck_indices(q, s) == expected


def test_boseck_index_zero_exponent_convention():
    assert boseck_index(7, 0) == 1
    assert boseck_index(7, 14) == 1
    assert boseck_index(1, 0) == 1
    assert boseck_index(6, 4) == 3


# -------------------------------------------------------------- tame model

def test_tame_model_degenerate():
    rec = tame_model(2, 1)
    assert rec["degenerate"]
    assert rec["equation"] == "L^1 = -(T - 1)"
    assert rec["rendered_exponents"] == [1]


def test_tame_model_prime_field():
    rec = tame_model(3, 1)
    assert rec["equation"] == "L^2 = -(T - 2)^3"
    assert rec["literal_exponents"] == [3]
    assert rec["reduced_exponents"] == [1]


def test_tame_model_quadratic():
    rec = tame_model(2, 2)
    assert rec["roots"] == ["g", "g^2"]
    assert rec["equation"] == "L^3 = (T - g)^2 (T - g^2)^4"
    assert rec["boseck_indices"] == [3, 3]


def test_tame_model_q3_quadratic():
    rec = tame_model(3, 2)
    assert rec["equation"] == "L^8 = (T - g)^3 (T - g^3)^9"
    assert rec["n"] == 8


# ---------------------------------------------------------------- z values

def test_z_values_vanishing_instance():
    rec = z_values(2, 2)
    assert rec["P"] == "T^2 + T + 1"
    assert [row["Z"] for row in rec["values"]] == ["0", "0"]
    assert [f["kind"] for f in rec["findings"]] == [
        "z-value-vanishes",
        "z-value-vanishes",
    ]


def test_z_values_primitive_instance():
    rec = z_values(3, 2)
    assert rec["P"] == "T^2 + 1"
    rows = rec["values"]
    assert [row["Z"] for row in rows] == ["g", "g^3"]
    assert all(row["order"] == 8 and row["primitive"] for row in rows)
    assert rec["findings"] == []


def test_z_values_single_root_degenerate():
    rec = z_values(2, 1)
    assert rec["values"][0]["Z"] == "0"
    assert any("empty" in n for n in rec["notes"])


def test_z_values_frobenius_orbit_property():
    # Z_{i+1} = Z_i^q is asserted inside; reaching the return is the test
    for q, s in [(2, 3), (3, 2), (2, 4), (5, 2)]:
        z_values(q, s)


# ---------------------------------------------------------- relation ring

def _ring(p, r, d, rho_code=0):
    ext = build_field(p, r * d)
    return RelationRing(ext, ext.from_int(rho_code))


def test_ring_lambda_is_rational_when_Q_is_2():
    ring = _ring(2, 1, 1)
    # rho = 0: lam reduces to the polynomial T itself
    assert ring.lam() == ring.lift_poly(ring.lin)


def test_ring_lambda_power_rule():
    ring = _ring(2, 2, 1)  # Q = 4
    lam = ring.lam()
    # lam^3 = -(T - rho), so lam^4 = -(T - rho) lam
    assert lam**4 == ring.lift_poly(-ring.lin) * lam


def test_ring_u2_relation():
    ring = _ring(3, 1, 1, rho_code=1)
    u2 = ring.u2()
    lam = ring.lam()
    # C(T - rho)(u2) = (T - rho) u2 + u2^Q must equal lam
    assert carlitz_apply(ring.lin, u2) == lam


def test_ring_rejects_mixed_rings():
    a = _ring(2, 1, 1, 0)
    b = _ring(2, 1, 1, 1)
    with pytest.raises(DimensionMismatch):
        a.lam() + b.lam()


def test_ring_addition_cancels():
    ring = _ring(3, 1, 1)
    x = ring.u2() + ring.lam()
    assert (x - x).is_zero()
    assert x + ring.zero() == x


# ---------------------------------------------------------- tower verifier

@pytest.mark.parametrize(
    "q,d,alpha",
    [(2, 1, 3), (3, 1, 3), (2, 2, 3), (4, 1, 2), (2, 3, 2), (3, 2, 2)],
)
def test_verify_as_tower_all_rho(q, d, alpha):
    rec = verify_as_tower(q, d, alpha)
    assert rec["all_ok"]
    assert len(rec["rows"]) == q**d


def test_verify_as_tower_check_names():
    rec = verify_as_tower(2, 1, 3)
    assert set(rec["rows"][0]["checks"]) == {
        "lam_torsion",
        "u2_maps_to_lam",
        "u2_torsion",
        "u3_maps_to_u2",
        "u3_maps_twice_to_lam",
        "u3_torsion",
    }


def test_verify_as_tower_single_rho():
    ext = build_field(3, 1)
    rec = verify_as_tower(3, 1, 2, rho=ext.from_int(2))
    assert rec["all_ok"]
    assert len(rec["rows"]) == 1
    assert rec["rows"][0]["rho"] == "2"


def test_verify_as_tower_rejects_level_beyond_model():
    with pytest.raises(DimensionMismatch):
        verify_as_tower(2, 1, 4)


# --------------------------------------- digit action vs ring, exhaustive

@pytest.mark.parametrize("p,r,d", [(2, 1, 1), (2, 1, 2), (3, 1, 1)])
def test_torsion_action_matches_ring_on_level_two(p, r, d):
    """Two independent routes for C(D) on the level-2 generator.

    The digit route acts through the abstract basis coordinates; the
    ring route evaluates the additive polynomial of D symbolically and
    reduces.  They must agree for every unit D and every rho.
    """
    ext = build_field(p, r * d)
    for rho in ext.elements():
        ring = RelationRing(ext, rho)
        lin = ring.lin
        M = lin * lin
        for code in range(ext.order**2):
            rep = poly(
                ext,
                [ext.from_int(code % ext.order), ext.from_int(code // ext.order)],
            )
            D = Residue(M, rep)
            if not D.is_unit():
                continue
            coords = torsion_action(D, basis_vector(ext, 2, 2), base=lin).coords
            want = ring.lam() * constant(ext, coords[0]) + ring.u2() * constant(
                ext, coords[1]
            )
            assert carlitz_apply(rep, ring.u2()) == want


# ------------------------------------------------------------- residue sum

def test_character_sum_equal_weights_descends():
    rec = as_character_sum(2, 2)
    assert rec["sigma_invariant"]
    assert rec["sum"] == "Rat((1)/(T^2 + T + 1))"


def test_character_sum_orbit_weights_descend():
    ext = build_field(2, 2)
    w = primitive_root(ext)
    rec = as_character_sum(2, 2, weights=[w, w * w])
    assert rec["sigma_invariant"]
    assert rec["sum"] == "Rat((T)/(T^2 + T + 1))"


def test_character_sum_mixed_weights_do_not_descend():
    ext = build_field(2, 2)
    rec = as_character_sum(2, 2, weights=[ext.one, primitive_root(ext)])
    assert not rec["sigma_invariant"]
    assert "simple poles" in rec["note"]


def test_character_sum_q3():
    rec = as_character_sum(3, 2)
    assert rec["sigma_invariant"]
    assert rec["sum"] == "Rat((2*T)/(T^2 + 1))"
