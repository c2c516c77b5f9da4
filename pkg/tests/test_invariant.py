"""Toeplitz-group invariants, the printed remainder table, sign
conventions, and the two eigenvector recipes."""

import json
import pathlib

import pytest

from carlitzfields.errors import InternalInconsistency
from carlitzfields.ff import build_field, fmt_element
from carlitzfields.invariant import (
    PRINTED_REMAINDER_TABLE,
    MultiPolynomial,
    act,
    eigenspace_invariants,
    invariant_space,
    make_vars,
    monomials_of_degree,
    non_polynomiality_certificate,
    orbit_product_of_last,
    remainder_table,
    sigma_minus_one_matrix,
    sigma_minus_one_symbolic,
    unitriangular_toeplitz_group,
)

DATA = pathlib.Path(__file__).parent / "data"


# ------------------------------------------------------------ polynomials

def test_multipolynomial_parameter_reduction():
    spec = build_field(3, 1)
    x, y, z, a, b = make_vars(spec, ("x", "y", "z", "a", "b"), params=("a", "b"))
    assert a**3 == a
    assert a**4 == a * a
    assert b**5 == b**3 * b**2  # both reduce to b^3 = b times b^2 -> b^3=b...
    assert (y**3).text() == "y^3"  # plain variables never reduce


def test_multipolynomial_arithmetic():
    spec = build_field(3, 1)
    x, y = make_vars(spec, ("x", "y"))
    f = (x + y) ** 3
    # char 3: only the pure cubes survive
    assert f == x**3 + y**3
    g = (x + y) * (x - y)
    assert g == x * x - y * y


def test_act_columns_convention():
    spec = build_field(3, 1)
    x, y, z = make_vars(spec, ("x", "y", "z"))
    g = unitriangular_toeplitz_group(spec, 3)
    # find the element with first row (1, 1, 0): y -> x + y, z -> y + z
    for mat in g:
        fr = [c.to_int() for c in mat.first_row]
        if fr == [1, 1, 0]:
            assert act(y, mat) == x + y
            assert act(z, mat) == y + z
            assert act(x, mat) == x
            break
    else:
        pytest.fail("group element not found")


def test_group_order():
    spec = build_field(3, 1)
    assert len(unitriangular_toeplitz_group(spec, 3)) == 9
    assert len(unitriangular_toeplitz_group(build_field(2, 1), 4)) == 8


def test_monomial_order_is_reversed_lex():
    monos = monomials_of_degree(3, 3)
    assert monos[0] == (0, 0, 3)  # z^3 first
    assert monos[-1] == (3, 0, 0)  # x^3 last


# -------------------------------------------------------- invariant spaces

def test_invariant_dimensions_q3_alpha3():
    spec = build_field(3, 1)
    dims = [invariant_space(spec, 3, d).dim for d in (1, 2, 3)]
    assert dims == [1, 1, 2]


def test_invariant_bases_q3_alpha3():
    spec = build_field(3, 1)
    assert invariant_space(spec, 3, 1).texts == ["x"]
    assert invariant_space(spec, 3, 2).texts == ["x^2"]
    deg3 = invariant_space(spec, 3, 3)
    assert deg3.texts == ["x^3", "y^3 + 2x^2y"]
    assert [sorted(s) for s in deg3.involves] == [["x"], ["x", "y"]]


def test_invariant_basis_q2_alpha3_degree2():
    spec = build_field(2, 1)
    ib = invariant_space(spec, 3, 2)
    assert ib.texts == ["x^2", "y^2 + xy"]


def test_invariant_space_alpha2_contains_norm():
    spec = build_field(2, 1)
    ib = invariant_space(spec, 2, 2)
    # norm of y: y^2 + xy; plus x^2
    assert ib.dim == 2
    assert "y^2 + xy" in ib.texts


def test_orbit_product_is_invariant_and_involves_last():
    spec = build_field(2, 1)
    f = orbit_product_of_last(spec, 3)
    assert f.degree() == 4
    assert "z" in f.involves()


# --------------------------------------------------- non-polynomiality

def test_certificate_q3_alpha3():
    rec = non_polynomiality_certificate(3, 3)
    assert rec["verdict"] == "not_polynomial"
    assert rec["group_order"] == 9
    statuses = {tuple(r["degrees"]): r["status"] for r in rec["multisets"]}
    assert statuses == {(1, 1, 9): "excluded", (1, 3, 3): "excluded"}


def test_certificate_q2_alpha3():
    rec = non_polynomiality_certificate(2, 3)
    assert rec["verdict"] == "not_polynomial"


def test_certificate_alpha2_not_excluded():
    rec = non_polynomiality_certificate(2, 2)
    assert rec["verdict"] == "not_excluded"
    assert any(r["status"] == "survives" for r in rec["multisets"])


def test_certificate_alpha1_trivial():
    assert non_polynomiality_certificate(5, 1)["verdict"] == "polynomial-trivial"


# ------------------------------------------------------- remainder table

def test_printed_table_matches_frozen_copy():
    golden = json.loads((DATA / "remainder_table_f3.json").read_text())
    assert golden == PRINTED_REMAINDER_TABLE


def test_remainder_table_classification():
    rec = remainder_table()
    flat = [c for row in rec["classification"].values() for c in row]
    assert flat.count("exact") == 36
    assert flat.count("retains-self-term") == 4
    assert flat.count("mismatch") == 0
    cells = {(f["row"], f["column"]) for f in rec["findings"]}
    assert cells == {
        ("xz^2", "x"),
        ("y^2z", "const"),
        ("yz^2", "const"),
        ("xyz", "x"),
    }


def test_remainder_table_known_cells():
    rec = remainder_table()
    assert rec["computed"]["x^3"] == ["0", "0", "0", "0"]
    assert rec["computed"]["y^3"] == ["0", "0", "0", "a"]
    assert rec["computed"]["xy^2"] == ["0", "0", "2ay", "a^2"]
    # the printed const cell keeps the monomial's own term; computed drops it
    assert rec["computed"]["y^2z"][0] == "ay^3"
    assert rec["printed"]["y^2z"][0] == "ay^3+y^2z"


# ------------------------------------------------------ sign conventions

def test_sigma_entry_symbolic_char2_matches():
    for q in (2, 4):
        rec = sigma_minus_one_symbolic(q)
        assert rec["match"]
        assert rec["findings"] == []


def test_sigma_entry_symbolic_odd_char_finding():
    rec = sigma_minus_one_symbolic(3)
    assert not rec["match"]
    assert rec["findings"][0]["kind"] == "entry-sign-discrepancy"
    assert rec["difference"] == "2a^4 + a^2"


def test_sigma_entry_numeric_f9_counterexample():
    ext = build_field(3, 2)
    g6 = [e for e in ext.elements() if fmt_element(e) == "g^6"][0]
    rec = sigma_minus_one_matrix((ext.one, g6, ext.zero), 3)
    assert rec["entry_13"] == "1"
    assert rec["displayed_form"] == "2"
    assert not rec["matches_displayed"]


def test_sigma_entry_numeric_f9_mismatch_count():
    ext = build_field(3, 2)
    bad = sum(
        not sigma_minus_one_matrix((ext.one, a, b), 3)["matches_displayed"]
        for a in ext.elements()
        for b in ext.elements()
    )
    assert bad == 54


def test_sigma_entry_numeric_char2_all_match():
    ext = build_field(2, 2)
    assert all(
        sigma_minus_one_matrix((ext.one, a, b), 2)["matches_displayed"]
        for a in ext.elements()
        for b in ext.elements()
    )


# ------------------------------------------------------- eigenvectors

def test_eigenspace_divergence_instance():
    ext = build_field(2, 2)
    A = ((ext.one, ext.one), (ext.zero, ext.one))
    rec = eigenspace_invariants(A, 2)
    assert rec["power"]["dim"] == 1
    assert rec["power"]["basis"] == [["1", "0"]]
    assert rec["semilinear"]["dim"] == 2
    assert not rec["agree"]
    assert rec["findings"][0]["kind"] == "eigenvector-construction-divergence"


def test_eigenspace_agreement_on_diagonal():
    ext = build_field(2, 2)
    A = ((ext.one, ext.zero), (ext.zero, ext.one))
    rec = eigenspace_invariants(A, 2)
    assert rec["agree"]
    assert rec["power"]["dim"] == rec["semilinear"]["dim"] == 2
    assert rec["findings"] == []


def test_eigenspace_compat_flags():
    ext = build_field(2, 2)
    A = ((ext.one, ext.one), (ext.zero, ext.one))
    rec = eigenspace_invariants(A, 2)
    assert all(rec["compat"]["power"])
    assert all(rec["compat"]["semilinear"])
