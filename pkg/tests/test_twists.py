"""Twist automorphisms: derivation, composition, suites, certificates."""

import pytest

from crosscap.surface import SurfaceSpec, standard_registry
from crosscap.twists import (
    Automorphism,
    AutomorphismError,
    Certificate,
    CertificateError,
    ExpressionError,
    PHI_EXPRESSION,
    TwistGenerator,
    TwistTableError,
    apply_to_curve,
    attach_tables,
    audit_tables,
    calibrate_key_conjugation,
    check_certificate,
    curve_for_generator,
    derive_generator,
    derive_generators,
    equal,
    evaluate,
    first_difference,
    fixing_suite,
    generator_for_curve,
    generator_names,
    load_twist_tables,
    parse_expression,
    parse_twist_tables,
    relation_suite,
    standard_certificates,
    tables_text,
    verify_key_conjugation,
    write_twist_tables,
)
from crosscap.words import CyclicWord, Word


@pytest.fixture(scope="module")
def world4():
    reg = standard_registry(SurfaceSpec(4, 1))
    return reg, derive_generators(reg)


def test_identity_automorphism():
    one = Automorphism.identity(3)
    w = Word.parse("x1 x2^-1 x3", 3)
    assert one.apply(w) == w
    assert one.inverse_apply(w) == w


def test_construction_rejects_unsound_inverse():
    """images and inverse_images must really undo each other."""
    images = (Word.parse("x2", 2), Word.parse("x1", 2))
    bogus = (Word.parse("x1", 2), Word.parse("x2", 2))  # claims identity
    with pytest.raises(AutomorphismError, match="x1"):
        Automorphism(2, images, bogus)


def test_the_smallest_twist_is_pinned():
    """The chain twist at genus 2 fixes the global sign convention:
    x1 -> x1^2 x2 and x2 -> x2^-1 x1^-1 x2."""
    reg = standard_registry(SurfaceSpec(2, 1))
    gen = derive_generator(reg, "alpha_1")
    assert gen.auto.images == (
        Word.parse("x1 x1 x2", 2),
        Word.parse("x2^-1 x1^-1 x2", 2),
    )
    round_trip = gen.auto.inverse().apply(gen.auto.apply(Word.parse("x1 x2", 2)))
    assert round_trip == Word.parse("x1 x2", 2)


def test_generator_curve_naming():
    assert generator_for_curve("alpha_3") == "a3"
    assert generator_for_curve("zeta") == "f"
    assert curve_for_generator("y2") == "psi"
    assert generator_names(4) == ("a1", "a2", "a3", "b", "c", "e", "f", "y2")
    assert generator_names(3) == ("a1", "a2")


def test_derived_generators_fix_the_boundary(world4):
    _, gens = world4
    for gen in gens.values():
        assert gen.auto.fixes_boundary()


def test_composition_applies_rightmost_first(world4):
    _, gens = world4
    a1, a2 = gens["a1"].auto, gens["a2"].auto
    w = Word.parse("x3", 4)
    assert a1.after(a2).apply(w) == a1.apply(a2.apply(w))


def test_inverse_swaps_directions(world4):
    _, gens = world4
    b = gens["b"].auto
    w = Word.parse("x1 x4^-1", 4)
    assert b.inverse().apply(w) == b.inverse_apply(w)
    assert equal(b.after(b.inverse()), Automorphism.identity(4))


def test_parse_expression_grammar():
    names = ("a1", "a2", "b")
    assert parse_expression("a1 a2^-1  b", names) == (
        ("a1", 1),
        ("a2", -1),
        ("b", 1),
    )
    with pytest.raises(ExpressionError, match="token 2"):
        parse_expression("a1 q7", names)
    # the empty product is the identity
    assert parse_expression("   ", names) == ()


def test_evaluate_cancels_inverses(world4):
    _, gens = world4
    assert equal(evaluate("a1 a1^-1", gens, 4), Automorphism.identity(4))


def test_braid_relation_as_expressions(world4):
    _, gens = world4
    lhs = evaluate("a1 a2 a1", gens, 4)
    rhs = evaluate("a2 a1 a2", gens, 4)
    assert equal(lhs, rhs)
    assert first_difference(lhs, rhs) is None


def test_first_difference_names_a_generator(world4):
    _, gens = world4
    where = first_difference(gens["a1"].auto, gens["a2"].auto)
    assert where == "x1"


def test_disjoint_twists_commute(world4):
    _, gens = world4
    lhs = evaluate("a1 a3", gens, 4)
    rhs = evaluate("a3 a1", gens, 4)
    assert equal(lhs, rhs)


@pytest.mark.parametrize("genus", [4, 5, 6])
def test_relation_and_fixing_suites_are_clean(genus):
    reg = standard_registry(SurfaceSpec(genus, 1))
    gens = derive_generators(reg)
    for result in fixing_suite(reg, gens) + relation_suite(reg, gens):
        assert result.ok, result.format()


def test_relation_suite_braids_chain_with_beta_from_genus_five():
    reg5 = standard_registry(SurfaceSpec(5, 1))
    checks5 = relation_suite(reg5, derive_generators(reg5))
    assert any(
        c.check == "braid" and set(c.subject.split("~")) == {"a4", "b"}
        for c in checks5
    )
    reg4 = standard_registry(SurfaceSpec(4, 1))
    checks4 = relation_suite(reg4, derive_generators(reg4))
    assert not any("b" in c.subject.split("~") and c.check == "braid" for c in checks4)


# -- the key conjugation ---------------------------------------------------


def test_conjugate_of_epsilon_is_zeta(world4):
    reg, gens = world4
    image = apply_to_curve(reg, gens, PHI_EXPRESSION, "epsilon")
    zeta = reg.curve("zeta").cyclic_class()
    assert image.unoriented() == zeta.unoriented()
    assert len(image.letters) == 6


@pytest.mark.parametrize("genus", [4, 5, 7])
def test_key_conjugation_holds(genus):
    reg = standard_registry(SurfaceSpec(genus, 1))
    gens = derive_generators(reg)
    report = verify_key_conjugation(reg, gens)
    assert report.curve_clause_ok
    assert report.twist_clause_ok
    assert report.ok


def test_key_conjugation_diagnostics_name_the_failure(world4):
    reg, gens = world4
    broken = dict(gens)
    broken["f"] = TwistGenerator("f", gens["f"].curve, gens["a1"].auto)
    report = verify_key_conjugation(reg, broken)
    assert not report.ok
    assert any("x" in d for d in report.diagnostics)


def test_calibration_repairs_a_mirrored_f(world4):
    reg, gens = world4
    mirrored = dict(gens)
    mirrored["f"] = TwistGenerator("f", gens["f"].curve, gens["f"].auto.inverse())
    repaired, flipped = calibrate_key_conjugation(reg, mirrored)
    assert flipped
    assert verify_key_conjugation(reg, repaired).ok
    # a clean family is left untouched
    same, flipped = calibrate_key_conjugation(reg, gens)
    assert not flipped
    assert same["f"].auto is gens["f"].auto


# -- certificates ------------------------------------------------------------


def test_standard_certificate_for_f_verifies(world4):
    _, gens = world4
    certs = standard_certificates(4)
    assert set(certs) == {"f"}
    result = check_certificate(certs["f"], gens, 4)
    assert result.ok, result.diagnostic


def test_bogus_certificate_reports_first_difference(world4):
    _, gens = world4
    bogus = Certificate(target="a1", allowed=("a1", "a2"), expression="a2")
    result = check_certificate(bogus, gens, 4)
    assert not result.ok
    assert "first difference at x1" in result.diagnostic


def test_certificate_rejects_escaping_generators(world4):
    _, gens = world4
    leaky = Certificate(target="f", allowed=("a1", "b"), expression="a1 e b")
    with pytest.raises(CertificateError, match="outside.*e"):
        check_certificate(leaky, gens, 4)


def test_certificate_unknown_target(world4):
    _, gens = world4
    stray = Certificate(target="q9", allowed=("a1",), expression="a1")
    with pytest.raises(CertificateError, match="q9"):
        check_certificate(stray, gens, 4)


# -- twist-table files -------------------------------------------------------


def test_tables_round_trip_through_text(world4):
    reg, gens = world4
    parsed = parse_twist_tables(tables_text(gens, 4), 4)
    attached = attach_tables(reg, parsed)
    for name in gens:
        assert attached[name].auto.images == gens[name].auto.images


def test_tables_round_trip_through_file(tmp_path, world4):
    reg, gens = world4
    path = tmp_path / "tables.txt"
    write_twist_tables(gens, 4, path)
    loaded = load_twist_tables(reg, path)
    assert set(loaded) == set(gens)
    assert equal(loaded["f"].auto, gens["f"].auto)


@pytest.mark.parametrize(
    "mangle, fragment",
    [
        (lambda t: t.replace("[a1]", "[a1]\n[a1]", 1), "duplicate"),
        (lambda t: t.replace("x1 -> x1 x1 x2", "", 1), "x1"),
    ],
)
def test_table_grammar_errors(world4, mangle, fragment):
    _, gens = world4
    text = mangle(tables_text(gens, 4))
    with pytest.raises(TwistTableError, match=fragment):
        parse_twist_tables(text, 4)


def test_unknown_block_names_are_rejected_at_attach(world4):
    """Parsing is name-agnostic; attaching demands a registered curve."""
    reg, gens = world4
    text = tables_text(gens, 4).replace("[a1]", "[q3]", 1)
    tables = parse_twist_tables(text, 4)
    with pytest.raises(TwistTableError, match="q3"):
        attach_tables(reg, tables)


def test_attach_rejects_tables_for_unregistered_curves():
    reg3 = standard_registry(SurfaceSpec(3, 1))
    reg4 = standard_registry(SurfaceSpec(4, 1))
    gens4 = derive_generators(reg4)
    tables = {
        name: (gen.auto.images, gen.auto.inverse_images)
        for name, gen in gens4.items()
    }
    with pytest.raises((TwistTableError, AutomorphismError)):
        attach_tables(reg3, tables)


def test_attach_rejects_corrupted_images(world4):
    reg, gens = world4
    tables = {
        "a1": (gens["a2"].auto.images, gens["a1"].auto.inverse_images),
    }
    with pytest.raises((TwistTableError, AutomorphismError)):
        attach_tables(reg, tables)


def test_audit_catches_a_silently_inverted_table(world4):
    reg, gens = world4
    flipped = dict(gens)
    flipped["b"] = TwistGenerator("b", gens["b"].curve, gens["b"].auto.inverse())
    results = audit_tables(reg, flipped)
    bad = [r for r in results if not r.ok]
    assert len(bad) == 1
    assert bad[0].subject == "b"
    assert "arrow" in bad[0].detail


def test_audit_is_clean_on_derived_tables(world4):
    reg, gens = world4
    assert all(r.ok for r in audit_tables(reg, gens))
