"""The shipped data files are exactly what the constructions produce.

Anyone can hand-edit a text table; these tests pin the packaged files to
the in-memory derivations so an edited file cannot drift in silently.
"""

from importlib import resources

import pytest

from crosscap.surface import (
    SurfaceSpec,
    parse_registry,
    registry_text,
    standard_registry,
    validate_registry,
)
from crosscap.twists import (
    attach_tables,
    certificates_text,
    check_certificate,
    derive_generators,
    parse_certificates,
    parse_twist_tables,
    standard_certificates,
    tables_text,
)

SHIPPED_GENERA = range(4, 11)


def shipped(name):
    return (resources.files("crosscap") / "data" / name).read_text(encoding="utf-8")


@pytest.mark.parametrize("genus", SHIPPED_GENERA)
def test_registry_file_matches_the_construction(genus):
    registry = standard_registry(SurfaceSpec(genus, 1))
    assert shipped(f"registry_g{genus}.txt") == registry_text(registry)


@pytest.mark.parametrize("genus", SHIPPED_GENERA)
def test_twist_file_matches_the_derivation(genus):
    registry = standard_registry(SurfaceSpec(genus, 1))
    generators = derive_generators(registry)
    assert shipped(f"twists_g{genus}.txt") == tables_text(generators, genus)


@pytest.mark.parametrize("genus", SHIPPED_GENERA)
def test_certificate_file_matches_the_construction(genus):
    assert shipped(f"certificates_g{genus}.txt") == certificates_text(
        standard_certificates(genus)
    )


def test_exactly_the_advertised_genera_are_shipped():
    names = sorted(
        entry.name
        for entry in (resources.files("crosscap") / "data").iterdir()
        if entry.name.endswith(".txt")
    )
    expected = sorted(
        f"{kind}_g{genus}.txt"
        for kind in ("registry", "twists", "certificates")
        for genus in SHIPPED_GENERA
    )
    assert names == expected


def test_shipped_files_load_and_validate_end_to_end():
    """Parse the genus-7 files the way the command line does and run the
    full validation stack on what comes back."""
    genus = 7
    spec = SurfaceSpec(genus, 1)
    registry = parse_registry(spec, shipped(f"registry_g{genus}.txt"))
    assert validate_registry(registry).ok
    tables = parse_twist_tables(shipped(f"twists_g{genus}.txt"), genus)
    generators = attach_tables(registry, tables)
    certificates = parse_certificates(shipped(f"certificates_g{genus}.txt"))
    assert check_certificate(certificates["f"], generators, genus).ok
