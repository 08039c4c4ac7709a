"""Regenerate the packaged data files from the built-in constructions.

Run from the repository root:

    python3 tools/generate_data.py

Rewrites src/crosscap/data/{registry,twists,certificates}_g{4..10}.txt.
The test suite asserts the shipped files match this output byte for
byte, so regenerate after any layout change.
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from crosscap.surface import SurfaceSpec, registry_text, standard_registry
from crosscap.twists import (
    certificates_text,
    derive_generators,
    standard_certificates,
    tables_text,
)

GENERA = range(4, 11)


def main() -> None:
    data_dir = pathlib.Path(__file__).resolve().parents[1] / "src" / "crosscap" / "data"
    data_dir.mkdir(exist_ok=True)
    for genus in GENERA:
        registry = standard_registry(SurfaceSpec(genus, 1))
        generators = derive_generators(registry)
        certificates = standard_certificates(genus)
        (data_dir / f"registry_g{genus}.txt").write_text(
            registry_text(registry), encoding="utf-8"
        )
        (data_dir / f"twists_g{genus}.txt").write_text(
            tables_text(generators, genus), encoding="utf-8"
        )
        (data_dir / f"certificates_g{genus}.txt").write_text(
            certificates_text(certificates), encoding="utf-8"
        )
        print(f"genus {genus}: {len(registry)} curves, {len(generators)} twists")


if __name__ == "__main__":
    main()
