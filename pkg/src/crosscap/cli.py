"""Batch verification front end.

``crosscap`` exposes the package as six subcommands:

* ``verify-theorem`` - the staged identity suite over the registered
  twists: registry validation, twist-table invariants, the key
  conjugation, the generation certificate for ``f``, optional extra
  certificates, and homology smoke tests.  Exit 0 iff every mandatory
  stage passes.
* ``relation`` - compare two twist expressions (EQUAL/UNEQUAL).
* ``apply-curve`` - image of a registered curve under an expression.
* ``homology`` - the integral matrix an expression induces.
* ``complement`` - cut the surface along registered curves.
* ``validate-data`` - integrity checks for external data files.

Data files are resolved per genus: an explicit ``--registry`` /
``--twist-table`` / ``--certificates`` path wins, then a file in
``$MCG_DATA_DIR``, then the packaged data directory, and finally the
built-in constructions.  Structured output (``--format structured``) is
line-oriented ``key=value`` and byte-stable for fixed inputs.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from crosscap.cutting import cut_along
from crosscap.homology import abelianize
from crosscap.surface import (
    MIN_RICH_GENUS,
    Registry,
    RegistryFormatError,
    SurfaceSpec,
    UnknownCurveError,
    canonical_curve_name,
    parse_registry,
    standard_registry,
    validate_registry,
    x0_names,
)
from crosscap.twists import (
    AutomorphismError,
    CertificateError,
    ExpressionError,
    TwistTableError,
    apply_to_curve,
    attach_tables,
    audit_tables,
    calibrate_key_conjugation,
    check_certificate,
    derive_generators,
    equal,
    evaluate,
    first_difference,
    fixing_suite,
    generator_names,
    parse_certificates,
    parse_twist_tables,
    relation_suite,
    standard_certificates,
    verify_key_conjugation,
)
from crosscap.words import letter_str

DATA_DIR_ENV = "MCG_DATA_DIR"

_DATA_FILES = {
    "registry": "registry_g{genus}.txt",
    "twists": "twists_g{genus}.txt",
    "certificates": "certificates_g{genus}.txt",
}


def _locate_data(kind: str, genus: int, explicit: str | None) -> tuple[str, str | None]:
    """Return (source label, file text or None).

    ``None`` text means: no file anywhere, fall back to the built-in
    construction.  An explicit path that does not exist is an error.
    """
    if explicit is not None:
        return "file", Path(explicit).read_text(encoding="utf-8")
    name = _DATA_FILES[kind].format(genus=genus)
    env_dir = os.environ.get(DATA_DIR_ENV)
    if env_dir:
        candidate = Path(env_dir) / name
        if candidate.is_file():
            return "env", candidate.read_text(encoding="utf-8")
    packaged = resources.files("crosscap") / "data" / name
    if packaged.is_file():
        return "packaged", packaged.read_text(encoding="utf-8")
    return "derived", None


def _spelled(letters: tuple[int, ...], sep: str) -> str:
    if not letters:
        return "1"
    return sep.join(letter_str(letter) for letter in letters)


# -- argument plumbing ---------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crosscap",
        description="Twist computations on non-orientable surfaces.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, required=True, help="crosscap genus g >= 2")
    common.add_argument(
        "--n",
        type=int,
        choices=(0, 1),
        default=0,
        help="number of boundary circles (default 0: closed surface)",
    )
    common.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        dest="fmt",
        help="output style (structured = line-oriented key=value)",
    )
    common.add_argument("--registry", metavar="PATH", help="curve registry file")
    common.add_argument("--twist-table", metavar="PATH", help="twist table file")
    common.add_argument("--certificates", metavar="PATH", help="certificate file")
    common.add_argument(
        "--seed", type=int, default=0, help="seed for randomized property checks"
    )

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(
        "verify-theorem",
        parents=[common],
        help="run the full staged verification suite",
    )
    p_rel = sub.add_parser(
        "relation", parents=[common], help="compare two twist expressions"
    )
    p_rel.add_argument("lhs", help="left expression, e.g. 'a1 a2 a1'")
    p_rel.add_argument("rhs", help="right expression, e.g. 'a2 a1 a2'")
    p_apply = sub.add_parser(
        "apply-curve", parents=[common], help="image of a curve under an expression"
    )
    p_apply.add_argument("expression")
    p_apply.add_argument("curve", help="registered curve name, e.g. epsilon")
    p_hom = sub.add_parser(
        "homology", parents=[common], help="integral matrix of an expression"
    )
    p_hom.add_argument("expression")
    p_comp = sub.add_parser(
        "complement", parents=[common], help="cut the surface along curves"
    )
    p_comp.add_argument(
        "--curves",
        required=True,
        help="comma/space separated names; ranges like alpha1..alpha4; X0; '' for none",
    )
    p_comp.add_argument("--drop", metavar="NAME", help="remove one name from the set")
    sub.add_parser(
        "validate-data", parents=[common], help="check external data files"
    )
    return parser


def _expand_curve_list(spec_text: str, genus: int) -> list[str]:
    names: list[str] = []

    def push(name: str) -> None:
        if name not in names:
            names.append(name)

    for token in spec_text.replace(",", " ").split():
        if token == "X0":
            if genus < MIN_RICH_GENUS:
                raise UnknownCurveError(
                    f"X0 needs genus >= {MIN_RICH_GENUS}, got {genus}"
                )
            for name in x0_names(genus):
                push(name)
            continue
        if ".." in token:
            lo_text, _, hi_text = token.partition("..")
            lo = canonical_curve_name(lo_text)
            hi = canonical_curve_name(hi_text)
            if (
                lo is None
                or hi is None
                or not lo.startswith("alpha_")
                or not hi.startswith("alpha_")
            ):
                raise UnknownCurveError(f"bad range {token!r}: use alphaI..alphaJ")
            lo_i = int(lo.split("_")[1])
            hi_i = int(hi.split("_")[1])
            if lo_i > hi_i:
                raise UnknownCurveError(f"bad range {token!r}: empty")
            for i in range(lo_i, hi_i + 1):
                push(f"alpha_{i}")
            continue
        canon = canonical_curve_name(token)
        if canon is None:
            raise UnknownCurveError(f"unknown curve name {token!r}")
        push(canon)
    return names


# -- world loading -------------------------------------------------------


class _WorldError(Exception):
    """A data file failed to load; message is user-facing."""


def _load_registry(args) -> tuple[Registry, str]:
    try:
        source, text = _locate_data("registry", args.genus, args.registry)
    except OSError as exc:
        raise _WorldError(f"registry: {exc}") from exc
    spec = SurfaceSpec(args.genus, args.n)
    if text is None:
        return standard_registry(spec), source
    try:
        return parse_registry(spec, text), source
    except RegistryFormatError as exc:
        raise _WorldError(f"registry: {exc}") from exc


def _load_generators(args, registry: Registry) -> tuple[dict, str]:
    try:
        source, text = _locate_data("twists", args.genus, args.twist_table)
    except OSError as exc:
        raise _WorldError(f"twist table: {exc}") from exc
    if text is None:
        return derive_generators(registry), source
    try:
        tables = parse_twist_tables(text, args.genus)
        return attach_tables(registry, tables), source
    except (TwistTableError, AutomorphismError) as exc:
        raise _WorldError(f"twist table: {exc}") from exc


def _load_certificates(args) -> tuple[dict, str]:
    try:
        source, text = _locate_data("certificates", args.genus, args.certificates)
    except OSError as exc:
        raise _WorldError(f"certificates: {exc}") from exc
    if text is None:
        return standard_certificates(args.genus), source
    try:
        return parse_certificates(text), source
    except CertificateError as exc:
        raise _WorldError(f"certificates: {exc}") from exc


def _note_boundary_model(args) -> None:
    if args.n == 0:
        print(
            "note: twists act on the bordered model; closing the surface caps "
            "the free side with a disk and does not change any identity below",
            file=sys.stderr,
        )


# -- verify-theorem ------------------------------------------------------


class _StageLog:
    def __init__(self, fmt: str) -> None:
        self.fmt = fmt
        self.lines: list[str] = []
        self.failed_stage: str | None = None

    def record(self, stage: str, status: str, detail: str = "") -> None:
        if self.fmt == "structured":
            self.lines.append(f"stage={stage} status={status}")
        else:
            tag = {"PASS": "[PASS]", "FAIL": "[FAIL]", "SKIPPED": "[SKIP]"}[status]
            suffix = f": {detail}" if detail else ""
            self.lines.append(f"{tag} {stage}{suffix}")
        if status == "FAIL" and self.failed_stage is None:
            self.failed_stage = stage

    def finish(self, genus: int, n: int) -> int:
        ok = self.failed_stage is None
        if self.fmt == "structured":
            self.lines.append(f"result={'PASS' if ok else 'FAIL'}")
        elif ok:
            self.lines.append(f"verify-theorem: PASS (genus {genus}, n {n})")
        else:
            self.lines.append(
                f"verify-theorem: FAIL at stage {self.failed_stage} "
                f"(genus {genus}, n {n})"
            )
        print("\n".join(self.lines))
        return 0 if ok else 1


def _cmd_verify_theorem(args) -> int:
    _note_boundary_model(args)
    log = _StageLog(args.fmt)

    # stage 1: the registry and its geometric invariants
    try:
        registry, _ = _load_registry(args)
        report = validate_registry(registry)
    except _WorldError as exc:
        log.record("registry-validation", "FAIL", str(exc))
        return log.finish(args.genus, args.n)
    if not report.ok:
        first = report.failures()[0]
        log.record(
            "registry-validation", "FAIL", f"{first.check} {first.subject}: {first.detail}"
        )
        return log.finish(args.genus, args.n)
    log.record(
        "registry-validation",
        "PASS",
        f"{len(registry)} curves, {len(report.results)} checks",
    )

    # stage 2: twist tables satisfy the defining identities
    try:
        generators, source = _load_generators(args, registry)
    except _WorldError as exc:
        log.record("twist-suite", "FAIL", str(exc))
        return log.finish(args.genus, args.n)
    checks = fixing_suite(registry, generators) + relation_suite(registry, generators)
    if source != "derived":
        checks = audit_tables(registry, generators) + checks
    bad = [c for c in checks if not c.ok]
    if bad:
        log.record(
            "twist-suite", "FAIL", f"{bad[0].check} {bad[0].subject}: {bad[0].detail}"
        )
        return log.finish(args.genus, args.n)
    log.record("twist-suite", "PASS", f"{len(checks)} identities")

    # stage 3: the key conjugation
    generators, flipped = calibrate_key_conjugation(registry, generators)
    if flipped:
        print(
            "note: the loaded table orients f opposite to the registry layout; "
            "its inverse satisfies the key conjugation and is used below",
            file=sys.stderr,
        )
    conj = verify_key_conjugation(registry, generators)
    if not conj.ok:
        log.record("key-conjugation", "FAIL", "; ".join(conj.diagnostics))
        return log.finish(args.genus, args.n)
    log.record("key-conjugation", "PASS", "curve clause and twist clause hold")

    # stages 4-5: certificates (f is mandatory, the rest optional)
    try:
        certificates, _ = _load_certificates(args)
    except _WorldError as exc:
        log.record("certificate-f", "FAIL", str(exc))
        return log.finish(args.genus, args.n)
    for target in ("f", "c", "y2"):
        stage = f"certificate-{target}"
        cert = certificates.get(target)
        if cert is None:
            if target == "f":
                log.record(stage, "FAIL", "no certificate for f")
                return log.finish(args.genus, args.n)
            log.record(stage, "SKIPPED", "no certificate provided")
            continue
        try:
            result = check_certificate(cert, generators, args.genus)
        except CertificateError as exc:
            log.record(stage, "FAIL", str(exc))
            return log.finish(args.genus, args.n)
        if not result.ok:
            log.record(stage, "FAIL", result.diagnostic)
            return log.finish(args.genus, args.n)
        log.record(stage, "PASS", f"expression stays inside {', '.join(cert.allowed)}")

    # stage 6: homology smoke tests
    failures: list[str] = []
    matrices = {name: abelianize(gen.auto) for name, gen in generators.items()}
    for name, matrix in matrices.items():
        if matrix.det() not in (1, -1):
            failures.append(f"det t_{name} = {matrix.det()}")
    cert = certificates["f"]
    direct = matrices["f"]
    via_expression = abelianize(evaluate(cert.expression, generators, args.genus))
    if direct != via_expression:
        failures.append("matrix of f disagrees with its certificate expression")
    rng = random.Random(args.seed)
    names = sorted(generators)
    for _ in range(10):
        e1 = " ".join(rng.choice(names) for _ in range(rng.randint(1, 4)))
        e2 = " ".join(rng.choice(names) for _ in range(rng.randint(1, 4)))
        p = evaluate(e1, generators, args.genus)
        q = evaluate(e2, generators, args.genus)
        if abelianize(p.after(q)) != abelianize(p) * abelianize(q):
            failures.append(f"functoriality fails on {e1!r} after {e2!r}")
            break
    if failures:
        log.record("homology-smoke", "FAIL", failures[0])
        return log.finish(args.genus, args.n)
    log.record(
        "homology-smoke", "PASS", "determinants are units; products match"
    )
    return log.finish(args.genus, args.n)


# -- the small commands --------------------------------------------------


def _cmd_relation(args) -> int:
    registry, _ = _load_registry(args)
    generators, _ = _load_generators(args, registry)
    try:
        lhs = evaluate(args.lhs, generators, args.genus)
        rhs = evaluate(args.rhs, generators, args.genus)
    except ExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if equal(lhs, rhs):
        print("result=EQUAL" if args.fmt == "structured" else "EQUAL")
        return 0
    where = first_difference(lhs, rhs)
    if args.fmt == "structured":
        print(f"result=UNEQUAL first_difference={where}")
    else:
        print(f"UNEQUAL (images first differ at {where})")
    return 1


def _cmd_apply_curve(args) -> int:
    registry, _ = _load_registry(args)
    generators, _ = _load_generators(args, registry)
    try:
        image = apply_to_curve(registry, generators, args.expression, args.curve)
    except ExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.fmt == "structured":
        print(f"class={_spelled(image.letters, ',')}")
    else:
        print(_spelled(image.letters, " "))
    return 0


def _cmd_homology(args) -> int:
    registry, _ = _load_registry(args)
    generators, _ = _load_generators(args, registry)
    try:
        auto = evaluate(args.expression, generators, args.genus)
    except ExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    matrix = abelianize(auto)
    if args.fmt == "structured":
        print(f"matrix={matrix.structured()}")
    else:
        print(matrix.format_text())
    return 0


def _cmd_complement(args) -> int:
    registry, _ = _load_registry(args)
    names = _expand_curve_list(args.curves, args.genus)
    if args.drop is not None:
        canon = canonical_curve_name(args.drop)
        if canon is None or canon not in names:
            raise UnknownCurveError(f"--drop {args.drop!r}: not in the selected set")
        names.remove(canon)
    report = cut_along(registry, names)
    if args.fmt == "structured":
        for line in report.structured_lines():
            print(line)
    else:
        print(report.format_text())
    return 0


def _cmd_validate_data(args) -> int:
    rows: list[tuple[str, str, str]] = []  # (check, status, detail)

    registry = None
    try:
        registry, _ = _load_registry(args)
        report = validate_registry(registry)
        if report.ok:
            rows.append(("registry", "PASS", f"{len(report.results)} checks"))
        else:
            first = report.failures()[0]
            rows.append(
                ("registry", "FAIL", f"{first.check} {first.subject}: {first.detail}")
            )
    except _WorldError as exc:
        rows.append(("registry", "FAIL", str(exc)))

    if registry is not None:
        try:
            generators, source = _load_generators(args, registry)
            audit = audit_tables(registry, generators) if source != "derived" else []
            bad = [c for c in audit if not c.ok]
            if bad:
                rows.append(("twist-tables", "FAIL", bad[0].detail))
            else:
                detail = (
                    f"{len(audit)} tables match the derived twists"
                    if audit
                    else "derived in memory"
                )
                rows.append(("twist-tables", "PASS", detail))
        except _WorldError as exc:
            rows.append(("twist-tables", "FAIL", str(exc)))
    else:
        rows.append(("twist-tables", "FAIL", "registry unavailable"))

    try:
        certificates, _ = _load_certificates(args)
        rows.append(("certificates", "PASS", f"targets: {', '.join(sorted(certificates))}"))
    except _WorldError as exc:
        rows.append(("certificates", "FAIL", str(exc)))

    ok = all(status == "PASS" for _, status, _ in rows)
    if args.fmt == "structured":
        for check, status, _ in rows:
            print(f"check={check} status={status}")
        print(f"result={'PASS' if ok else 'FAIL'}")
    else:
        for check, status, detail in rows:
            tag = "[PASS]" if status == "PASS" else "[FAIL]"
            print(f"{tag} {check}: {detail}")
        print(f"validate-data: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


_COMMANDS: dict[str, Callable] = {
    "verify-theorem": _cmd_verify_theorem,
    "relation": _cmd_relation,
    "apply-curve": _cmd_apply_curve,
    "homology": _cmd_homology,
    "complement": _cmd_complement,
    "validate-data": _cmd_validate_data,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.genus < 2:
        parser.error(f"--genus must be at least 2, got {args.genus}")
    if args.command == "verify-theorem" and args.genus < MIN_RICH_GENUS:
        parser.error(
            f"verify-theorem needs --genus >= {MIN_RICH_GENUS} "
            f"(the twist family below that is too small), got {args.genus}"
        )
    try:
        return _COMMANDS[args.command](args)
    except _WorldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
