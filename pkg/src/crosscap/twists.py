"""Exact twist automorphisms and the relations between them.

A mapping class acts on the free fundamental group of the bordered
surface; here a class is an :class:`Automorphism` storing the images of
``x1 .. xg`` together with the images under the inverse map, verified
against each other at construction time.  Twist generators are named
``a1 .. a{g-1}`` (the chain), ``b``, ``c``, ``e``, ``f`` and ``y2``,
matching the registered curves alpha_i, beta, gamma, epsilon, zeta and
psi.  Generators are either derived from the registered layouts or
loaded from twist-table files and audited against the derivation.

Everything downstream (relation checking, certificates, the CLI) speaks
in terms of generator expressions such as ``"a3^-1 b a3"`` — whitespace
separated, exponents limited to ``^-1``, leftmost factor applied last.
"""

from __future__ import annotations

import re
from dataclasses import InitVar, dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from crosscap.polygon import DegeneratePositionError, apply_images, crossing_count, twist_images
from crosscap.surface import (
    CheckResult,
    CurveRecord,
    Registry,
    UnknownCurveError,
)
from crosscap.words import CyclicWord, Word, boundary_word


class AutomorphismError(ValueError):
    """Image and inverse-image tables that do not invert each other."""


class ExpressionError(ValueError):
    """A generator expression that does not parse."""


class TwistTableError(ValueError):
    """A twist-table file with bad grammar or unsound contents."""


class CertificateError(ValueError):
    """A certificate that is malformed or steps outside its allowed set."""


@dataclass(frozen=True)
class Automorphism:
    """An exact automorphism of the free group on ``x1 .. xg``.

    Constructing one from raw tables verifies that ``images`` and
    ``inverse_images`` compose to the identity in both orders, so
    unsound data cannot enter the engine silently.  Operations that
    preserve soundness by algebra alone (identity, inversion,
    composition) skip the re-check: products of long expressions would
    otherwise cost quadratic time for a proof the group structure
    already supplies.  ``verify_sound`` re-runs the check on demand.
    """

    genus: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]
    verify: InitVar[bool] = True

    def __post_init__(self, verify: bool) -> None:
        if self.genus < 1:
            raise ValueError(f"genus must be positive, got {self.genus}")
        for side, words in (("images", self.images), ("inverse images", self.inverse_images)):
            if len(words) != self.genus:
                raise AutomorphismError(
                    f"expected {self.genus} {side}, got {len(words)}"
                )
            for w in words:
                if w.genus != self.genus:
                    raise AutomorphismError(
                        f"{side} contain a word of genus {w.genus}, expected {self.genus}"
                    )
        if verify:
            self.verify_sound()

    def verify_sound(self) -> None:
        """Check images∘inverse_images = identity on every generator.

        One direction is enough: it makes the map a surjective
        endomorphism of a free group, and free groups are Hopfian, so
        the map is an automorphism and the other composition is forced
        to be the identity as well.  Raises AutomorphismError naming the
        first generator that fails.
        """
        for i in range(self.genus):
            xi = Word(self.genus, (i + 1,))
            if apply_images(self.images, self.inverse_images[i]) != xi:
                raise AutomorphismError(
                    f"images do not undo the inverse map at x{i + 1}"
                )

    @classmethod
    def identity(cls, genus: int) -> "Automorphism":
        gens = tuple(Word(genus, (i,)) for i in range(1, genus + 1))
        return cls(genus, gens, gens, verify=False)

    def apply(self, word: Word) -> Word:
        return apply_images(self.images, word)

    def inverse_apply(self, word: Word) -> Word:
        return apply_images(self.inverse_images, word)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.genus, self.inverse_images, self.images, verify=False)

    def after(self, other: "Automorphism") -> "Automorphism":
        """The composite self∘other (other acts first)."""
        if other.genus != self.genus:
            raise ValueError(
                f"cannot compose automorphisms of genus {self.genus} and {other.genus}"
            )
        images = tuple(self.apply(w) for w in other.images)
        inverse_images = tuple(other.inverse_apply(w) for w in self.inverse_images)
        return Automorphism(self.genus, images, inverse_images, verify=False)

    def fixes_boundary(self) -> bool:
        delta = boundary_word(self.genus)
        return self.apply(delta) == delta


def equal(p: Automorphism, q: Automorphism) -> bool:
    """Exact equality: the generator images agree word for word."""
    if p.genus != q.genus:
        raise ValueError(f"cannot compare genus {p.genus} with genus {q.genus}")
    return p.images == q.images


def first_difference(p: Automorphism, q: Automorphism) -> str | None:
    """Name of the first generator on which two maps disagree, or None."""
    if p.genus != q.genus:
        raise ValueError(f"cannot compare genus {p.genus} with genus {q.genus}")
    for i in range(p.genus):
        if p.images[i] != q.images[i]:
            return f"x{i + 1}"
    return None


# -- generator names ---------------------------------------------------------

_GENERATOR_FOR_CURVE = {
    "beta": "b",
    "gamma": "c",
    "epsilon": "e",
    "zeta": "f",
    "psi": "y2",
}
_CURVE_FOR_GENERATOR = {v: k for k, v in _GENERATOR_FOR_CURVE.items()}
_CHAIN_GEN_RE = re.compile(r"a([1-9]\d*)$")


def generator_for_curve(curve_name: str) -> str:
    m = re.match(r"alpha_([1-9]\d*)$", curve_name)
    if m:
        return f"a{m.group(1)}"
    gen = _GENERATOR_FOR_CURVE.get(curve_name)
    if gen is None:
        raise UnknownCurveError(f"no generator letter for curve {curve_name!r}")
    return gen


def curve_for_generator(gen_name: str) -> str | None:
    m = _CHAIN_GEN_RE.match(gen_name)
    if m:
        return f"alpha_{m.group(1)}"
    return _CURVE_FOR_GENERATOR.get(gen_name)


def generator_names(genus: int) -> tuple[str, ...]:
    names = [f"a{i}" for i in range(1, genus)]
    if genus >= 4:
        names += ["b", "c", "e", "f", "y2"]
    return tuple(names)


@dataclass(frozen=True)
class TwistGenerator:
    """A named twist: the curve it twists along and its automorphism."""

    name: str
    curve: CurveRecord
    auto: Automorphism


def derive_generator(registry: Registry, curve_name: str) -> TwistGenerator:
    """Build one twist generator from the registered chord layout."""
    rec = registry.curve(curve_name)
    geom = registry.geometry(curve_name)
    images = tuple(twist_images(geom, rec.arrow))
    inverse_images = tuple(twist_images(geom, -rec.arrow))
    return TwistGenerator(
        name=generator_for_curve(rec.name),
        curve=rec,
        auto=Automorphism(registry.spec.genus, images, inverse_images),
    )


def derive_generators(registry: Registry) -> dict[str, TwistGenerator]:
    gens: dict[str, TwistGenerator] = {}
    for rec in registry:
        gen = derive_generator(registry, rec.name)
        gens[gen.name] = gen
    return gens


# -- expressions -------------------------------------------------------------

_EXPR_TOKEN_RE = re.compile(r"([a-z][a-z0-9]*)(\^-1)?$")

Factor = tuple[str, int]


def parse_expression(text: str, names: Iterable[str]) -> tuple[Factor, ...]:
    """Parse ``"a1 b^-1 a1"`` into ((name, ±1), ...).

    Tokens are whitespace separated; only the exponent ``^-1`` is
    recognised.  Unknown generator names are rejected with the
    offending token's position.
    """
    known = set(names)
    factors: list[Factor] = []
    for pos, tok in enumerate(text.split(), start=1):
        m = _EXPR_TOKEN_RE.match(tok)
        if m is None:
            raise ExpressionError(
                f"token {pos} ({tok!r}) is not of the form <name> or <name>^-1"
            )
        name = m.group(1)
        if name not in known:
            raise ExpressionError(
                f"token {pos}: unknown generator {name!r} "
                f"(available: {', '.join(sorted(known))})"
            )
        factors.append((name, -1 if m.group(2) else 1))
    return tuple(factors)


def evaluate(
    expression: str | Sequence[Factor],
    generators: Mapping[str, TwistGenerator],
    genus: int,
) -> Automorphism:
    """Evaluate a generator expression; the leftmost factor acts last."""
    if isinstance(expression, str):
        expression = parse_expression(expression, generators.keys())
    acc = Automorphism.identity(genus)
    for name, exp in expression:
        auto = generators[name].auto
        acc = acc.after(auto if exp > 0 else auto.inverse())
    return acc


def apply_to_curve(
    registry: Registry,
    generators: Mapping[str, TwistGenerator],
    expression: str | Sequence[Factor],
    curve_name: str,
) -> CyclicWord:
    """Free-homotopy class of a registered curve under a mapping class."""
    rec = registry.curve(curve_name)
    auto = evaluate(expression, generators, registry.spec.genus)
    return CyclicWord.of(auto.apply(rec.word))


# -- the key conjugation -----------------------------------------------------

#: phi carries epsilon to zeta; its letters never change with genus.
PHI_EXPRESSION = "a3^-1 a2^-1 b a1^-1 a2^-1 a3^-1"
PHI_INVERSE_EXPRESSION = "a3 a2 a1 b^-1 a2 a3"
ZETA_CERTIFICATE_EXPRESSION = (
    f"{PHI_EXPRESSION} e^-1 {PHI_INVERSE_EXPRESSION}"
)


@dataclass(frozen=True)
class KeyConjugationReport:
    curve_clause_ok: bool
    twist_clause_ok: bool
    diagnostics: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.curve_clause_ok and self.twist_clause_ok


def verify_key_conjugation(
    registry: Registry, generators: Mapping[str, TwistGenerator]
) -> KeyConjugationReport:
    """Check both halves of the relation pinning f to the other twists.

    Clause one is about curves: phi maps epsilon to zeta up to isotopy
    and orientation, so the image class must equal zeta's class up to
    inversion.  Clause two is about maps: the twist along zeta equals
    the phi-conjugate of the inverse twist along epsilon, exactly.
    """
    genus = registry.spec.genus
    diagnostics: list[str] = []
    image = apply_to_curve(registry, generators, PHI_EXPRESSION, "epsilon").unoriented()
    target = registry.curve("zeta").unoriented_class()
    curve_ok = image == target
    if not curve_ok:
        diagnostics.append(
            f"phi sends epsilon to '{image}' but zeta's class is '{target}'"
        )
    lhs = generators["f"].auto
    rhs = evaluate(ZETA_CERTIFICATE_EXPRESSION, generators, genus)
    twist_ok = equal(lhs, rhs)
    if not twist_ok:
        diff = first_difference(lhs, rhs)
        diagnostics.append(
            f"twist along zeta differs from the conjugated epsilon twist "
            f"(first difference at {diff})"
        )
    return KeyConjugationReport(curve_ok, twist_ok, tuple(diagnostics))


def calibrate_key_conjugation(
    registry: Registry, generators: Mapping[str, TwistGenerator]
) -> tuple[dict[str, TwistGenerator], bool]:
    """Fix up loaded tables written under the opposite arrow for f.

    If the tables satisfy the variant with ``e`` in place of ``e^-1``,
    the f block was generated with the opposite twist direction; the
    repair is to swap f's image and inverse-image tables and re-verify.
    Returns (generators, flipped).
    """
    gens = dict(generators)
    needed = {"a1", "a2", "a3", "b", "e", "f"}
    if not needed.issubset(gens):
        return gens, False
    genus = registry.spec.genus
    direct = evaluate(ZETA_CERTIFICATE_EXPRESSION, gens, genus)
    if equal(gens["f"].auto, direct):
        return gens, False
    variant = evaluate(
        f"{PHI_EXPRESSION} e {PHI_INVERSE_EXPRESSION}", gens, genus
    )
    if equal(gens["f"].auto, variant):
        f = gens["f"]
        gens["f"] = TwistGenerator(f.name, f.curve, f.auto.inverse())
        return gens, True
    return gens, False


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """A claim that a target twist is a word in an allowed generator set."""

    target: str
    allowed: tuple[str, ...]
    expression: str


@dataclass(frozen=True)
class CertificateReport:
    target: str
    ok: bool
    diagnostic: str = ""


def check_certificate(
    certificate: Certificate,
    generators: Mapping[str, TwistGenerator],
    genus: int,
) -> CertificateReport:
    """Evaluate a certificate's expression and compare with its target.

    Expressions touching any generator outside the allowed set are
    rejected by raising :class:`CertificateError` before anything is
    evaluated; a well-formed certificate that simply fails yields a
    report with ``ok=False`` and a named first difference.
    """
    if certificate.target not in generators:
        raise CertificateError(
            f"certificate target {certificate.target!r} is not a known generator"
        )
    try:
        factors = parse_expression(certificate.expression, generators.keys())
    except ExpressionError as exc:
        raise CertificateError(
            f"certificate for {certificate.target!r}: {exc}"
        ) from None
    used = {name for name, _ in factors}
    outside = used - set(certificate.allowed)
    if outside:
        raise CertificateError(
            f"certificate for {certificate.target!r} uses generators outside "
            f"its allowed set: {', '.join(sorted(outside))}"
        )
    expected = generators[certificate.target].auto
    actual = evaluate(factors, generators, genus)
    if equal(expected, actual):
        return CertificateReport(certificate.target, True)
    diff = first_difference(expected, actual)
    return CertificateReport(
        certificate.target,
        False,
        f"expression disagrees with {certificate.target} (first difference at {diff})",
    )


def standard_certificates(genus: int) -> dict[str, Certificate]:
    """The shipped certificates: f as a product over the chain, b and e."""
    if genus < 4:
        raise ValueError(f"certificates need genus >= 4, got {genus}")
    allowed = tuple(f"a{i}" for i in range(1, genus)) + ("b", "e")
    return {
        "f": Certificate("f", allowed, ZETA_CERTIFICATE_EXPRESSION),
    }


def certificates_text(certificates: Mapping[str, Certificate]) -> str:
    lines = ["# certificates: target | allowed generators | expression"]
    for cert in certificates.values():
        lines.append(
            f"{cert.target} | {','.join(cert.allowed)} | {cert.expression}"
        )
    return "\n".join(lines) + "\n"


def parse_certificates(text: str) -> dict[str, Certificate]:
    certs: dict[str, Certificate] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise CertificateError(
                f"line {line_no}: expected 'target | allowed | expression'"
            )
        target, allowed_text, expression = parts
        if target in certs:
            raise CertificateError(f"line {line_no}: duplicate certificate for {target}")
        allowed = tuple(
            name.strip() for name in allowed_text.split(",") if name.strip()
        )
        if not allowed:
            raise CertificateError(f"line {line_no}: empty allowed set")
        certs[target] = Certificate(target, allowed, expression)
    return certs


def load_certificates(path: str | Path) -> dict[str, Certificate]:
    return parse_certificates(Path(path).read_text(encoding="utf-8"))


def write_certificates(
    certificates: Mapping[str, Certificate], path: str | Path
) -> None:
    Path(path).write_text(certificates_text(certificates), encoding="utf-8")


# -- twist-table files -------------------------------------------------------

_TABLE_LINE_RE = re.compile(r"x(\d+)\s*(->|<-)\s*(.+)$")


def tables_text(generators: Mapping[str, TwistGenerator], genus: int) -> str:
    """Serialise generator tables: per block, g '->' lines then g '<-' lines."""
    lines = [f"# twist tables, genus {genus}"]
    for name, gen in generators.items():
        lines.append(f"[{name}]")
        for i, w in enumerate(gen.auto.images, start=1):
            lines.append(f"x{i} -> {w}")
        for i, w in enumerate(gen.auto.inverse_images, start=1):
            lines.append(f"x{i} <- {w}")
    return "\n".join(lines) + "\n"


def parse_twist_tables(
    text: str, genus: int
) -> dict[str, tuple[tuple[Word, ...], tuple[Word, ...]]]:
    """Parse raw table blocks; soundness is checked when attaching to a registry."""
    blocks: dict[str, dict[tuple[str, int], Word]] = {}
    current: str | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise TwistTableError(f"line {line_no}: unterminated block header")
            name = line[1:-1].strip()
            if not name:
                raise TwistTableError(f"line {line_no}: empty block header")
            if name in blocks:
                raise TwistTableError(f"line {line_no}: duplicate block [{name}]")
            blocks[name] = {}
            current = name
            continue
        if current is None:
            raise TwistTableError(
                f"line {line_no}: image line before any [generator] header"
            )
        m = _TABLE_LINE_RE.match(line)
        if m is None:
            raise TwistTableError(
                f"line {line_no}: expected 'x<i> -> <word>' or 'x<i> <- <word>'"
            )
        i = int(m.group(1))
        if not (1 <= i <= genus):
            raise TwistTableError(
                f"line {line_no}: generator x{i} out of range for genus {genus}"
            )
        try:
            word = Word.parse(m.group(3), genus)
        except ValueError as exc:
            raise TwistTableError(f"line {line_no}: {exc}") from None
        key = (m.group(2), i)
        if key in blocks[current]:
            raise TwistTableError(
                f"line {line_no}: duplicate {m.group(2)} line for x{i} in [{current}]"
            )
        blocks[current][key] = word
    tables: dict[str, tuple[tuple[Word, ...], tuple[Word, ...]]] = {}
    for name, entries in blocks.items():
        for i in range(1, genus + 1):
            for direction in ("->", "<-"):
                if (direction, i) not in entries:
                    raise TwistTableError(
                        f"block [{name}] is missing the '{direction}' line for x{i}"
                    )
        images = tuple(entries[("->", i)] for i in range(1, genus + 1))
        inverses = tuple(entries[("<-", i)] for i in range(1, genus + 1))
        tables[name] = (images, inverses)
    return tables


def attach_tables(
    registry: Registry,
    tables: Mapping[str, tuple[tuple[Word, ...], tuple[Word, ...]]],
) -> dict[str, TwistGenerator]:
    """Bind parsed tables to registered curves, verifying invertibility."""
    gens: dict[str, TwistGenerator] = {}
    for name, (images, inverses) in tables.items():
        curve_name = curve_for_generator(name)
        if curve_name is None:
            raise TwistTableError(f"[{name}] is not a recognised generator name")
        try:
            rec = registry.curve(curve_name)
        except UnknownCurveError as exc:
            raise TwistTableError(f"[{name}]: {exc}") from None
        try:
            auto = Automorphism(registry.spec.genus, images, inverses)
        except AutomorphismError as exc:
            raise TwistTableError(f"twist table [{name}] is unsound: {exc}") from None
        gens[name] = TwistGenerator(name, rec, auto)
    return gens


def load_twist_tables(
    registry: Registry, path: str | Path
) -> dict[str, TwistGenerator]:
    text = Path(path).read_text(encoding="utf-8")
    return attach_tables(registry, parse_twist_tables(text, registry.spec.genus))


def write_twist_tables(
    generators: Mapping[str, TwistGenerator], genus: int, path: str | Path
) -> None:
    Path(path).write_text(tables_text(generators, genus), encoding="utf-8")


# -- invariant suites --------------------------------------------------------


def audit_tables(
    registry: Registry, generators: Mapping[str, TwistGenerator]
) -> list[CheckResult]:
    """Compare loaded tables against twists derived from the layouts.

    This is the tripwire for tables regenerated with a flipped arrow tag
    (or otherwise edited): the derivation is the ground truth.
    """
    results: list[CheckResult] = []
    for name, gen in generators.items():
        derived = derive_generator(registry, gen.curve.name)
        if equal(gen.auto, derived.auto):
            results.append(
                CheckResult("table-audit", name, True, "matches derived twist")
            )
        else:
            diff = first_difference(gen.auto, derived.auto)
            results.append(
                CheckResult(
                    "table-audit",
                    name,
                    False,
                    f"table disagrees with the twist derived from "
                    f"{gen.curve.name}'s layout (first difference at {diff}); "
                    f"was an arrow flipped without regenerating?",
                )
            )
    return results


def _braid_holds(p: Automorphism, q: Automorphism) -> bool:
    return equal(p.after(q).after(p), q.after(p).after(q))


def _commute_holds(p: Automorphism, q: Automorphism) -> bool:
    return equal(p.after(q), q.after(p))


def relation_suite(
    registry: Registry, generators: Mapping[str, TwistGenerator]
) -> list[CheckResult]:
    """Braid relations along the chain (and with b), commutations elsewhere.

    Which pairs commute is decided by measuring crossing numbers of the
    registered layouts, not by a hard-coded list: disjoint twists must
    commute, crossing-once neighbours must braid.
    """
    results: list[CheckResult] = []
    g = registry.spec.genus
    for i in range(1, g - 1):
        p, q = generators.get(f"a{i}"), generators.get(f"a{i + 1}")
        if p is None or q is None:
            continue
        results.append(
            CheckResult(
                "braid",
                f"a{i}~a{i + 1}",
                _braid_holds(p.auto, q.auto),
                "t p t = p t p on neighbouring chain curves",
            )
        )
    if "a4" in generators and "b" in generators:
        results.append(
            CheckResult(
                "braid",
                "a4~b",
                _braid_holds(generators["a4"].auto, generators["b"].auto),
                "t p t = p t p across the crossing pair",
            )
        )
    by_curve = {gen.curve.name: gen for gen in generators.values()}
    names = [n for n in registry.names() if n in by_curve]
    for idx, a in enumerate(names):
        for b in names[idx + 1 :]:
            try:
                crossings = crossing_count(registry.geometry(a), registry.geometry(b))
            except DegeneratePositionError as exc:
                results.append(
                    CheckResult("commute", f"{a}~{b}", False, f"degenerate: {exc}")
                )
                continue
            if crossings != 0:
                continue
            results.append(
                CheckResult(
                    "commute",
                    f"{generator_for_curve(a)}~{generator_for_curve(b)}",
                    _commute_holds(by_curve[a].auto, by_curve[b].auto),
                    "disjoint curves, twists must commute",
                )
            )
    return results


def fixing_suite(
    registry: Registry, generators: Mapping[str, TwistGenerator]
) -> list[CheckResult]:
    """Every generator must fix the boundary word and its own curve's class."""
    results: list[CheckResult] = []
    for name, gen in generators.items():
        results.append(
            CheckResult(
                "fixes-boundary",
                name,
                gen.auto.fixes_boundary(),
                "image of x1^2..xg^2 must be itself, on the nose",
            )
        )
        own = CyclicWord.of(gen.auto.apply(gen.curve.word)).unoriented()
        results.append(
            CheckResult(
                "fixes-own-curve",
                name,
                own == gen.curve.unoriented_class(),
                "a twist preserves its own core curve",
            )
        )
    return results
