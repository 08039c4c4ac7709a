"""First-homology actions of mapping classes, over Z and over Z/2.

Abelianising a free-group automorphism gives an integer matrix whose
column ``i`` is the exponent vector of the image of ``x_i``; composition
of maps becomes matrix multiplication on the nose.  Over Z/2 the
intersection form in the crosscap basis is the identity, so the twist
along a two-sided curve with class ``c`` acts as the transvection
``z -> z + <z, c> c``, i.e. the matrix ``I + c c^T``.  Both facts are
used as cheap independent cross-checks on the exact word-level engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from crosscap.twists import Automorphism
from crosscap.words import Word


def _check_square(genus: int, rows: tuple[tuple[int, ...], ...]) -> None:
    if len(rows) != genus or any(len(r) != genus for r in rows):
        raise ValueError(f"expected a {genus}x{genus} matrix")


@dataclass(frozen=True)
class HomologyMatrix:
    """Integer matrix of a map on H1(N; Z), columns indexed by x1..xg."""

    genus: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(e) for e in r) for r in self.rows)
        _check_square(self.genus, rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, genus: int) -> "HomologyMatrix":
        return cls(
            genus,
            tuple(
                tuple(1 if i == j else 0 for j in range(genus))
                for i in range(genus)
            ),
        )

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.rows[i][j] for i in range(self.genus))

    def __mul__(self, other: "HomologyMatrix") -> "HomologyMatrix":
        if not isinstance(other, HomologyMatrix):
            return NotImplemented
        if other.genus != self.genus:
            raise ValueError("matrix sizes differ")
        g = self.genus
        rows = tuple(
            tuple(
                sum(self.rows[i][k] * other.rows[k][j] for k in range(g))
                for j in range(g)
            )
            for i in range(g)
        )
        return HomologyMatrix(g, rows)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.genus:
            raise ValueError("vector length differs from matrix size")
        return tuple(
            sum(self.rows[i][k] * vector[k] for k in range(self.genus))
            for i in range(self.genus)
        )

    def det(self) -> int:
        """Exact integer determinant (fraction-free elimination)."""
        n = self.genus
        m = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][k] != 0:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def mod2(self) -> "Mod2Matrix":
        return Mod2Matrix(
            self.genus, tuple(tuple(e % 2 for e in r) for r in self.rows)
        )

    def structured(self) -> str:
        body = ";".join(",".join(str(e) for e in row) for row in self.rows)
        return f"{self.genus};{body}"

    def format_text(self) -> str:
        width = max(len(str(e)) for row in self.rows for e in row)
        return "\n".join(
            " ".join(f"{e:>{width}}" for e in row) for row in self.rows
        )


@dataclass(frozen=True)
class Mod2Matrix:
    """Matrix of a map on H1(N; Z/2) in the crosscap basis."""

    genus: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(e) % 2 for e in r) for r in self.rows)
        _check_square(self.genus, rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, genus: int) -> "Mod2Matrix":
        return HomologyMatrix.identity(genus).mod2()

    @classmethod
    def transvection(cls, genus: int, cls_vector: Sequence[int]) -> "Mod2Matrix":
        """The twist action z -> z + <z, c> c for a two-sided class c."""
        c = [int(v) % 2 for v in cls_vector]
        if len(c) != genus:
            raise ValueError("class vector length differs from genus")
        if sum(c) % 2 != 0:
            raise ValueError("a two-sided curve has even mod-2 class weight")
        rows = tuple(
            tuple((1 if i == j else 0) ^ (c[i] & c[j]) for j in range(genus))
            for i in range(genus)
        )
        return cls(genus, rows)

    def is_identity(self) -> bool:
        return self == Mod2Matrix.identity(self.genus)

    def __mul__(self, other: "Mod2Matrix") -> "Mod2Matrix":
        if not isinstance(other, Mod2Matrix):
            return NotImplemented
        if other.genus != self.genus:
            raise ValueError("matrix sizes differ")
        g = self.genus
        rows = tuple(
            tuple(
                sum(self.rows[i][k] * other.rows[k][j] for k in range(g)) % 2
                for j in range(g)
            )
            for i in range(g)
        )
        return Mod2Matrix(g, rows)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.genus:
            raise ValueError("vector length differs from matrix size")
        return tuple(
            sum(self.rows[i][k] * vector[k] for k in range(self.genus)) % 2
            for i in range(self.genus)
        )


def abelianize(auto: Automorphism) -> HomologyMatrix:
    """Integer homology matrix of an automorphism (columns = images)."""
    g = auto.genus
    cols = [auto.images[j].exponent_vector() for j in range(g)]
    rows = tuple(tuple(cols[j][i] for j in range(g)) for i in range(g))
    return HomologyMatrix(g, rows)


def mod2_class(word: Word) -> tuple[int, ...]:
    return tuple(e % 2 for e in word.exponent_vector())
