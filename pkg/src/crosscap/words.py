"""Free-group words over the crosscap generators ``x1 .. xg``.

The fundamental group of a genus-``g`` non-orientable surface with one
boundary circle is free on ``g`` generators, one for each crosscap.  A
letter is stored as a nonzero integer: ``+i`` means ``x_i`` and ``-i``
means ``x_i``-inverse.  :class:`Word` keeps its letters freely reduced,
so equal group elements always compare equal; :class:`CyclicWord` goes
one step further and canonicalises up to conjugation, which is what a
free homotopy class of loops needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

_TOKEN_RE = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for s in letters:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def _letter_key(s: int) -> tuple[int, int]:
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return (abs(s), 0 if s > 0 else 1)


def letter_str(s: int) -> str:
    """Render one signed letter, e.g. ``3 -> 'x3'`` and ``-3 -> 'x3^-1'``."""
    return f"x{s}" if s > 0 else f"x{-s}^-1"


@dataclass(frozen=True)
class Word:
    """A freely reduced word in the free group on ``x1 .. x<genus>``.

    Instances are immutable and hashable.  Multiplication concatenates
    and reduces; ``word ** -1`` inverts.  The empty word is the group
    identity and prints as ``"1"``.
    """

    genus: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise ValueError(f"genus must be a positive integer, got {self.genus}")
        letters = tuple(self.letters)
        for s in letters:
            if not isinstance(s, int) or s == 0 or abs(s) > self.genus:
                raise ValueError(
                    f"letter {s!r} is not valid for genus {self.genus} "
                    f"(expected nonzero integers with |letter| <= {self.genus})"
                )
        object.__setattr__(self, "letters", _reduce(letters))

    # -- basic protocol ------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(letter_str(s) for s in self.letters)

    def __repr__(self) -> str:
        return f"Word(genus={self.genus}, {str(self)!r})"

    # -- group operations ----------------------------------------------

    def _check_compatible(self, other: "Word") -> None:
        if not isinstance(other, Word):
            raise TypeError(f"expected a Word, got {type(other).__name__}")
        if other.genus != self.genus:
            raise ValueError(
                f"cannot combine words of genus {self.genus} and {other.genus}"
            )

    def __mul__(self, other: "Word") -> "Word":
        self._check_compatible(other)
        return Word(self.genus, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.genus, tuple(-s for s in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if not isinstance(n, int):
            raise TypeError("words can only be raised to integer powers")
        base = self if n >= 0 else self.inverse()
        out = Word(self.genus)
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate_by(self, w: "Word") -> "Word":
        """Return ``w * self * w^-1``."""
        self._check_compatible(w)
        return w * self * w.inverse()

    # -- invariants ------------------------------------------------------

    def exponent_vector(self) -> tuple[int, ...]:
        """Exponent sum of each generator, i.e. the image in Z^genus."""
        vec = [0] * self.genus
        for s in self.letters:
            vec[abs(s) - 1] += 1 if s > 0 else -1
        return tuple(vec)

    def total_exponent(self) -> int:
        return sum(self.exponent_vector())

    # -- parsing ---------------------------------------------------------

    @classmethod
    def identity(cls, genus: int) -> "Word":
        return cls(genus)

    @classmethod
    def generator(cls, genus: int, i: int) -> "Word":
        return cls(genus, (i,))

    @classmethod
    def parse(cls, text: str, genus: int) -> "Word":
        """Parse a whitespace-separated word such as ``"x1 x2^-1 x1^2"``.

        The token ``1`` denotes the identity and may appear alone or
        mixed into a longer word.  Raises :class:`ValueError` on any
        token that does not match ``x<i>`` or ``x<i>^<k>``.
        """
        letters: list[int] = []
        for tok in text.split():
            if tok == "1":
                continue
            m = _TOKEN_RE.match(tok)
            if m is None:
                raise ValueError(f"cannot parse word token {tok!r}")
            idx = int(m.group(1))
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if idx < 1 or idx > genus:
                raise ValueError(
                    f"generator x{idx} out of range for genus {genus}"
                )
            letters.extend([idx if exp > 0 else -idx] * abs(exp))
        return cls(genus, tuple(letters))


def boundary_word(genus: int) -> Word:
    """The boundary class ``x1^2 x2^2 ... xg^2`` of the one-holed surface.

    Every self-map we build is required to fix this element exactly,
    which pins the maps to the mapping class group of the bounded
    surface rather than its quotient.
    """
    letters: list[int] = []
    for i in range(1, genus + 1):
        letters.extend((i, i))
    return Word(genus, tuple(letters))


def _cyclic_reduce(letters: tuple[int, ...]) -> tuple[int, ...]:
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo] == -letters[hi - 1]:
        lo += 1
        hi -= 1
    return letters[lo:hi]


def _least_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    n = len(letters)
    if n == 0:
        return letters
    keys = [_letter_key(s) for s in letters]
    best = 0
    for cand in range(1, n):
        for t in range(n):
            a = keys[(cand + t) % n]
            b = keys[(best + t) % n]
            if a < b:
                best = cand
                break
            if a > b:
                break
    return letters[best:] + letters[:best]


@dataclass(frozen=True)
class CyclicWord:
    """Canonical form of a conjugacy class in the free group.

    Two words are conjugate iff their cyclic reductions are rotations
    of one another, so the canonical form is the lexicographically
    least rotation of the cyclic reduction.  Construction canonicalises
    whatever letters are passed in.
    """

    genus: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        word = Word(self.genus, tuple(self.letters))  # validates + reduces
        canon = _least_rotation(_cyclic_reduce(word.letters))
        object.__setattr__(self, "letters", canon)

    @classmethod
    def of(cls, word: Word) -> "CyclicWord":
        return cls(word.genus, word.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(letter_str(s) for s in self.letters)

    def __repr__(self) -> str:
        return f"CyclicWord(genus={self.genus}, {str(self)!r})"

    def inverse(self) -> "CyclicWord":
        return CyclicWord(self.genus, tuple(-s for s in reversed(self.letters)))

    def unoriented(self) -> "CyclicWord":
        """Canonical form of the pair {class, inverse class}.

        An unoriented curve does not distinguish a loop from its
        reverse, so comparisons of curve classes go through this.
        """
        inv = self.inverse()
        keys_self = [_letter_key(s) for s in self.letters]
        keys_inv = [_letter_key(s) for s in inv.letters]
        return self if keys_self <= keys_inv else inv

    def exponent_vector(self) -> tuple[int, ...]:
        return Word(self.genus, self.letters).exponent_vector()


def is_conjugate(u: Word, v: Word) -> bool:
    """Decide whether two words are conjugate in the free group."""
    if u.genus != v.genus:
        raise ValueError(
            f"cannot compare words of genus {u.genus} and {v.genus}"
        )
    return CyclicWord.of(u) == CyclicWord.of(v)
