"""Reduced words in a free product of cyclic groups.

The group has ``s`` generators of order two and ``t`` generators of
infinite order, subject to no other relations.  Every element has a
unique reduced spelling (no letter adjacent to its inverse), and the
Cayley graph with respect to these generators is the homogeneous tree
in which every vertex has ``s + 2t`` neighbours.

Letters are stored as small integer codes in the fixed order
``a1 < ... < as < b1 < b1' < ... < bt < bt'`` where a prime marks an
inverse.  Enumeration and serialization follow this order throughout,
so all output is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_CELL_LIMIT = 10**7


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured cell budget."""


@dataclass(frozen=True)
class Letter:
    """A generator or its inverse.  ``index`` is 1-based; a generator of
    order two is its own inverse, so such letters always carry exponent +1."""

    index: int
    exponent: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"letter index must be >= 1, got {self.index}")
        if self.exponent not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {self.exponent}")


@dataclass(frozen=True)
class Presentation:
    """Generator counts: ``s`` of order two, ``t`` of infinite order."""

    s: int
    t: int

    def __post_init__(self):
        if self.s < 0 or self.t < 0:
            raise ValueError("generator counts must be nonnegative")
        if self.s + 2 * self.t < 3:
            raise ValueError("need s + 2t >= 3 so the tree branches")

    @property
    def degree(self) -> int:
        """Valence of every vertex of the Cayley tree: s + 2t."""
        return self.s + 2 * self.t

    @property
    def branching(self) -> int:
        """Continuations of a nonempty reduced word: degree - 1."""
        return self.degree - 1

    # -- letter codes ------------------------------------------------------
    #
    # Codes 0..s-1 are the order-two generators a1..as.  Codes s..s+2t-1
    # alternate b_j, b_j' so that flipping the low bit inverts a letter.

    def inverse_code(self, code: int) -> int:
        if code < self.s:
            return code
        return self.s + ((code - self.s) ^ 1)

    def code_of(self, letter: Letter) -> int:
        if letter.index <= self.s:
            # order-two generator: either exponent names the same letter
            return letter.index - 1
        if letter.index > self.s + self.t:
            raise ValueError(f"letter index {letter.index} out of range for {self}")
        base = self.s + 2 * (letter.index - self.s - 1)
        return base if letter.exponent == 1 else base + 1

    def letter_of(self, code: int) -> Letter:
        if not 0 <= code < self.degree:
            raise ValueError(f"letter code {code} out of range for {self}")
        if code < self.s:
            return Letter(code + 1)
        offset = code - self.s
        return Letter(self.s + offset // 2 + 1, -1 if offset % 2 else 1)

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(self.letter_of(c) for c in range(self.degree))

    def token_of(self, code: int) -> str:
        if not 0 <= code < self.degree:
            raise ValueError(f"letter code {code} out of range for {self}")
        if code < self.s:
            return f"a{code + 1}"
        offset = code - self.s
        return f"b{offset // 2 + 1}" + ("'" if offset % 2 else "")

    def code_of_token(self, token: str) -> int:
        kind, rest = token[:1], token[1:]
        inverse = rest.endswith("'")
        if inverse:
            rest = rest[:-1]
        if kind not in ("a", "b") or not rest.isdigit():
            raise ValueError(f"bad letter token {token!r}")
        i = int(rest)
        if kind == "a":
            if inverse or not 1 <= i <= self.s:
                raise ValueError(f"bad letter token {token!r} for {self}")
            return i - 1
        if not 1 <= i <= self.t:
            raise ValueError(f"bad letter token {token!r} for {self}")
        return self.s + 2 * (i - 1) + (1 if inverse else 0)

    def identity(self) -> "Word":
        return Word(self, ())

    def generator(self, code: int) -> "Word":
        if not 0 <= code < self.degree:
            raise ValueError(f"letter code {code} out of range for {self}")
        return Word(self, (code,))


def _reduce_codes(codes: Iterable[int], p: Presentation) -> tuple[int, ...]:
    stack: list[int] = []
    for c in codes:
        if stack and stack[-1] == p.inverse_code(c):
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A reduced word; the empty word is the identity.

    Words are immutable values with structural equality, so they can key
    dictionaries and sets.  ``*`` multiplies (with reduction), ``~`` inverts,
    ``**`` raises to integer powers.
    """

    presentation: Presentation
    codes: tuple[int, ...]

    def __post_init__(self):
        p = self.presentation
        prev = None
        for c in self.codes:
            if not 0 <= c < p.degree:
                raise ValueError(f"letter code {c} out of range for {p}")
            if prev is not None and c == p.inverse_code(prev):
                raise ValueError("word is not reduced")
            prev = c

    def __len__(self) -> int:
        return len(self.codes)

    def __bool__(self) -> bool:
        return bool(self.codes)

    def __mul__(self, other: "Word") -> "Word":
        if self.presentation != other.presentation:
            raise ValueError("words from different presentations")
        return Word(self.presentation, _reduce_codes(self.codes + other.codes, self.presentation))

    def __invert__(self) -> "Word":
        p = self.presentation
        return Word(p, tuple(p.inverse_code(c) for c in reversed(self.codes)))

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return (~self) ** (-k)
        out = self.presentation.identity()
        for _ in range(k):
            out = out * self
        return out

    def letters(self) -> tuple[Letter, ...]:
        return tuple(self.presentation.letter_of(c) for c in self.codes)

    def startswith(self, other: "Word") -> bool:
        return self.presentation == other.presentation and self.codes[: len(other.codes)] == other.codes

    @property
    def last_code(self) -> int:
        if not self.codes:
            raise ValueError("empty word has no last letter")
        return self.codes[-1]

    def prefix(self, m: int) -> "Word":
        return Word(self.presentation, self.codes[:m])

    def append_code(self, code: int) -> "Word":
        return Word(self.presentation, self.codes + (code,))

    def __str__(self) -> str:
        if not self.codes:
            return "e"
        return " ".join(self.presentation.token_of(c) for c in self.codes)

    def __repr__(self) -> str:
        return f"Word({self})"

    @classmethod
    def parse(cls, text: str, p: Presentation) -> "Word":
        text = text.strip()
        if text in ("", "e"):
            return p.identity()
        codes = [p.code_of_token(tok) for tok in text.split()]
        return cls(p, _reduce_codes(codes, p))


def reduce_letters(letters: Sequence[Letter], p: Presentation) -> Word:
    """Reduce an arbitrary letter sequence to its unique normal form."""
    return Word(p, _reduce_codes((p.code_of(l) for l in letters), p))


def sphere_size(p: Presentation, m: int) -> int:
    """Number of reduced words of length exactly ``m``."""
    if m < 0:
        raise ValueError("length must be nonnegative")
    if m == 0:
        return 1
    return p.degree * p.branching ** (m - 1)


def sphere(p: Presentation, m: int, limit: int | None = DEFAULT_CELL_LIMIT) -> list[Word]:
    """All reduced words of length ``m``, in lexicographic letter order."""
    size = sphere_size(p, m)
    if limit is not None and size > limit:
        raise ResourceLimitError(f"sphere of size {size} exceeds the bound {limit}")
    level: list[tuple[int, ...]] = [()]
    for _ in range(m):
        nxt = []
        for codes in level:
            forbidden = p.inverse_code(codes[-1]) if codes else -1
            for z in range(p.degree):
                if z != forbidden:
                    nxt.append(codes + (z,))
        level = nxt
    return [Word(p, codes) for codes in level]


def cuntz_krieger_matrix(p: Presentation) -> list[list[int]]:
    """Allowed-successor matrix of the reduced-word shift.

    Rows and columns are indexed by the letters in canonical order and
    entry (u, v) is 1 exactly when v may follow u in a reduced word,
    i.e. v is not the inverse of u.  Every row sums to degree - 1.
    """
    d = p.degree
    return [[0 if v == p.inverse_code(u) else 1 for v in range(d)] for u in range(d)]
