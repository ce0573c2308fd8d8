"""Words in the free group F_N on generators g1..gN."""

import re
from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class WeightVector:
    """A vector in (Z/m)^N."""

    entries: tuple
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(e % self.modulus for e in self.entries))

    def __add__(self, other):
        if self.modulus != other.modulus or len(self.entries) != len(other.entries):
            raise ValueError("weight vectors from different groups")
        return WeightVector(tuple(a + b for a, b in zip(self.entries, other.entries)), self.modulus)

    def __neg__(self):
        return WeightVector(tuple(-a for a in self.entries), self.modulus)

    def is_zero(self):
        return not any(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _reduce(letters):
    stack = []
    for g, e in letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            s = stack[-1][1] + e
            stack.pop()
            if s:
                stack.append((g, s))
        else:
            stack.append((g, e))
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word: a tuple of ``(generator, exponent)`` syllables.

    Adjacent syllables use different generators and exponents are nonzero.
    The empty tuple is the identity. ``n`` is the rank of the free group.
    """

    letters: tuple = ()
    n: int = 2

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        object.__setattr__(self, "letters", letters)
        for k, (g, e) in enumerate(letters):
            if not 1 <= g <= self.n:
                raise ValueError(f"generator g{g} outside F_{self.n}")
            if e == 0:
                raise ValueError("zero exponent")
            if k and letters[k - 1][0] == g:
                raise ValueError("word is not reduced")

    @classmethod
    def from_letters(cls, letters, n=2):
        """Build a word from arbitrary syllables, reducing freely."""
        return cls(_reduce((int(g), int(e)) for g, e in letters), n)

    @classmethod
    def identity(cls, n=2):
        return cls((), n)

    @classmethod
    def generator(cls, i, n=2, power=1):
        return cls(((i, power),) if power else (), n)

    @classmethod
    def from_sequence(cls, seq, n=2):
        """Build from a sequence of signed generator indices, e.g. ``(1, 1, -2)``."""
        return cls.from_letters(((abs(s), 1 if s > 0 else -1) for s in seq), n)

    def sequence(self):
        """The word spelled out as signed generator indices."""
        out = []
        for g, e in self.letters:
            out.extend([g if e > 0 else -g] * abs(e))
        return tuple(out)

    def _same_group(self, other):
        if self.n != other.n:
            raise ValueError(f"words from F_{self.n} and F_{other.n}")

    def __mul__(self, other):
        if not isinstance(other, FreeWord):
            return NotImplemented
        self._same_group(other)
        return FreeWord.from_letters(self.letters + other.letters, self.n)

    def inverse(self):
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)), self.n)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = FreeWord.identity(self.n)
        for _ in range(k):
            result = result * self
        return result

    def is_identity(self):
        return not self.letters

    @property
    def length(self):
        return sum(abs(e) for _, e in self.letters)

    @property
    def inverse_count(self):
        return sum(-e for _, e in self.letters if e < 0)

    def weight_vector(self, m):
        if m < 1:
            raise ValueError("modulus must be positive")
        v = [0] * self.n
        for g, e in self.letters:
            v[g - 1] += e
        return WeightVector(tuple(v), m)

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(f"g{g}" if e == 1 else f"g{g}^{e}" for g, e in self.letters)


_TERM_RE = re.compile(r"\s*g(\d+)(?:\^(-?\d+))?")


def parse_word(text, n=2):
    """Parse ``"g1^2 g2^-1"``-style text into a reduced word of F_n.

    The identity may be written as the empty string or ``e``.
    """
    stripped = text.strip()
    if stripped in ("", "e"):
        return FreeWord.identity(n)
    letters = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM_RE.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError("expected a term like g1 or g2^-3", text, bad)
        g = int(m.group(1))
        if g < 1 or g > n:
            raise ParseError(f"generator g{g} outside F_{n}", text, m.start(1) - 1)
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e == 0:
            raise ParseError("zero exponent", text, m.start(2))
        letters.append((g, e))
        pos = m.end()
    return FreeWord.from_letters(letters, n)


def word_ops(w, u=None, op="concat"):
    if op == "concat":
        return w * u
    if op == "invert":
        return w.inverse()
    raise ValueError(f"unknown word operation {op!r}")


def weight_vector(w, m, n=None):
    if n is not None and n != w.n:
        raise ValueError("rank mismatch")
    return w.weight_vector(m)


def word_stats(w):
    """Return ``(length, inverse_count)``."""
    return w.length, w.inverse_count


def module_generator_words(n, nu):
    """Reduced words of F_n with length at most ``nu - 1`` and at most half
    their letters inverted, sorted by (length, letters).

    ``nu`` bounds the words fed to Q in the module generators over the trace
    algebra; its value comes from outside this package and is a parameter.
    """
    if nu < 1:
        raise ValueError("nu must be positive")
    out = [FreeWord.identity(n)]
    frontier = [()]
    letters = [(g, s) for g in range(1, n + 1) for s in (1, -1)]
    for _ in range(nu - 1):
        nxt = []
        for seq in frontier:
            for g, s in letters:
                if seq and seq[-1] == (g, -s):
                    continue
                nxt.append(seq + ((g, s),))
        frontier = nxt
        for seq in frontier:
            w = FreeWord.from_letters(seq, n)
            if 2 * w.inverse_count <= w.length:
                out.append(w)
    out = list(dict.fromkeys(out))
    out.sort(key=lambda w: (w.length, w.letters))
    return out
