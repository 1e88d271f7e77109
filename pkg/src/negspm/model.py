"""Domain types and the pattern algebra.

Items are small integer ids into an :class:`Alphabet`.  A :class:`Pattern`
holds ``m`` positive items and ``m - 1`` optional negative items, one per
gap.  All gaps in a mining run share a single :class:`GapConstraint`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Optional, Sequence as Seq

__all__ = [
    "PatternError", "PatternParseError", "WideOverflowError",
    "Alphabet", "GapConstraint", "Pattern", "Sequence", "SequenceDatabase",
    "Threshold", "SupportRecord",
    "prefix", "suffix", "join", "positivize", "ofs_total", "is_frequent",
    "parse_pattern", "format_pattern", "pattern_sort_key", "decimal_string",
    "WIDE_LIMIT", "DELIMITERS",
]

# ofs values are held to unsigned 128-bit range.
WIDE_LIMIT = (1 << 128) - 1

# Characters reserved by the pattern grammar; no item token may contain them.
DELIMITERS = frozenset("[],!")


class PatternError(ValueError):
    """Invalid argument to a pattern-algebra operation."""


class PatternParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class WideOverflowError(OverflowError):
    pass


class Alphabet:
    """Ordered, duplicate-free list of surface tokens.

    Ids are assigned in insertion order, so an alphabet grown while reading
    a database follows first-appearance order.
    """

    __slots__ = ("_symbols", "_ids")

    def __init__(self, symbols: Iterable[str] = ()):
        self._symbols: list[str] = []
        self._ids: dict[str, int] = {}
        for s in symbols:
            if s in self._ids:
                raise ValueError(f"duplicate alphabet token {s!r}")
            self.add(s)

    def add(self, token: str) -> int:
        """Return the id of ``token``, registering it if new."""
        if (i := self._ids.get(token)) is not None:
            return i
        if not token:
            raise ValueError("empty token")
        if DELIMITERS.intersection(token) or any(ch.isspace() for ch in token):
            raise ValueError(f"token {token!r} contains a reserved character")
        i = len(self._symbols)
        self._symbols.append(token)
        self._ids[token] = i
        return i

    def id(self, token: str) -> int:
        return self._ids[token]

    def token(self, item: int) -> str:
        return self._symbols[item]

    def __contains__(self, token: object) -> bool:
        return token in self._ids

    def __len__(self) -> int:
        return len(self._symbols)

    def __iter__(self):
        return iter(self._symbols)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self._symbols)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self._symbols == other._symbols

    def __repr__(self) -> str:
        return f"Alphabet({self._symbols!r})"


@dataclass(frozen=True)
class GapConstraint:
    """Bounds on the number of positions strictly between two matches."""

    min_gap: int
    max_gap: int

    def __post_init__(self):
        if not (0 <= self.min_gap <= self.max_gap):
            raise ValueError(f"invalid gap [{self.min_gap},{self.max_gap}]")

    @property
    def width(self) -> int:
        return self.max_gap - self.min_gap + 1

    @classmethod
    def parse(cls, text: str) -> "GapConstraint":
        """Parse ``"M,N"``."""
        m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"gap must look like 'M,N', got {text!r}")
        return cls(int(m[1]), int(m[2]))

    def __str__(self) -> str:
        return f"[{self.min_gap},{self.max_gap}]"


@dataclass(frozen=True)
class Pattern:
    positives: tuple[int, ...]
    negatives: tuple[Optional[int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(self.positives))
        object.__setattr__(self, "negatives", tuple(self.negatives))
        if not self.positives:
            raise PatternError("pattern needs at least one positive item")
        if len(self.negatives) != len(self.positives) - 1:
            raise PatternError(
                f"{len(self.positives)} positives need {len(self.positives) - 1} gap slots, "
                f"got {len(self.negatives)}")

    @classmethod
    def positive(cls, items: Seq[int]) -> "Pattern":
        return cls(tuple(items), (None,) * (len(items) - 1))

    def __len__(self) -> int:
        return len(self.positives)

    @property
    def is_positive(self) -> bool:
        return all(e is None for e in self.negatives)

    @property
    def last_negative(self) -> Optional[int]:
        return self.negatives[-1] if self.negatives else None


def pattern_sort_key(p: Pattern) -> tuple:
    """Canonical order: positives first, then per-gap negatives (absent first)."""
    return len(p), p.positives, tuple(-1 if e is None else e for e in p.negatives)


def prefix(p: Pattern) -> Pattern:
    if len(p) < 2:
        raise PatternError("prefix needs a pattern of length >= 2")
    return Pattern(p.positives[:-1], p.negatives[:-1])


def suffix(p: Pattern) -> Pattern:
    if len(p) < 2:
        raise PatternError("suffix needs a pattern of length >= 2")
    return Pattern(p.positives[1:], p.negatives[1:])


def join(p: Pattern, q: Pattern) -> Optional[Pattern]:
    """Combine two equal-length patterns whose suffix/prefix coincide.

    Returns ``None`` when ``suffix(p) != prefix(q)``.  Length-1 inputs are
    rejected; length-2 candidates come from enumeration instead.
    """
    if len(p) != len(q):
        raise PatternError(f"join needs equal lengths, got {len(p)} and {len(q)}")
    if len(p) < 2:
        raise PatternError("join is defined for patterns of length >= 2")
    if p.positives[1:] != q.positives[:-1] or p.negatives[1:] != q.negatives[:-1]:
        return None
    return Pattern(p.positives + q.positives[-1:], p.negatives + q.negatives[-1:])


def positivize(p: Pattern) -> Pattern:
    """Drop every negative annotation."""
    return Pattern.positive(p.positives)


def ofs_total(total_length: int, width: int, m: int) -> int:
    """Number of offset sequences of a length-``m`` pattern: ``L * W**(m-1)``."""
    if total_length < 0 or width < 1 or m < 1:
        raise ValueError(f"bad ofs arguments L={total_length} W={width} m={m}")
    value = total_length * width ** (m - 1)
    if value > WIDE_LIMIT:
        raise WideOverflowError(
            f"offset count L*W^(m-1) for m={m} exceeds 128 bits; set a smaller max length")
    return value


_DECIMAL_RE = re.compile(r"(\d*)(?:\.(\d*))?")


@dataclass(frozen=True)
class Threshold:
    """A frequency threshold kept as the exact fraction ``numerator / 10**digits``."""

    numerator: int
    digits: int
    text: str = field(default="", compare=False)

    def __post_init__(self):
        if self.numerator <= 0 or self.numerator > 10 ** self.digits:
            raise ValueError(f"threshold must satisfy 0 < rho <= 1, got {self.text or self.value}")

    @classmethod
    def parse(cls, text: str) -> "Threshold":
        s = text.strip()
        m = _DECIMAL_RE.fullmatch(s)
        if not m or not (m[1] or m[2]):
            raise ValueError(f"threshold must be a plain decimal such as 0.13, got {text!r}")
        frac = m[2] or ""
        return cls(int((m[1] or "0") + frac), len(frac), s)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 10 ** self.digits)

    def __str__(self) -> str:
        return self.text or decimal_string(self.value)


def is_frequent(sup: int, ofs: int, rho: Threshold) -> bool:
    """Exact test of ``sup / ofs >= rho``."""
    if ofs < 1:
        raise ValueError("ofs must be positive")
    return sup * 10 ** rho.digits >= rho.numerator * ofs


def decimal_string(x: Fraction, significant: int = 12) -> str:
    """Render a non-negative rational as a plain decimal string.

    Exact when the expansion terminates within ``significant`` digits,
    otherwise rounded half-even to that many significant digits.
    """
    with localcontext() as ctx:
        ctx.prec = significant
        d = Decimal(x.numerator) / Decimal(x.denominator)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s


@dataclass(frozen=True)
class Sequence:
    seq_id: int
    items: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class SequenceDatabase:
    alphabet: Alphabet
    sequences: tuple[Sequence, ...]
    digest: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sequences", tuple(self.sequences))
        n = len(self.alphabet)
        for s in self.sequences:
            if any(not 0 <= i < n for i in s.items):
                raise ValueError(f"sequence {s.seq_id} holds an item outside the alphabet")

    @classmethod
    def from_strings(cls, rows: Iterable[Iterable[str]], alphabet: Alphabet | None = None) -> "SequenceDatabase":
        """Build a database from token iterables (a plain string is a row of characters)."""
        alphabet = Alphabet() if alphabet is None else alphabet
        seqs = []
        for k, row in enumerate(rows):
            seqs.append(Sequence(k, tuple(alphabet.add(tok) for tok in row)))
        return cls(alphabet, tuple(seqs))

    @property
    def total_length(self) -> int:
        return sum(len(s) for s in self.sequences)

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)


@dataclass(frozen=True)
class SupportRecord:
    pattern: Pattern
    per_sequence_sup: tuple[int, ...]
    ofs: int

    @property
    def total_sup(self) -> int:
        return sum(self.per_sequence_sup)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.total_sup, self.ofs)


# --- text grammar -----------------------------------------------------------

_GAP_RE = re.compile(r"\[(\d+),(\d+)(?:,!([^\[\],!]+))?\]")


def parse_pattern(text: str, alphabet: Alphabet, gap: GapConstraint, *,
                  tokenizer: str = "char") -> Pattern:
    """Read ``a[0,1]a[0,1,!b]c`` style text.

    With the ``char`` tokenizer every item is a single character; with
    ``token`` an item is a maximal run of non-delimiter characters.
    """
    if tokenizer not in ("char", "token"):
        raise ValueError(f"unknown tokenizer {tokenizer!r}")
    pos = 0
    n = len(text)
    positives: list[int] = []
    negatives: list[Optional[int]] = []

    def read_item(at: int, stop: str) -> tuple[int, int]:
        if at >= n or text[at] in DELIMITERS:
            raise PatternParseError("expected item", text, at)
        end = at + 1
        if tokenizer == "token":
            while end < n and text[end] not in stop:
                end += 1
        tok = text[at:end]
        if tok not in alphabet:
            raise PatternParseError(f"unknown item {tok!r}", text, at)
        return alphabet.id(tok), end

    item, pos = read_item(pos, "[")
    positives.append(item)
    while pos < n:
        m = _GAP_RE.match(text, pos)
        if not m:
            raise PatternParseError("malformed gap", text, pos)
        if (int(m[1]), int(m[2])) != (gap.min_gap, gap.max_gap):
            raise PatternParseError(f"gap [{m[1]},{m[2]}] does not match run gap {gap}", text, pos)
        neg = None
        if m[3] is not None:
            if tokenizer == "char" and len(m[3]) != 1:
                raise PatternParseError("negative item must be one character", text, m.start(3))
            if m[3] not in alphabet:
                raise PatternParseError(f"unknown item {m[3]!r}", text, m.start(3))
            neg = alphabet.id(m[3])
        negatives.append(neg)
        item, pos = read_item(m.end(), "[")
        positives.append(item)
    return Pattern(tuple(positives), tuple(negatives))


def format_pattern(p: Pattern, alphabet: Alphabet, gap: GapConstraint) -> str:
    out = [alphabet.token(p.positives[0])]
    for e, item in zip(p.negatives, p.positives[1:]):
        if e is None:
            out.append(f"[{gap.min_gap},{gap.max_gap}]")
        else:
            out.append(f"[{gap.min_gap},{gap.max_gap},!{alphabet.token(e)}]")
        out.append(alphabet.token(item))
    return "".join(out)
