"""Subsets of {1,...,n} as bitmasks, families in canonical order, and the
FAMILY v1 interchange format.

Element i of the ground set lives at bit i-1 of a mask, so the paper-style
1-based element names never drift against bit positions.  Everything here is
immutable and safe to share across threads.
"""

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

MAX_GROUND_SET = 1024

_HEADER = "FAMILY v1"
_N_LINE = re.compile(r"^n=(0|[1-9][0-9]*)$")
_ELEMENT = re.compile(r"^(0|[1-9][0-9]*)$")


class FamilyFormatError(ValueError):
    """Malformed FAMILY v1 text; `line` is the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class SubsetWord:
    """A subset of {1,...,n} stored as a bitmask (element i at bit i-1)."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND_SET:
            raise ValueError(
                f"ground-set size must be in 1..{MAX_GROUND_SET}, got {self.n}"
            )
        if self.bits < 0 or self.bits >> self.n != 0:
            raise ValueError("set has elements outside the ground set")

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> "SubsetWord":
        bits = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside 1..{n}")
            bits |= 1 << (e - 1)
        return cls(n, bits)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> tuple[int, ...]:
        """Elements in increasing order (1-based)."""
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length())
            b ^= low
        return tuple(out)

    def key(self) -> tuple[int, int]:
        """Canonical sort key: size first, then numeric mask value."""
        return (self.bits.bit_count(), self.bits)

    def contains(self, element: int) -> bool:
        return 1 <= element <= self.n and (self.bits >> (element - 1)) & 1 == 1

    def isdisjoint(self, other: "SubsetWord") -> bool:
        return self.bits & other.bits == 0

    def issubset(self, other: "SubsetWord") -> bool:
        return self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"


@dataclass(frozen=True)
class Family:
    """A deduplicated family of subsets of {1,...,n}.

    Members are kept in canonical order: ascending by size, ties broken by
    numeric mask value.  Serialization is a bijection on this representation.
    """

    n: int
    members: tuple[SubsetWord, ...] = ()

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND_SET:
            raise ValueError(
                f"ground-set size must be in 1..{MAX_GROUND_SET}, got {self.n}"
            )
        last = (-1, -1)
        for w in self.members:
            if w.n != self.n:
                raise ValueError("member ground-set size differs from family")
            k = w.key()
            if k <= last:
                raise ValueError("members not strictly increasing in canonical order")
            last = k

    @classmethod
    def of(cls, n: int, members: Iterable[Union["SubsetWord", int]]) -> "Family":
        """Build a family from words or raw masks, deduplicating and sorting."""
        seen = set()
        for m in members:
            bits = m.bits if isinstance(m, SubsetWord) else int(m)
            seen.add(bits)
        ordered = sorted(seen, key=lambda b: (b.bit_count(), b))
        return cls(n, tuple(SubsetWord(n, b) for b in ordered))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Family":
        return cls.of(n, (SubsetWord.from_elements(n, s) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SubsetWord]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, SubsetWord):
            bits = item.bits
        elif isinstance(item, int):
            bits = item
        else:
            return False
        return any(w.bits == bits for w in self.members)

    def bit_list(self) -> list[int]:
        return [w.bits for w in self.members]


@dataclass(frozen=True)
class Params:
    """The parameter quadruple (n, s, m, l) tied by n = s*m + s - l."""

    n: int
    s: int
    m: int
    l: int

    def __post_init__(self):
        if min(self.n, self.s, self.m, self.l) < 1:
            raise ValueError("all parameters must be positive")
        if not 1 <= self.l <= self.s:
            raise ValueError(f"l must satisfy 1 <= l <= s, got l={self.l}, s={self.s}")
        if self.n != self.s * self.m + self.s - self.l:
            raise ValueError(
                f"n must equal s*m + s - l, got n={self.n} vs "
                f"{self.s * self.m + self.s - self.l}"
            )

    @classmethod
    def from_msl(cls, m: int, s: int, l: int) -> "Params":
        return cls(s * m + s - l, s, m, l)


def layer(family: Family, k: int) -> Family:
    """Members of size exactly k."""
    _check_layer_index(family, k)
    return Family(family.n, tuple(w for w in family.members if w.size == k))


def layer_at_most(family: Family, k: int) -> Family:
    """Members of size at most k."""
    _check_layer_index(family, k)
    return Family(family.n, tuple(w for w in family.members if w.size <= k))


def layer_at_least(family: Family, k: int) -> Family:
    """Members of size at least k."""
    _check_layer_index(family, k)
    return Family(family.n, tuple(w for w in family.members if w.size >= k))


def deficiency(family: Family, k: int) -> int:
    """Number of k-element subsets of the ground set missing from the family."""
    _check_layer_index(family, k)
    present = sum(1 for w in family.members if w.size == k)
    return math.comb(family.n, k) - present


def restrict(family: Family, window: SubsetWord) -> Family:
    """Subfamily of members contained in `window`; labels and n unchanged."""
    if window.n != family.n:
        raise ValueError("window ground-set size differs from family")
    keep = tuple(w for w in family.members if w.bits & ~window.bits == 0)
    return Family(family.n, keep)


def _check_layer_index(family: Family, k: int) -> None:
    if not 0 <= k <= family.n:
        raise ValueError(f"layer index {k} outside 0..{family.n}")


def serialize_family(family: Family) -> str:
    """Canonical FAMILY v1 text.  parse_family(serialize_family(F)) == F."""
    lines = [_HEADER, f"n={family.n}"]
    for w in family.members:
        lines.append(",".join(map(str, w.elements())) if w.bits else "-")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> Family:
    """Parse FAMILY v1 text into a Family.

    Input member lines may be in any order; duplicates, out-of-range
    elements, and unsorted element lists are rejected with the offending
    line number.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if "\r" in text:
        bad = next(i for i, ln in enumerate(lines) if "\r" in ln)
        raise FamilyFormatError(bad + 1, "carriage return; LF line endings required")
    if not lines or lines[0] != _HEADER:
        raise FamilyFormatError(1, f"malformed header, expected {_HEADER!r}")
    if len(lines) < 2:
        raise FamilyFormatError(2, "missing n= line")
    m = _N_LINE.match(lines[1])
    if m is None:
        raise FamilyFormatError(2, "malformed ground-set line, expected n=<decimal>")
    n = int(m.group(1))
    if not 1 <= n <= MAX_GROUND_SET:
        raise FamilyFormatError(2, f"ground-set size {n} outside 1..{MAX_GROUND_SET}")

    seen: dict[int, int] = {}
    for idx, line in enumerate(lines[2:], start=3):
        if line == "-":
            bits = 0
        elif line == "":
            raise FamilyFormatError(idx, "empty line")
        else:
            bits = 0
            prev = 0
            for token in line.split(","):
                if _ELEMENT.match(token) is None:
                    raise FamilyFormatError(idx, f"malformed element {token!r}")
                e = int(token)
                if not 1 <= e <= n:
                    raise FamilyFormatError(idx, f"element {e} out of range 1..{n}")
                if e <= prev:
                    raise FamilyFormatError(idx, "elements not strictly increasing")
                prev = e
                bits |= 1 << (e - 1)
        if bits in seen:
            raise FamilyFormatError(
                idx, f"duplicate set (first listed on line {seen[bits]})"
            )
        seen[bits] = idx
    return Family.of(n, seen.keys())
