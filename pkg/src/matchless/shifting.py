"""The (i,j)-shift compression, shift closure, dominance, and shiftedness.

The classical compression S_ij replaces j by i (i < j) in every member where
that is possible without colliding with an existing member.  A family closed
under every such compression is shifted: with each member it contains every
same-size set obtained by decreasing elements.
"""

from dataclasses import dataclass
from typing import Union

from .setfam import Family, SubsetWord


@dataclass(frozen=True)
class ShiftPair:
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise ValueError(f"need 1 <= i < j, got i={self.i}, j={self.j}")


PairLike = Union[ShiftPair, tuple[int, int]]


def _as_pair(pair: PairLike) -> ShiftPair:
    return pair if isinstance(pair, ShiftPair) else ShiftPair(*pair)


def dominates(a: SubsetWord, b: SubsetWord) -> bool:
    """True when `a` can be shifted to `b`: elementwise a_t >= b_t on the
    sorted element lists.  Requires equal sizes."""
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    return all(x >= y for x, y in zip(a.elements(), b.elements()))


def shift_ij(family: Family, pair: PairLike) -> Family:
    """One compression pass for the pair (i, j).

    A member containing j but not i moves to (A minus j) plus i unless that
    set is already present, in which case it stays.  Cardinality preserved.
    """
    p = _as_pair(pair)
    if p.j > family.n:
        raise ValueError(f"shift pair ({p.i},{p.j}) outside ground set 1..{family.n}")
    imask = 1 << (p.i - 1)
    jmask = 1 << (p.j - 1)
    present = {w.bits for w in family.members}
    out = []
    for w in family.members:
        b = w.bits
        if b & jmask and not b & imask:
            moved = (b ^ jmask) | imask
            out.append(b if moved in present else moved)
        else:
            out.append(b)
    return Family.of(family.n, out)


def shift_closure(family: Family) -> Family:
    """Apply shift_ij round-robin over pairs, (i ascending, then j ascending),
    until a full pass changes nothing.

    The pass order is part of the contract: closures of a family can in
    principle depend on it, and this fixed order keeps results reproducible.
    """
    n = family.n
    current = family
    while True:
        changed = False
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                nxt = shift_ij(current, ShiftPair(i, j))
                if nxt != current:
                    current = nxt
                    changed = True
        if not changed:
            return current


def is_shifted(family: Family) -> bool:
    """True when every set dominated by a member is itself a member.

    It is enough to check single-element decreases: dominance is the
    transitive closure of moves that lower one element to a smaller unused
    value, so closure under those moves gives closure under dominance.
    """
    present = {w.bits for w in family.members}
    for w in family.members:
        b = w.bits
        for j in w.elements():
            jmask = 1 << (j - 1)
            for i in range(1, j):
                imask = 1 << (i - 1)
                if b & imask:
                    continue
                if ((b ^ jmask) | imask) not in present:
                    return False
    return True
