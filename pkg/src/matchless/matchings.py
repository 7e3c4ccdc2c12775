"""Exact matching-number computation and cross-dependence tests.

The solvers are single-threaded branch-and-bound searches over the members
in canonical order, branching include-first on the lowest-indexed candidate.
Because candidates are explored in canonical order and pruning only discards
subtrees that cannot strictly improve, the first optimum found is the
lexicographically least one; returned values and witnesses are deterministic.

The prune bound at a node is the size-capacity bound: the largest number of
additional members whose smallest sizes fit into the free element budget.
This is a true upper bound on any disjoint extension (a greedy packing would
only be a lower bound and cannot justify pruning).
"""

import random
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .setfam import Family, SubsetWord


@dataclass(frozen=True)
class MatchingWitness:
    """Pairwise disjoint sets drawn from the queried family (or families)."""

    sets: tuple[SubsetWord, ...]

    def __post_init__(self):
        used = 0
        for w in self.sets:
            if used & w.bits:
                raise ValueError("witness sets are not pairwise disjoint")
            used |= w.bits

    def __len__(self) -> int:
        return len(self.sets)

    def to_family(self, n: Optional[int] = None) -> Family:
        if n is None:
            if not self.sets:
                raise ValueError("empty witness needs an explicit ground-set size")
            n = self.sets[0].n
        return Family.of(n, self.sets)


def _ensure_recursion_depth(depth: int) -> None:
    limit = depth + 2000
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)


class _Instance:
    """Shared solver state: member masks, size groups, conflict masks."""

    def __init__(self, family: Family):
        self.n = family.n
        self.bits = family.bit_list()
        self.count = len(self.bits)
        self.full = (1 << self.count) - 1

        # Contiguous index ranges per member size (canonical order sorts by size).
        groups: list[tuple[int, int]] = []  # (size, index mask)
        start = 0
        for i in range(1, self.count + 1):
            if i == self.count or self.bits[i].bit_count() != self.bits[start].bit_count():
                gmask = ((1 << i) - 1) ^ ((1 << start) - 1)
                groups.append((self.bits[start].bit_count(), gmask))
                start = i
        self.groups = groups

        elem = [0] * self.n
        for idx, b in enumerate(self.bits):
            while b:
                low = b & -b
                elem[low.bit_length() - 1] |= 1 << idx
                b ^= low
        self._elem = elem
        self._conflict: dict[int, int] = {}

    def conflict(self, idx: int) -> int:
        """Mask of member indices intersecting member idx (computed lazily)."""
        r = self._conflict.get(idx)
        if r is None:
            r = 0
            b = self.bits[idx]
            while b:
                low = b & -b
                r |= self._elem[low.bit_length() - 1]
                b ^= low
            self._conflict[idx] = r
        return r

    def capacity(self, compat: int, free: int) -> int:
        """Upper bound on pairwise disjoint members from `compat` within
        `free` unused ground-set elements."""
        add = 0
        for size, gmask in self.groups:
            c = (compat & gmask).bit_count()
            if not c:
                continue
            if size == 0:
                add += c
                continue
            fit = free // size
            if fit <= 0:
                break
            take = c if c < fit else fit
            add += take
            free -= take * size
            if take < c:
                break
        return add


def nu(family: Family) -> tuple[int, MatchingWitness]:
    """Exact matching number with a maximum matching witness.

    The witness is the lexicographically least maximum matching in canonical
    member order.  nu of the empty family is 0 with an empty witness.
    """
    inst = _Instance(family)
    if inst.count == 0:
        return 0, MatchingWitness(())
    _ensure_recursion_depth(inst.n + 2)

    best_size = 0
    best_idx: tuple[int, ...] = ()

    def dfs(compat: int, free: int, chosen: tuple[int, ...]) -> None:
        nonlocal best_size, best_idx
        k = len(chosen)
        if k > best_size:
            best_size, best_idx = k, chosen
        if not compat:
            return
        if k + inst.capacity(compat, free) <= best_size:
            return
        m = compat
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            dfs(m & ~inst.conflict(i), free - inst.bits[i].bit_count(), chosen + (i,))
            if k + m.bit_count() <= best_size:
                break

    dfs(inst.full, inst.n, ())
    witness = MatchingWitness(tuple(family.members[i] for i in best_idx))
    return best_size, witness


def has_matching(family: Family, s: int) -> tuple[bool, Optional[MatchingWitness]]:
    """Decide whether the family contains s pairwise disjoint members.

    May terminate as soon as one s-matching is found; the witness returned is
    the first in depth-first canonical order.
    """
    if s < 1:
        raise ValueError(f"matching size must be at least 1, got {s}")
    inst = _Instance(family)
    if inst.count < s:
        return False, None
    _ensure_recursion_depth(s + 2)

    found: list[int] = []

    def dfs(compat: int, free: int, depth: int) -> bool:
        if depth == s:
            return True
        if depth + inst.capacity(compat, free) < s:
            return False
        m = compat
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            found.append(i)
            if dfs(m & ~inst.conflict(i), free - inst.bits[i].bit_count(), depth + 1):
                return True
            found.pop()
        return False

    if dfs(inst.full, inst.n, 0):
        return True, MatchingWitness(tuple(family.members[i] for i in found))
    return False, None


def find_bounded_matching(
    family: Family, k: int, budget: int
) -> Optional[MatchingWitness]:
    """Find a k-matching whose total member size is at most `budget`.

    Returns the lexicographically least such matching in canonical member
    order, or None when no k-matching fits the budget.
    """
    if k < 1:
        raise ValueError(f"matching size must be at least 1, got {k}")
    if budget < 0:
        raise ValueError(f"size budget must be nonnegative, got {budget}")
    inst = _Instance(family)
    if inst.count < k:
        return None
    _ensure_recursion_depth(k + 2)

    found: list[int] = []

    def fits(compat: int, need: int, cap: int) -> bool:
        # Sum of the `need` smallest compatible sizes must stay within cap.
        total = 0
        for size, gmask in inst.groups:
            c = (compat & gmask).bit_count()
            if not c:
                continue
            take = c if c < need else need
            total += take * size
            need -= take
            if total > cap:
                return False
            if need == 0:
                return True
        return need == 0

    def dfs(compat: int, free: int, spent: int, depth: int) -> bool:
        if depth == k:
            return True
        need = k - depth
        if compat.bit_count() < need:
            return False
        cap = budget - spent
        if free < cap:
            cap = free
        if not fits(compat, need, cap):
            return False
        m = compat
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            sz = inst.bits[i].bit_count()
            found.append(i)
            if dfs(m & ~inst.conflict(i), free - sz, spent + sz, depth + 1):
                return True
            found.pop()
        return False

    if dfs(inst.full, inst.n, 0, 0):
        return MatchingWitness(tuple(family.members[i] for i in found))
    return None


def is_cross_dependent(
    families: Sequence[Family],
) -> tuple[bool, Optional[MatchingWitness]]:
    """Decide whether no rainbow matching picks one member from each family.

    Returns (True, None) when the families are cross-dependent, else
    (False, witness) with the representatives listed in family order.
    Representatives must form a matching, i.e. s distinct pairwise disjoint
    sets; only the empty set needs the distinctness check.
    """
    s = len(families)
    if s < 1:
        raise ValueError("need at least one family")
    n = families[0].n
    for f in families[1:]:
        if f.n != n:
            raise ValueError("mismatched ground sets")
    member_bits = [f.bit_list() for f in families]
    _ensure_recursion_depth(s + 2)

    picked: list[int] = []
    dead: set[tuple[int, int, bool]] = set()

    def dfs(i: int, used: int, empty_used: bool) -> bool:
        if i == s:
            return True
        key = (i, used, empty_used)
        if key in dead:
            return False
        for idx, b in enumerate(member_bits[i]):
            if b & used:
                continue
            if b == 0 and empty_used:
                continue
            picked.append(idx)
            if dfs(i + 1, used | b, empty_used or b == 0):
                return True
            picked.pop()
        dead.add(key)
        return False

    if dfs(0, 0, False):
        reps = tuple(families[i].members[idx] for i, idx in enumerate(picked))
        return False, MatchingWitness(reps)
    return True, None


def sample_disjoint_tuple(
    n: int, k: int, s: int, seed: int
) -> list[SubsetWord]:
    """Sample s pairwise disjoint k-subsets of {1,...,n}.

    Uniform over all ordered collections of s pairwise disjoint k-sets and
    deterministic per seed: each set is drawn uniformly from the k-subsets of
    the elements still unused, which yields the uniform product distribution.
    """
    if k < 1 or s < 1:
        raise ValueError("k and s must be at least 1")
    if n < s * k:
        raise ValueError(f"need n >= s*k, got n={n}, s*k={s * k}")
    rng = random.Random(seed)
    avail = list(range(1, n + 1))
    out = []
    for _ in range(s):
        chosen = rng.sample(avail, k)
        out.append(SubsetWord.from_elements(n, chosen))
        taken = set(chosen)
        avail = [e for e in avail if e not in taken]
    return out
