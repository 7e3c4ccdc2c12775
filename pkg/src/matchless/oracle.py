"""Ground-truth maximum-family search at desk scale.

Both oracles look for the largest subfamily of a candidate vertex set (all
subsets of [n], or one uniform layer) containing no s pairwise disjoint
members.  The search works on the complement: find the minimum number of
candidates to delete so that no s-matching survives.  At each node the
lexicographically least surviving s-matching is located; any valid deletion
set must remove one of its members, so we branch on them, protecting the
earlier members so the branches partition the search space.  A constructed
near-extremal family seeds the incumbent; branch-and-bound completeness
guarantees anything strictly larger would be found, so the seed never
decides the value.

In shifted mode, deleting a candidate deletes its whole dominance up-closure
(the surviving family stays closed under decreasing elements), which is
valid because compressions never increase the matching number and preserve
size, so some extremal family is shifted.  Agreement between the two modes
is itself part of the test suite.
"""

import math
import sys
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional

from .constructions import doubling, family_P, frankl_A, threshold_family
from .setfam import Family, SubsetWord

E_HARD_CAP = 7
EK_HARD_CAP = 5000


class CapExceededError(RuntimeError):
    """A resource cap would be exceeded; the oracle refuses rather than guess."""


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: Family
    nodes: int
    elapsed: float

    def to_dict(self, witness_file: Optional[str] = None, zero_elapsed: bool = False) -> dict:
        return {
            "value": self.value,
            "witness_file": witness_file,
            "nodes": self.nodes,
            "elapsed_ms": 0 if zero_elapsed else int(self.elapsed * 1000),
        }


def _disjointness_masks(vsets: list[int], n: int) -> list[int]:
    """disj[v] = mask of candidate indices whose sets avoid candidate v."""
    count = len(vsets)
    full = (1 << count) - 1
    elem = [0] * n
    for idx, b in enumerate(vsets):
        while b:
            low = b & -b
            elem[low.bit_length() - 1] |= 1 << idx
            b ^= low
    out = []
    for b in vsets:
        hit = 0
        bb = b
        while bb:
            low = bb & -bb
            hit |= elem[low.bit_length() - 1]
            bb ^= low
        out.append(full & ~hit)
    return out


def _dominance_closures(vsets: list[int], n: int) -> tuple[list[int], list[int]]:
    """Up- and down-closure masks of each candidate in the dominance order.

    Dominance compares same-size sets elementwise; its covering moves raise
    or lower a single element by one, so closures follow by dynamic
    programming along those moves.
    """
    index_of = {b: i for i, b in enumerate(vsets)}
    count = len(vsets)
    up = [0] * count
    down = [0] * count
    for i in range(count - 1, -1, -1):
        m = 1 << i
        b = vsets[i]
        bb = b
        while bb:
            low = bb & -bb
            bb ^= low
            e = low.bit_length()  # 1-based element
            if e < n and not b & (1 << e):
                m |= up[index_of[(b ^ low) | (1 << e)]]
        up[i] = m
    for i in range(count):
        m = 1 << i
        b = vsets[i]
        bb = b
        while bb:
            low = bb & -bb
            bb ^= low
            e = low.bit_length()
            if e > 1 and not b & (low >> 1):
                m |= down[index_of[(b ^ low) | (low >> 1)]]
        down[i] = m
    return up, down


def _find_matching(avail: int, disj: list[int], s: int) -> Optional[tuple[int, ...]]:
    """Lexicographically least s-matching (by ascending candidate index)
    within the availability mask, or None."""
    out: list[int] = []

    def rec(cand: int, need: int) -> bool:
        if need == 0:
            return True
        cnt = cand.bit_count()
        while cand:
            if cnt < need:
                return False
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            cnt -= 1
            out.append(i)
            if rec(cand & disj[i], need - 1):
                return True
            out.pop()
        return False

    return tuple(out) if rec(avail, s) else None


def _partition_finder(
    vsets: list[int], disj: list[int], s: int, k: int, n: int
) -> "Callable[[int], Optional[tuple[int, ...]]]":
    """Matching finder for shifted k-uniform candidates.

    A shifted uniform family has an s-matching iff it has one supported on
    [s*k] (compress outside elements into free low slots; the compressed
    sets are dominated, hence present), and such a matching uses all of
    [s*k], i.e. partitions the window.  So the search walks the lowest
    uncovered element and tries its carriers: exact cover instead of a crawl
    over all candidates.
    """
    w = s * k
    if w > n:
        return lambda avail: None  # s disjoint k-sets cannot fit at all
    window_elems = (1 << w) - 1
    window = 0
    elem_vmask = [0] * w
    for i, b in enumerate(vsets):
        if b & ~window_elems == 0:
            window |= 1 << i
            bb = b
            while bb:
                low = bb & -bb
                elem_vmask[low.bit_length() - 1] |= 1 << i
                bb ^= low

    def find(avail: int) -> Optional[tuple[int, ...]]:
        out: list[int] = []

        def rec(cand: int, covered: int, need: int) -> bool:
            if need == 0:
                return True
            free = ~covered & window_elems
            e = (free & -free).bit_length() - 1
            options = cand & elem_vmask[e]
            while options:
                low = options & -options
                v = low.bit_length() - 1
                options ^= low
                out.append(v)
                if rec(cand & disj[v], covered | vsets[v], need - 1):
                    return True
                out.pop()
            return False

        return tuple(out) if rec(avail & window, 0, s) else None

    return find


def _min_deletion_search(
    vcount: int,
    up: list[int],
    down: list[int],
    best_d: int,
    best_mask: int,
    use_packing: bool,
    find: Callable[[int], Optional[tuple[int, ...]]],
) -> tuple[int, int, int]:
    """Core branch and bound; returns (min deletions, family mask, nodes).

    `find` locates one violated s-matching inside an availability mask, with
    the guarantee that None implies the whole family is matching-free.
    """
    full = (1 << vcount) - 1
    nodes = 0
    bd, bm = best_d, best_mask
    if sys.getrecursionlimit() < vcount + 2000:
        sys.setrecursionlimit(vcount + 2000)

    def rec(cur: int, ndel: int, prot: int, protdown: int, check_prot: bool) -> None:
        nonlocal nodes, bd, bm
        nodes += 1
        if check_prot and find(protdown) is not None:
            return  # a matching survives among sets we committed to keep
        m = find(cur)
        if m is None:
            if ndel < bd:
                bd, bm = ndel, cur
            return
        if use_packing:
            # Member-disjoint violated matchings each cost one deletion.
            lb = 1
            a = cur
            for i in m:
                a &= ~(1 << i)
            while ndel + lb < bd:
                nxt = find(a)
                if nxt is None:
                    break
                lb += 1
                for i in nxt:
                    a &= ~(1 << i)
            if ndel + lb >= bd:
                return
        protadd = 0
        pdadd = 0
        for i in m:
            u = up[i]
            if not u & (prot | protadd):
                dm = u & cur
                nd = ndel + dm.bit_count()
                if nd < bd:
                    rec(cur & ~dm, nd, prot | protadd, protdown | pdadd, pdadd != 0)
            protadd |= 1 << i
            pdadd |= down[i]

    rec(full, 0, 0, 0, False)
    return bd, bm, nodes


def _run(
    n: int,
    vsets: list[int],
    s: int,
    warm: list[Family],
    shifted_only: bool,
    t0: float,
    uniform_k: Optional[int] = None,
) -> OracleResult:
    disj = _disjointness_masks(vsets, n)
    if shifted_only:
        up, down = _dominance_closures(vsets, n)
    else:
        up = [1 << i for i in range(len(vsets))]
        down = up
    index_of = {b: i for i, b in enumerate(vsets)}

    if shifted_only and uniform_k is not None:
        find = _partition_finder(vsets, disj, s, uniform_k, n)
    else:
        find = lambda avail: _find_matching(avail, disj, s)  # noqa: E731

    best_mask = 0
    best_size = 0
    for fam in warm:
        if len(fam) > best_size:
            mask = 0
            for w in fam.members:
                mask |= 1 << index_of[w.bits]
            if find(mask) is not None:
                raise RuntimeError("warm-start family unexpectedly has an s-matching")
            best_mask, best_size = mask, len(fam)

    vcount = len(vsets)
    bd, bm, nodes = _min_deletion_search(
        vcount, up, down, vcount - best_size, best_mask,
        use_packing=not shifted_only, find=find,
    )
    members = []
    mm = bm
    while mm:
        low = mm & -mm
        members.append(vsets[low.bit_length() - 1])
        mm ^= low
    witness = Family.of(n, members)
    return OracleResult(vcount - bd, witness, nodes, time.perf_counter() - t0)


def _warm_families_e(n: int, s: int) -> list[Family]:
    cands = []
    if n + 1 < s:  # the full power set only packs n+1 disjoint sets
        cands.append(threshold_family(n, 0))
    if n < s:
        cands.append(threshold_family(n, 1))
    l = (-n) % s or s
    m = (n + l) // s - 1
    if m >= 1:
        cands.append(family_P(m, s, l))
        if l == s:
            cands.append(doubling(threshold_family(n - 1, m)))
    return cands


def oracle_e(
    n: int, s: int, shifted_only: bool = False, *, cap_n: int = E_HARD_CAP
) -> OracleResult:
    """Exact maximum size of a family on [n] with no s pairwise disjoint
    members, plus a witness attaining it."""
    t0 = time.perf_counter()
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    cap = min(cap_n, E_HARD_CAP)
    if not 1 <= n <= cap:
        raise CapExceededError(f"oracle_e supports 1 <= n <= {cap}, got n={n}")
    vsets = sorted(range(1 << n), key=lambda b: (b.bit_count(), b))
    return _run(n, vsets, s, _warm_families_e(n, s), shifted_only, t0)


def oracle_ek(
    n: int,
    k: int,
    s: int,
    shifted_only: bool = True,
    *,
    cap_binom: int = EK_HARD_CAP,
) -> OracleResult:
    """Exact maximum size of a k-uniform family on [n] with no s pairwise
    disjoint members.

    Runs on shifted families by default (same value, far smaller search);
    pass shifted_only=False for the unrestricted search on small instances.
    """
    t0 = time.perf_counter()
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    cap = min(cap_binom, EK_HARD_CAP)
    layer_size = math.comb(n, k)
    if layer_size > cap:
        raise CapExceededError(
            f"oracle_ek supports C(n,k) <= {cap}, got C({n},{k}) = {layer_size}"
        )
    vsets = []
    for combo in combinations(range(1, n + 1), k):
        bits = 0
        for e in combo:
            bits |= 1 << (e - 1)
        vsets.append(bits)
    vsets.sort()
    warm = []
    for i in range(1, k + 1):
        if s * i - 1 <= n:
            warm.append(frankl_A(n, k, s, i))
    return _run(n, vsets, s, warm, shifted_only, t0, uniform_k=k)
