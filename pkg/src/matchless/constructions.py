"""Constructors for the named families with bounded matching number.

All constructors build families member-by-member from their defining
predicates, layer by layer, so no 2^n sweep is needed when only a few layers
are populated.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .setfam import MAX_GROUND_SET, Family, Params, SubsetWord

KINDS = ("star", "frankl_A", "family_P", "hilton_milner_H", "threshold", "doubling-of")

_TOKEN_KIND = {
    "star": "star",
    "A": "frankl_A",
    "P": "family_P",
    "H": "hilton_milner_H",
    "thr": "threshold",
    "dbl": "doubling-of",
}
_KIND_TOKEN = {v: k for k, v in _TOKEN_KIND.items()}
_REQUIRED = {
    "star": ("n", "k", "c"),
    "frankl_A": ("n", "k", "s", "i"),
    "family_P": ("m", "s", "l"),
    "hilton_milner_H": ("n", "k", "s"),
    "threshold": ("n", "t"),
}


def _k_subsets(n: int, k: int, pool: Optional[range] = None) -> Iterator[int]:
    """Masks of the k-subsets of `pool` (default: all of [n]), 1-based elements."""
    elems = pool if pool is not None else range(1, n + 1)
    for combo in combinations(elems, k):
        bits = 0
        for e in combo:
            bits |= 1 << (e - 1)
        yield bits


def star(n: int, k: int, c: int) -> Family:
    """All k-subsets of [n] containing the fixed element c."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if not 1 <= c <= n:
        raise ValueError(f"center {c} outside 1..{n}")
    cbit = 1 << (c - 1)
    rest = [e for e in range(1, n + 1) if e != c]
    members = []
    for combo in combinations(rest, k - 1):
        bits = cbit
        for e in combo:
            bits |= 1 << (e - 1)
        members.append(bits)
    return Family.of(n, members)


def frankl_A(n: int, k: int, s: int, i: int) -> Family:
    """k-subsets of [n] meeting the prefix [s*i - 1] in at least i elements.

    Any s of these would need s*i distinct prefix elements, so the matching
    number stays below s.
    """
    if not 1 <= i <= k:
        raise ValueError(f"need 1 <= i <= k, got i={i}, k={k}")
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    if s * i - 1 > n:
        raise ValueError(f"need s*i - 1 <= n, got s*i-1={s * i - 1}, n={n}")
    prefix = (1 << (s * i - 1)) - 1
    members = [b for b in _k_subsets(n, k) if (b & prefix).bit_count() >= i]
    return Family.of(n, members)


def family_P(m: int, s: int, l: int) -> Family:
    """Sets P on [s*m + s - l] with |P| + |P meet [l-1]| >= m + 1.

    For l = 1 the prefix is empty and this is just all sets of size >= m+1;
    the single defining predicate covers every case.
    """
    params = Params.from_msl(m, s, l)
    n = params.n
    if n > MAX_GROUND_SET:
        raise ValueError(f"ground-set size {n} exceeds cap {MAX_GROUND_SET}")
    members: list[int] = []
    head = list(range(1, l))
    tail = list(range(l, n + 1))
    for p in range(n + 1):
        if p >= m + 1:
            members.extend(_k_subsets(n, p))
            continue
        xmin = m + 1 - p
        for x in range(max(xmin, 0), min(p, l - 1) + 1):
            for hc in combinations(head, x):
                hb = 0
                for e in hc:
                    hb |= 1 << (e - 1)
                for tc in combinations(tail, p - x):
                    bits = hb
                    for e in tc:
                        bits |= 1 << (e - 1)
                    members.append(bits)
    return Family.of(n, members)


def hilton_milner_H(n: int, k: int, s: int) -> Family:
    """Union of s-2 stars with centers in [s-2] and a Hilton-Milner family
    on [s-1, n], plus the pivot interval [s, s+k-1].

    Built literally from the three clauses and deduplicated; the clauses are
    not assumed disjoint.
    """
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if s + k - 1 > n:
        raise ValueError(f"need s + k - 1 <= n, got {s + k - 1} > {n}")
    stars_prefix = (1 << (s - 2)) - 1
    pivot = 0
    for e in range(s, s + k):
        pivot |= 1 << (e - 1)
    members = [b for b in _k_subsets(n, k) if b & stars_prefix]
    members.append(pivot)
    centre = 1 << (s - 2)  # element s-1
    suffix_pool = range(s - 1, n + 1)
    for b in _k_subsets(n, k, suffix_pool):
        if b & centre and b & pivot:
            members.append(b)
    return Family.of(n, members)


def threshold_family(n: int, t: int) -> Family:
    """All subsets of [n] of size at least t (t = n+1 gives the empty family)."""
    if not 0 <= t <= n + 1:
        raise ValueError(f"threshold {t} outside 0..{n + 1}")
    members: list[int] = []
    for p in range(t, n + 1):
        members.extend(_k_subsets(n, p))
    return Family.of(n, members)


def doubling(family: Family) -> Family:
    """Lift to [n+1]: every F with F meet [n] in the family, doubling size.

    Preserves any matching-number bound nu < s.
    """
    n = family.n
    if n + 1 > MAX_GROUND_SET:
        raise ValueError(f"doubling exceeds ground-set cap {MAX_GROUND_SET}")
    top = 1 << n
    members = []
    for w in family.members:
        members.append(w.bits)
        members.append(w.bits | top)
    return Family.of(n + 1, members)


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction plus its integer parameters.

    Textual form, as used by the CLI: "star n=4 k=2 c=1", "A n=6 k=2 s=3 i=1",
    "P m=1 s=4 l=2", "H n=6 k=2 s=3", "thr n=5 t=2", and "dbl <spec>" for the
    doubling of an inner construction.
    """

    kind: str
    params: dict[str, int] = field(default_factory=dict)
    inner: Optional["ConstructionSpec"] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown construction kind {self.kind!r}")
        if self.kind == "doubling-of":
            if self.inner is None:
                raise ValueError("doubling-of needs an inner construction")
            if self.params:
                raise ValueError("doubling-of takes no parameters of its own")
        else:
            need = _REQUIRED[self.kind]
            if set(self.params) != set(need):
                raise ValueError(
                    f"{self.kind} needs parameters {', '.join(need)}, "
                    f"got {', '.join(sorted(self.params)) or 'none'}"
                )

    def text(self) -> str:
        if self.kind == "doubling-of":
            assert self.inner is not None
            return f"{_KIND_TOKEN[self.kind]} {self.inner.text()}"
        need = _REQUIRED[self.kind]
        args = " ".join(f"{name}={self.params[name]}" for name in need)
        return f"{_KIND_TOKEN[self.kind]} {args}"


def parse_construction_spec(text: str) -> ConstructionSpec:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty construction spec")
    spec, rest = _parse_tokens(tokens)
    if rest:
        raise ValueError(f"trailing tokens in construction spec: {' '.join(rest)}")
    return spec


def _parse_tokens(tokens: list[str]) -> tuple[ConstructionSpec, list[str]]:
    head, rest = tokens[0], tokens[1:]
    kind = _TOKEN_KIND.get(head)
    if kind is None:
        raise ValueError(f"unknown construction token {head!r}")
    if kind == "doubling-of":
        if not rest:
            raise ValueError("dbl needs an inner construction")
        inner, rest = _parse_tokens(rest)
        return ConstructionSpec(kind, {}, inner), rest
    params: dict[str, int] = {}
    while rest and "=" in rest[0]:
        name, _, value = rest[0].partition("=")
        if not value.lstrip("-").isdigit():
            raise ValueError(f"parameter {rest[0]!r} is not an integer assignment")
        if name in params:
            raise ValueError(f"duplicate parameter {name!r}")
        params[name] = int(value)
        rest = rest[1:]
    return ConstructionSpec(kind, params), rest


def build_construction(spec: ConstructionSpec) -> Family:
    if spec.kind == "star":
        return star(spec.params["n"], spec.params["k"], spec.params["c"])
    if spec.kind == "frankl_A":
        p = spec.params
        return frankl_A(p["n"], p["k"], p["s"], p["i"])
    if spec.kind == "family_P":
        return family_P(spec.params["m"], spec.params["s"], spec.params["l"])
    if spec.kind == "hilton_milner_H":
        return hilton_milner_H(spec.params["n"], spec.params["k"], spec.params["s"])
    if spec.kind == "threshold":
        return threshold_family(spec.params["n"], spec.params["t"])
    assert spec.kind == "doubling-of" and spec.inner is not None
    return doubling(build_construction(spec.inner))


def construction_size(spec: ConstructionSpec) -> int:
    """Closed-form size of a construction, without building it."""
    if spec.kind == "star":
        n, k = spec.params["n"], spec.params["k"]
        if not (1 <= k <= n and 1 <= spec.params["c"] <= n):
            raise ValueError("parameter range")
        return math.comb(n - 1, k - 1)
    if spec.kind == "frankl_A":
        p = spec.params
        n, k, s, i = p["n"], p["k"], p["s"], p["i"]
        if not (1 <= i <= k and s >= 1 and s * i - 1 <= n):
            raise ValueError("parameter range")
        prefix = s * i - 1
        return sum(
            math.comb(prefix, j) * math.comb(n - prefix, k - j)
            for j in range(i, k + 1)
        )
    if spec.kind == "family_P":
        from .formulas import size_P

        return size_P(spec.params["m"], spec.params["s"], spec.params["l"])
    if spec.kind == "hilton_milner_H":
        from .formulas import size_H

        return size_H(spec.params["n"], spec.params["k"], spec.params["s"])
    if spec.kind == "threshold":
        n, t = spec.params["n"], spec.params["t"]
        if not 0 <= t <= n + 1:
            raise ValueError("parameter range")
        return sum(math.comb(n, p) for p in range(t, n + 1))
    assert spec.kind == "doubling-of" and spec.inner is not None
    return 2 * construction_size(spec.inner)
