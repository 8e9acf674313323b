"""Exhaustive enumeration of small universes, canonical forms, and the
hereditarily finite worlds.

An n-element universe is an n-by-n membership matrix, so there are exactly
2^(n*n) of them.  Enumeration order is fixed: a single integer counter whose
bit i*n+j (little-endian) says whether element j is a member of element i.
That makes runs reproducible and the counter range partitionable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .audit import PREDECESSOR, SUCCESSOR, check_axiom
from .classifier import is_lower, is_upper, russell_witness
from .dsl import print_universe
from .errors import CapExceededError
from .universe import Universe

DEFAULT_MAX_N = 5

FILTERS: dict[str, Callable[[Universe], bool]] = {
    "satisfies-successor": lambda u: check_axiom(u, SUCCESSOR).satisfied,
    "satisfies-predecessor": lambda u: check_axiom(u, PREDECESSOR).satisfied,
    "satisfies-both": lambda u: (
        check_axiom(u, SUCCESSOR).satisfied
        and check_axiom(u, PREDECESSOR).satisfied
    ),
    "has-upper": lambda u: any(is_upper(u, x) for x in u.names),
    "has-lower": lambda u: any(is_lower(u, x) for x in u.names),
    "has-strictly-russellian": lambda u: russell_witness(u) is not None,
}


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate: size, optional named filter, optional dedupe up to
    element permutation."""

    n: int
    filter: str | None = None
    dedupe: bool = False
    max_n: int = DEFAULT_MAX_N
    witness_cap: int = 3

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.filter is not None and self.filter not in FILTERS:
            known = ", ".join(sorted(FILTERS))
            raise ValueError(
                f"unknown filter {self.filter!r} (known: {known})"
            )


@dataclass(frozen=True)
class EnumStats:
    total: int
    matching: int
    sample_witnesses: tuple[str, ...]


def _encode(masks, n: int) -> int:
    code = 0
    for i, row in enumerate(masks):
        code |= row << (i * n)
    return code


def _canonical_code(masks, n: int, perms) -> int:
    """Minimal matrix integer over all element permutations."""
    best = None
    for perm in perms:
        code = 0
        for i_new, i_old in enumerate(perm):
            row = masks[i_old]
            new_row = 0
            for j_new, j_old in enumerate(perm):
                if row >> j_old & 1:
                    new_row |= 1 << j_new
            code |= new_row << (i_new * n)
        if best is None or code < best:
            best = code
    return best if best is not None else 0


def enumerate_universes(
    spec: EnumSpec, visit: Callable[[Universe], None] | None = None
) -> EnumStats:
    """Visit every n-element universe exactly once (one representative per
    isomorphism class when dedupe is on), apply the filter, and collect
    stats.  visit, when given, is called on each universe that passes the
    filter."""
    n = spec.n
    if n > spec.max_n:
        raise CapExceededError(
            f"enumeration size {n} exceeds the cap of {spec.max_n}"
        )
    matches = FILTERS[spec.filter] if spec.filter else None
    names = tuple(f"e{i}" for i in range(n))
    row_mask = (1 << n) - 1
    perms = list(itertools.permutations(range(n))) if spec.dedupe else None

    total = 0
    matching = 0
    witnesses: list[str] = []
    for code in range(1 << (n * n)):
        masks = tuple(code >> (i * n) & row_mask for i in range(n))
        if perms is not None and _canonical_code(masks, n, perms) != code:
            continue
        total += 1
        u = Universe(names, masks)
        if matches is None or matches(u):
            matching += 1
            if len(witnesses) < spec.witness_cap:
                witnesses.append(print_universe(u))
            if visit is not None:
                visit(u)
    return EnumStats(total=total, matching=matching, sample_witnesses=tuple(witnesses))


def canonical_form(u: Universe, max_n: int = DEFAULT_MAX_N) -> bytes:
    """Canonical byte encoding, equal for two universes iff they are
    isomorphic as unlabeled membership digraphs.  Factorial search; refused
    above max_n elements."""
    n = len(u)
    if n > max_n:
        raise CapExceededError(
            f"canonical form of a {n}-element universe exceeds the cap of {max_n}"
        )
    perms = itertools.permutations(range(n))
    best = _canonical_code(u.masks, n, perms)
    return bytes([n]) + best.to_bytes(max(1, (n * n + 7) // 8), "little")


# Element counts of the hereditarily finite worlds by rank: rank 0 is the
# empty world and each next rank is the powerset of the previous one.
HF_SIZES = (0, 1, 2, 4, 16, 65536)
HF_HARD_CAP = 5


def hf_universe(rank: int, max_rank: int = 4) -> Universe:
    """The universe of hereditarily finite sets of rank below the given
    bound, with actual set membership as the relation.

    Element h<i> encodes the set whose members are exactly the h<j> with bit
    j of i set; h0 is the empty set.  With that encoding the elements of
    rank r are precisely the codes 0 .. 2^(size of rank r-1) - 1, so the
    membership mask of h<i> is i itself.  Every element is well-founded,
    hence a lower; none is an upper.
    """
    if rank < 0:
        raise ValueError("rank must be non-negative")
    if rank > min(max_rank, HF_HARD_CAP):
        raise CapExceededError(
            f"rank {rank} exceeds the cap of {min(max_rank, HF_HARD_CAP)}"
        )
    size = HF_SIZES[rank]
    names = tuple(f"h{i}" for i in range(size))
    return Universe(names, tuple(range(size)))
