"""Interpreted membership over a well-founded base plus tagged urelements.

A BaseModel is a finite well-founded universe (the "base") together with a
pool of urelements.  Urelements have no members in the base relation; an
interpreted relation gives them members via tags.  A tag (Index) is a pair
of representative-token sets:

  * at level 0 every entity has the same representative (SHARED_REP), so
    putting it in the first slot flips membership for every candidate at
    once (the complement switch);
  * at level 1 each entity represents itself, so the second slot picks out
    individual entities (exceptions to a complement, or a plain listing).

For a candidate x and a tag L, the sprig of x is the set of level/token
pairs of x that land inside the corresponding slot of L; x is an interpreted
member of a tagged urelement iff its sprig has an odd number of members.
With two levels the only odd size is 1, so membership is the XOR of the two
slot tests.  A urelement tagged ({0rep}, {}) therefore contains everything,
including itself: a universal set.  Tagging at most one urelement per index
keeps the index-to-urelement map a partial bijection.

retag_counterexample_pair rewires that bijection so that two urelements N
and M cut each other out: N contains everything but M, and M contains
everything but M and N.  Then M is exactly N's predecessor in the
interpreted sense, N is self-membered, and M is not: a self-membered set
whose predecessor is not self-membered, with no Quine atom in sight.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .audit import Chain, LENGTH_CAP
from .classifier import DESCENDING
from .dsl import UniverseDoc, parse_document
from .enumerator import hf_universe
from .errors import (
    CollisionError,
    DuplicateDefinitionError,
    PoolExhaustedError,
    PreconditionError,
    UnknownElementError,
    UntaggedUrelementWarning,
)
from .universe import ElementId, Universe

LEVEL_ZERO = 0
LEVEL_ONE = 1


@dataclass(frozen=True)
class RepToken:
    """Equivalence-class representative: the shared level-0 token when
    entity is None, otherwise the entity's own level-1 token."""

    entity: ElementId | None = None

    @property
    def is_shared(self) -> bool:
        return self.entity is None


SHARED_REP = RepToken()


def own_rep(x: ElementId) -> RepToken:
    return RepToken(x)


def level_rep(level: int, x: ElementId) -> RepToken:
    """The level-j representative of x: one shared token at level 0, x's
    own token at level 1."""
    if level == LEVEL_ZERO:
        return SHARED_REP
    if level == LEVEL_ONE:
        return RepToken(x)
    raise ValueError(f"level must be {LEVEL_ZERO} or {LEVEL_ONE}, got {level}")


@dataclass(frozen=True)
class Index:
    """A urelement tag: the level-0 slot (complement switch) and the
    level-1 slot (exception or listing set)."""

    level0: frozenset[RepToken]
    level1: frozenset[RepToken]

    def __post_init__(self):
        if any(not token.is_shared for token in self.level0):
            raise ValueError("the level-0 slot may only contain the shared token")
        if any(token.is_shared for token in self.level1):
            raise ValueError("the level-1 slot may not contain the shared token")

    @property
    def listed_entities(self) -> frozenset[ElementId]:
        return frozenset(token.entity for token in self.level1)


def universal_index() -> Index:
    """Tag whose bearer contains every entity (itself included)."""
    return Index(frozenset({SHARED_REP}), frozenset())


def complement_index(exceptions: Iterable[ElementId]) -> Index:
    """Tag whose bearer contains everything except the listed entities."""
    return Index(frozenset({SHARED_REP}), frozenset(own_rep(x) for x in exceptions))


def listing_index(members: Iterable[ElementId]) -> Index:
    """Tag whose bearer contains exactly the listed entities."""
    return Index(frozenset(), frozenset(own_rep(x) for x in members))


@dataclass(frozen=True)
class Sprig:
    """The level/token pairs of a candidate that land inside a tag."""

    pairs: frozenset[tuple[int, RepToken]]

    @property
    def odd(self) -> bool:
        return len(self.pairs) % 2 == 1


@dataclass(frozen=True)
class BaseModel:
    """Well-founded base universe, urelement pool, and the tagging map.

    Immutable; operations that change the tagging return a new model.
    ``tags`` associates at most one urelement to an index and vice versa.
    """

    base: Universe
    urelements: tuple[ElementId, ...]
    tags: tuple[tuple[Index, ElementId], ...] = ()

    def __post_init__(self):
        pool = set(self.urelements)
        if len(pool) != len(self.urelements):
            raise DuplicateDefinitionError("duplicate urelement names")
        overlap = pool & set(self.base.names)
        if overlap:
            raise DuplicateDefinitionError(
                f"urelement names collide with base elements: {sorted(overlap)}"
            )
        _require_well_founded(self.base)
        entity_set = set(self.base.names) | pool
        seen_indexes = set()
        seen_bearers = set()
        for index, bearer in self.tags:
            if bearer not in pool:
                raise UnknownElementError(f"tagged name {bearer!r} is not in the pool")
            if index in seen_indexes or bearer in seen_bearers:
                raise CollisionError("tagging must be bijective")
            seen_indexes.add(index)
            seen_bearers.add(bearer)
            for entity in index.listed_entities:
                if entity not in entity_set:
                    raise UnknownElementError(
                        f"tag of {bearer!r} refers to unknown entity {entity!r}"
                    )

    @classmethod
    def build(
        cls,
        base: Universe,
        urelements: Iterable[ElementId],
        tagging: Mapping[Index, ElementId] | None = None,
    ) -> "BaseModel":
        tags = tuple(sorted((tagging or {}).items(), key=lambda item: item[1]))
        return cls(base=base, urelements=tuple(urelements), tags=tags)

    @cached_property
    def entities(self) -> tuple[ElementId, ...]:
        return self.base.names + self.urelements

    @cached_property
    def _pool(self) -> frozenset[ElementId]:
        return frozenset(self.urelements)

    @cached_property
    def _entity_set(self) -> frozenset[ElementId]:
        return frozenset(self.entities)

    @cached_property
    def _tag_by_bearer(self) -> dict[ElementId, Index]:
        return {bearer: index for index, bearer in self.tags}

    @cached_property
    def _bearer_by_index(self) -> dict[Index, ElementId]:
        return {index: bearer for index, bearer in self.tags}

    def is_urelement(self, x: ElementId) -> bool:
        return x in self._pool

    def check_entity(self, x: ElementId) -> None:
        if x not in self._entity_set:
            raise UnknownElementError(f"unknown entity {x!r}")

    def tag_of(self, bearer: ElementId) -> Index | None:
        return self._tag_by_bearer.get(bearer)

    def bearer_of(self, index: Index) -> ElementId | None:
        return self._bearer_by_index.get(index)

    def untagged(self) -> tuple[ElementId, ...]:
        return tuple(
            name for name in self.urelements if name not in self._tag_by_bearer
        )

    def retag(self, tagging: Mapping[Index, ElementId]) -> "BaseModel":
        return BaseModel.build(self.base, self.urelements, tagging)


def _require_well_founded(base: Universe) -> None:
    """Reject base universes with membership cycles (including loops)."""
    remaining = list(base.masks)
    alive = base.all_mask
    changed = True
    while changed and alive:
        changed = False
        for i in range(len(remaining)):
            if alive >> i & 1 and remaining[i] & alive == 0:
                alive &= ~(1 << i)
                changed = True
    if alive:
        names = ", ".join(base.ids(alive))
        raise ValueError(f"base universe is not well-founded (cycle among {names})")


def sprig(model: BaseModel, x: ElementId, L: Index) -> Sprig:
    """The pairs (level, level-rep of x) that fall inside the tag L."""
    model.check_entity(x)
    pairs = set()
    if SHARED_REP in L.level0:
        pairs.add((LEVEL_ZERO, SHARED_REP))
    if own_rep(x) in L.level1:
        pairs.add((LEVEL_ONE, own_rep(x)))
    return Sprig(frozenset(pairs))


def member_interp(model: BaseModel, x: ElementId, u: ElementId) -> bool:
    """Interpreted membership: base membership when u is a base element;
    for a tagged urelement, the XOR of the two slot tests (equivalently,
    odd sprig size).  Untagged urelements have empty extensions and warn."""
    model.check_entity(x)
    model.check_entity(u)
    if not model.is_urelement(u):
        if model.is_urelement(x):
            return False
        return model.base.is_member(x, u)
    L = model.tag_of(u)
    if L is None:
        warnings.warn(
            f"membership queried against untagged urelement {u!r}",
            UntaggedUrelementWarning,
            stacklevel=2,
        )
        return False
    return (SHARED_REP in L.level0) != (own_rep(x) in L.level1)


def extension_interp(model: BaseModel, u: ElementId) -> frozenset[ElementId]:
    """All entities that are interpreted members of u."""
    return frozenset(x for x in model.entities if member_interp(model, x, u))


def materialize(model: BaseModel) -> Universe:
    """Turn the interpreted relation into an ordinary universe over all
    entities, so the classifier and audit machinery apply unchanged."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UntaggedUrelementWarning)
        extensions = {}
        for u in model.entities:
            members = extension_interp(model, u)
            extensions[u] = tuple(x for x in model.entities if x in members)
    return Universe.from_extensions(extensions)


def retag_counterexample_pair(
    model: BaseModel, M: ElementId, N: ElementId
) -> BaseModel:
    """Rewire the tagging so the counterexample pair of indexes lands on N
    and M.

    With n = (complement of {M}) and m = (complement of {M, N}), the new
    tagging maps n to N and m to M (if it does not already).  To stay
    bijective, whatever index previously bore N takes over n's previous
    bearer, and likewise for M and m.  Raises CollisionError when that
    fixup cannot restore bijectivity.
    """
    if M == N:
        raise ValueError("the two urelements must be distinct")
    for name in (M, N):
        if not model.is_urelement(name):
            raise UnknownElementError(f"{name!r} is not in the urelement pool")
    n_index = complement_index({M})
    m_index = complement_index({M, N})

    tagging = dict(model._bearer_by_index)
    n_bearer_old = tagging.get(n_index)
    m_bearer_old = tagging.get(m_index)
    n_home_old = model.tag_of(N)
    m_home_old = model.tag_of(M)

    for index in (n_index, m_index, n_home_old, m_home_old):
        if index is not None:
            tagging.pop(index, None)
    tagging[n_index] = N
    tagging[m_index] = M
    if n_home_old is not None and n_home_old not in (n_index, m_index):
        if n_bearer_old is not None:
            tagging[n_home_old] = n_bearer_old
    if m_home_old is not None and m_home_old not in (n_index, m_index):
        if m_bearer_old is not None:
            tagging[m_home_old] = m_bearer_old

    bearers = list(tagging.values())
    if len(set(bearers)) != len(bearers):
        raise CollisionError(
            "retagging could not keep the index-to-urelement map bijective"
        )
    return model.retag(tagging)


def find_universal(model: BaseModel) -> ElementId | None:
    """The urelement tagged to contain everything, if one exists."""
    return model.bearer_of(universal_index())


@dataclass(frozen=True)
class ForsterReport:
    """Outcome of checking the counterexample pair in a model."""

    universal: ElementId
    n: ElementId | None
    m: ElementId | None
    precondition_met: bool
    checks: tuple[tuple[str, bool], ...]
    note: str

    @property
    def passed(self) -> bool:
        return self.precondition_met and all(ok for _, ok in self.checks)


_COUNTEREXAMPLE_NOTE = (
    "exhibits a self-membered set whose predecessor is not self-membered; "
    "informational for this constructed model only"
)


def _find_counterexample_pair(model: BaseModel):
    """Locate (M, N) with the pair tagging: complement-of-{M} tagged to N
    and complement-of-{M, N} tagged to M.  Deterministic first match in
    bearer order."""
    for index, bearer in model.tags:
        if not index.level0 or len(index.level1) != 1:
            continue
        (candidate_m,) = index.listed_entities
        if not model.is_urelement(candidate_m):
            continue
        candidate_n = bearer
        if candidate_n == candidate_m:
            continue
        if model.bearer_of(complement_index({candidate_m, candidate_n})) == candidate_m:
            return candidate_m, candidate_n
    return None


def verify_forster_counterexample(model: BaseModel) -> ForsterReport:
    """Check the counterexample pair against the universal set.

    Requires a universal urelement; when the pair tagging is absent the
    report comes back with precondition_met False instead of checks.
    """
    universal = find_universal(model)
    if universal is None:
        raise PreconditionError("model has no universal urelement")
    pair = _find_counterexample_pair(model)
    if pair is None:
        return ForsterReport(
            universal=universal,
            n=None,
            m=None,
            precondition_met=False,
            checks=(),
            note="no urelement pair carries the counterexample tagging",
        )
    M, N = pair
    everything = frozenset(model.entities)
    ext_n = extension_interp(model, N)
    ext_m = extension_interp(model, M)
    ext_u = extension_interp(model, universal)
    checks = (
        ("ext(n) = all - {m}", ext_n == everything - {M}),
        ("ext(m) = all - {m, n}", ext_m == everything - {M, N}),
        ("n in n", member_interp(model, N, N)),
        ("m not in m", not member_interp(model, M, M)),
        ("ext(m) = ext(n) - {n}", ext_m == ext_n - {N}),
        ("ext(n) = ext(universal) - {m}", ext_n == ext_u - {M}),
    )
    return ForsterReport(
        universal=universal,
        n=N,
        m=M,
        precondition_met=True,
        checks=checks,
        note=_COUNTEREXAMPLE_NOTE,
    )


@dataclass(frozen=True)
class UpperChainResult:
    """A freshly tagged descending chain plus the model that carries it."""

    model: BaseModel
    chain: Chain


def upper_chain_interp(model: BaseModel, k: int) -> UpperChainResult:
    """Tag k fresh urelements into a descending chain of uppers below the
    universal set: each new entity's extension removes exactly the chain so
    far, making it the interpreted predecessor of the previous entity."""
    if k < 1:
        raise ValueError("k must be at least 1")
    universal = find_universal(model)
    if universal is None:
        raise PreconditionError("model has no universal urelement")
    fresh = model.untagged()
    if len(fresh) < k:
        raise PoolExhaustedError(
            f"need {k} untagged urelements, only {len(fresh)} available"
        )
    tagging = dict(model._bearer_by_index)
    removed = [universal]
    nodes = []
    for i in range(k):
        index = complement_index(removed)
        if index in tagging:
            raise CollisionError(f"index for chain step {i} is already tagged")
        bearer = fresh[i]
        tagging[index] = bearer
        nodes.append(bearer)
        removed.append(bearer)
    chain = Chain(
        direction=DESCENDING,
        nodes=tuple(nodes),
        terminated_by=LENGTH_CAP,
    )
    return UpperChainResult(model=model.retag(tagging), chain=chain)


def quine_universe() -> Universe:
    """Two-element world with a Quine atom: e = {} and q = {q}."""
    return Universe.from_extensions({"e": (), "q": ("q",)})


def default_demo_model(rank: int = 2, pool_size: int = 8) -> BaseModel:
    """Base world of hereditarily finite sets plus a urelement pool, with
    the first urelement tagged as the universal set."""
    if pool_size < 1:
        raise ValueError("pool_size must be at least 1")
    pool = tuple(f"ur{i}" for i in range(pool_size))
    return BaseModel.build(hf_universe(rank), pool, {universal_index(): pool[0]})


def forster_demo_model() -> BaseModel:
    """The default demo model with the counterexample pair tagged to ur1
    (the m side) and ur2 (the n side)."""
    return retag_counterexample_pair(default_demo_model(), "ur1", "ur2")


def model_from_doc(doc: UniverseDoc) -> BaseModel:
    """Build a model from a parsed model document: plain definitions form
    the base, urelement declarations the pool and tagging."""
    base = doc.to_universe()
    pool = tuple(sorted(decl.name for decl in doc.urelements))
    tagging: dict[Index, ElementId] = {}
    for decl in doc.urelements:
        if decl.index is None:
            continue
        index = Index(
            frozenset({SHARED_REP}) if decl.index.zero_rep else frozenset(),
            frozenset(own_rep(entity) for entity in decl.index.entities),
        )
        if index in tagging:
            raise CollisionError(
                f"line {decl.line}: index already tagged to {tagging[index]!r}"
            )
        tagging[index] = decl.name
    return BaseModel.build(base, pool, tagging)


def parse_model(text: str) -> BaseModel:
    """Parse model source text (universe DSL plus urelement declarations)."""
    return model_from_doc(parse_document(text, allow_urelements=True))
