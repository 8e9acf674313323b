"""Axiom satisfaction checks, the lemma suite, and chain tracing.

The two axioms under audit assert that every element has a unique successor
(extension plus itself) and a unique predecessor (extension minus itself).
Finite universes usually violate them, so the audit reports a per-element
lookup outcome rather than a bare boolean.

The lemma suite evaluates, by exhaustive sweep, every statement that is a
theorem of the definitions.  Conditional statements about an element's
successor or predecessor are evaluated only where that lookup is Unique in
the given universe; when no element satisfies a statement's hypotheses the
verdict is "vacuous" rather than "holds".  A "violated" verdict always
indicates an implementation bug and carries a concrete witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classifier import ASCENDING, DESCENDING, is_lower, is_upper, nonself_mask
from .errors import LemmaViolationError
from .universe import Absent, ElementId, LookupResult, Multiple, Unique, Universe

SUCCESSOR = "successor"
PREDECESSOR = "predecessor"

HOLDS = "holds"
VACUOUS = "vacuous"
VIOLATED = "violated"

# Termination reasons for trace_chain.
ABSENT = "absent"
MULTIPLE = "multiple"
CYCLE = "cycle"
LENGTH_CAP = "length-cap"

LEMMA_TAGS = (
    "L-lower-not-self",
    "L-upper-self",
    "C-not-both",
    "C-stoppage",
    "L-pred-not-self",
    "L-succ-self",
    "A",
    "B",
    "C2",
    "D",
    "E",
    "main-result",
    "restated",
)

# The link-disjointness statement does not pin down what counts as two links
# "intersecting"; we check the strongest element-level reading and say so.
MAIN_RESULT_NOTE = (
    "link disjointness is checked at the element level: no element may be "
    "an endpoint of both a lower link and an upper link"
)


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    per_element: tuple[tuple[ElementId, LookupResult], ...]
    satisfied: bool


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: tuple[ElementId, ...] = ()

    def __post_init__(self):
        if self.status == VIOLATED and not self.witness:
            raise ValueError("violated verdict requires a witness")


@dataclass(frozen=True)
class LemmaReport:
    per_lemma: tuple[tuple[str, Verdict], ...]
    notes: tuple[str, ...] = ()

    def verdict(self, tag: str) -> Verdict:
        for name, verdict in self.per_lemma:
            if name == tag:
                return verdict
        raise KeyError(tag)

    @property
    def ok(self) -> bool:
        return all(v.status != VIOLATED for _, v in self.per_lemma)

    @property
    def violations(self) -> tuple[tuple[str, Verdict], ...]:
        return tuple(
            (tag, v) for tag, v in self.per_lemma if v.status == VIOLATED
        )


@dataclass(frozen=True)
class Chain:
    """A successor or predecessor walk.

    ``nodes`` starts at the walk's origin and never repeats an element;
    ``repeated`` records the revisited id when termination reason is cycle.
    """

    direction: str
    nodes: tuple[ElementId, ...]
    terminated_by: str
    repeated: ElementId | None = None


def check_axiom(u: Universe, which: str) -> AxiomReport:
    """Evaluate one axiom element by element.

    satisfied is true iff the lookup is Unique at every element; the empty
    universe satisfies both axioms vacuously.
    """
    if which == SUCCESSOR:
        lookup = u.successor_in
    elif which == PREDECESSOR:
        lookup = u.predecessor_in
    else:
        raise ValueError(f"unknown axiom {which!r}")
    per_element = tuple((x, lookup(x)) for x in u.names)
    satisfied = all(isinstance(r, Unique) for _, r in per_element)
    return AxiomReport(axiom=which, per_element=per_element, satisfied=satisfied)


def _sweep(pairs) -> Verdict:
    """Verdict for a 'for every x with ...' statement.

    pairs is an iterable of (witness, ok) with one entry per element
    satisfying the statement's hypotheses.
    """
    hypothesis_met = False
    for witness, ok in pairs:
        hypothesis_met = True
        if not ok:
            witness = witness if isinstance(witness, tuple) else (witness,)
            return Verdict(VIOLATED, witness)
    return Verdict(HOLDS) if hypothesis_met else Verdict(VACUOUS)


def verify_lemma_suite(u: Universe) -> LemmaReport:
    """Exhaustively evaluate the whole lemma suite over one universe."""
    names = u.names
    nonself = nonself_mask(u)
    lowers = [x for x in names if is_lower(u, x)]
    uppers = [x for x in names if is_upper(u, x)]
    succ = {x: u.successor_in(x) for x in names}
    pred = {x: u.predecessor_in(x) for x in names}

    def unique(result: LookupResult) -> ElementId | None:
        return result.id if isinstance(result, Unique) else None

    verdicts: dict[str, Verdict] = {}

    verdicts["L-lower-not-self"] = _sweep(
        (x, not u.self_membered(x)) for x in lowers
    )
    verdicts["L-upper-self"] = _sweep((x, u.self_membered(x)) for x in uppers)
    verdicts["C-not-both"] = _sweep(
        (x, not (is_lower(u, x) and is_upper(u, x))) for x in names
    )

    def stoppage_cases():
        for x in lowers:
            y = unique(pred[x])
            if y is not None:
                yield (x, y), u.coextensive(x, y)
        for x in uppers:
            y = unique(succ[x])
            if y is not None:
                yield (x, y), u.coextensive(x, y)

    verdicts["C-stoppage"] = _sweep(stoppage_cases())

    verdicts["L-pred-not-self"] = _sweep(
        ((x, y), not u.is_member(x, y))
        for x in names
        if (y := unique(pred[x])) is not None
    )
    verdicts["L-succ-self"] = _sweep(
        ((x, y), u.is_member(x, y))
        for x in names
        if (y := unique(succ[x])) is not None
    )

    verdicts["A"] = _sweep(
        ((x, y), y != x)
        for x in lowers
        if (y := unique(succ[x])) is not None
    )
    verdicts["B"] = _sweep(
        ((x, y), is_lower(u, y))
        for x in lowers
        if (y := unique(succ[x])) is not None
    )
    verdicts["C2"] = _sweep(
        ((x, y), y != x)
        for x in uppers
        if (y := unique(pred[x])) is not None
    )
    verdicts["D"] = _sweep(
        ((x, y), is_upper(u, y))
        for x in uppers
        if (y := unique(pred[x])) is not None
    )
    verdicts["E"] = _sweep(
        ((x, y), u.is_member(y, x))
        for x in uppers
        if (y := unique(pred[x])) is not None
    )

    verdicts["main-result"] = _main_result(u, lowers, uppers, succ, pred)

    def restated_cases():
        for x in names:
            if u.members_mask(x) != nonself:
                continue
            mask = u.members_mask(x)
            bit = u.bit(x)
            yield x, ((mask | bit) == mask) and ((mask & ~bit) == mask)

    verdicts["restated"] = _sweep(restated_cases())

    per_lemma = tuple((tag, verdicts[tag]) for tag in LEMMA_TAGS)
    return LemmaReport(per_lemma=per_lemma, notes=(MAIN_RESULT_NOTE,))


def _link_endpoints(u: Universe, group: list[ElementId]) -> int:
    """Bitmask of elements that are an endpoint of a link whose endpoints
    both lie in group (a pair of distinct elements, one a member of the
    other)."""
    group_mask = u.mask(group)
    endpoints = 0
    for x in group:
        others = u.members_mask(x) & group_mask & ~u.bit(x)
        if others:
            endpoints |= others | u.bit(x)
    return endpoints


def _main_result(u, lowers, uppers, succ, pred) -> Verdict:
    def unique(result):
        return result.id if isinstance(result, Unique) else None

    parts: list[Verdict] = []

    lower_ends = _link_endpoints(u, lowers)
    upper_ends = _link_endpoints(u, uppers)
    if not lower_ends or not upper_ends:
        parts.append(Verdict(VACUOUS))
    else:
        shared = lower_ends & upper_ends
        if shared:
            parts.append(Verdict(VIOLATED, (u.ids(shared)[0],)))
        else:
            parts.append(Verdict(HOLDS))

    parts.append(
        _sweep(
            ((x, y), y != x and u.is_member(x, y) and is_lower(u, y))
            for x in lowers
            if (y := unique(succ[x])) is not None
        )
    )
    parts.append(
        _sweep(
            ((x, y), y != x and u.is_member(y, x) and is_upper(u, y))
            for x in uppers
            if (y := unique(pred[x])) is not None
        )
    )

    for part in parts:
        if part.status == VIOLATED:
            return part
    if all(part.status == VACUOUS for part in parts):
        return Verdict(VACUOUS)
    return Verdict(HOLDS)


def trace_chain(u: Universe, start: ElementId, direction: str, cap: int) -> Chain:
    """Walk successors (ascending) or predecessors (descending) from start.

    Extends the walk while the lookup is Unique and the next element is
    unvisited, then terminates with the recorded reason.  When the walk
    starts at a lower (ascending) or an upper (descending), every step is
    additionally checked to stay in that class, move to a distinct element,
    and preserve the membership between consecutive nodes; a failed check
    raises LemmaViolationError since those facts are theorems.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    u.index(start)
    if direction == ASCENDING:
        lookup = u.successor_in
        guarded = is_lower(u, start)
    elif direction == DESCENDING:
        lookup = u.predecessor_in
        guarded = is_upper(u, start)
    else:
        raise ValueError(f"unknown direction {direction!r}")

    nodes = [start]
    visited = {start}
    while True:
        if len(nodes) >= cap:
            return Chain(direction, tuple(nodes), LENGTH_CAP)
        current = nodes[-1]
        result = lookup(current)
        if isinstance(result, Absent):
            return Chain(direction, tuple(nodes), ABSENT)
        if isinstance(result, Multiple):
            return Chain(direction, tuple(nodes), MULTIPLE)
        nxt = result.id
        if guarded:
            if direction == ASCENDING:
                ok = (
                    nxt != current
                    and is_lower(u, nxt)
                    and u.is_member(current, nxt)
                )
            else:
                ok = (
                    nxt != current
                    and is_upper(u, nxt)
                    and u.is_member(nxt, current)
                )
            if not ok:
                raise LemmaViolationError(
                    f"chain step {current!r} -> {nxt!r} broke a theorem"
                )
        if nxt in visited:
            return Chain(direction, tuple(nodes), CYCLE, repeated=nxt)
        nodes.append(nxt)
        visited.add(nxt)
