"""Finite membership digraphs with the successor/predecessor lookups.

A Universe is a finite collection of named elements together with a total
extension map: each element has a finite (possibly empty) set of members
drawn from the same universe.  Self-membership and membership cycles are
allowed, and two distinct elements may share an extension (extensionality
is deliberately not enforced).

Extensions are stored as bitmasks over the canonical element order, so set
algebra runs on machine words while the semantic contract stays "plain
finite sets".  The canonical order is fixed at construction and drives all
iteration, which keeps every derived report byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import DuplicateDefinitionError, UnknownElementError

ElementId = str


@dataclass(frozen=True)
class Unique:
    """Exactly one element matched the target extension."""

    id: ElementId


@dataclass(frozen=True)
class Absent:
    """No element matched the target extension."""


@dataclass(frozen=True)
class Multiple:
    """Two or more distinct elements matched; ids are in canonical order."""

    ids: tuple[ElementId, ...]

    def __post_init__(self):
        if len(self.ids) < 2:
            raise ValueError("Multiple requires at least two ids")


LookupResult = Unique | Absent | Multiple


@dataclass(frozen=True)
class Universe:
    """Immutable membership digraph.

    ``names`` fixes the canonical element order; ``masks[i]`` is the bitmask
    of member positions of element ``names[i]``.  Bit ``j`` set in ``masks[i]``
    means ``names[j]`` is a member of ``names[i]``.
    """

    names: tuple[ElementId, ...]
    masks: tuple[int, ...]

    def __post_init__(self):
        n = len(self.names)
        if len(self.masks) != n:
            raise ValueError("one extension mask per element required")
        if len(set(self.names)) != n:
            raise DuplicateDefinitionError("duplicate element ids in universe")
        full = (1 << n) - 1
        for name, mask in zip(self.names, self.masks):
            if mask < 0 or mask & ~full:
                raise UnknownElementError(
                    f"extension of {name!r} refers outside the universe"
                )

    @classmethod
    def from_extensions(
        cls, extensions: Mapping[ElementId, Iterable[ElementId]]
    ) -> "Universe":
        """Build a universe from a name -> members mapping.

        The mapping's iteration order becomes the canonical element order.
        Every member must itself be a key of the mapping.
        """
        names = tuple(extensions)
        position = {name: i for i, name in enumerate(names)}
        if len(position) != len(names):
            raise DuplicateDefinitionError("duplicate element ids in universe")
        masks = []
        for name in names:
            mask = 0
            for member in extensions[name]:
                if member not in position:
                    raise UnknownElementError(
                        f"{member!r} (member of {name!r}) is not an element"
                    )
                mask |= 1 << position[member]
            masks.append(mask)
        return cls(names, tuple(masks))

    # -- canonical order plumbing ------------------------------------------

    @cached_property
    def _position(self) -> dict[ElementId, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def _by_mask(self) -> dict[int, tuple[ElementId, ...]]:
        """Extension mask -> elements carrying it, in canonical order."""
        table: dict[int, list[ElementId]] = {}
        for name, mask in zip(self.names, self.masks):
            table.setdefault(mask, []).append(name)
        return {mask: tuple(found) for mask, found in table.items()}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, x: object) -> bool:
        return x in self._position

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.names)

    def index(self, x: ElementId) -> int:
        try:
            return self._position[x]
        except KeyError:
            raise UnknownElementError(f"unknown element {x!r}") from None

    def bit(self, x: ElementId) -> int:
        return 1 << self.index(x)

    @property
    def all_mask(self) -> int:
        """Bitmask with one bit per element of the universe."""
        return (1 << len(self.names)) - 1

    def mask(self, ids: Iterable[ElementId]) -> int:
        result = 0
        for x in ids:
            result |= self.bit(x)
        return result

    def ids(self, mask: int) -> tuple[ElementId, ...]:
        """Decode a bitmask into element ids, in canonical order."""
        return tuple(
            name for i, name in enumerate(self.names) if mask >> i & 1
        )

    # -- membership queries -------------------------------------------------

    def members_mask(self, x: ElementId) -> int:
        return self.masks[self.index(x)]

    def extension(self, x: ElementId) -> frozenset[ElementId]:
        """The members of x."""
        return frozenset(self.ids(self.members_mask(x)))

    def is_member(self, x: ElementId, y: ElementId) -> bool:
        """True iff x is a member of y."""
        return bool(self.members_mask(y) >> self.index(x) & 1)

    def coextensive(self, x: ElementId, y: ElementId) -> bool:
        """True iff x and y have exactly the same members."""
        return self.members_mask(x) == self.members_mask(y)

    def self_membered(self, x: ElementId) -> bool:
        return self.is_member(x, x)

    # -- successor / predecessor lookups -------------------------------------

    def _lookup(self, target: int) -> LookupResult:
        found = self._by_mask.get(target, ())
        if not found:
            return Absent()
        if len(found) == 1:
            return Unique(found[0])
        return Multiple(found)

    def successor_in(self, x: ElementId) -> LookupResult:
        """Search for an element whose extension is extension(x) plus x itself.

        Unique(y) iff exactly one such y exists (y = x is possible when x is
        self-membered); Absent or Multiple otherwise.
        """
        return self._lookup(self.members_mask(x) | self.bit(x))

    def predecessor_in(self, x: ElementId) -> LookupResult:
        """Search for an element whose extension is extension(x) minus x."""
        return self._lookup(self.members_mask(x) & ~self.bit(x))

    def sym_diff_singleton(self, x: ElementId) -> frozenset[ElementId]:
        """extension(x) symmetric-difference {x}.

        Equals the successor target when x is not self-membered and the
        predecessor target when it is.
        """
        return frozenset(self.ids(self.members_mask(x) ^ self.bit(x)))
