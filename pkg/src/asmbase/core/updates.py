"""
Locations, updates, update sets and update-set families.

Update sets are frozensets of Update tuples and families are frozensets of
update sets, so families deduplicate by set equality for free.
"""

# Standard library
from typing import Callable, Iterable, NamedTuple

Atom = str


class Location(NamedTuple):
    function: str
    argument: tuple[Atom, ...]

    def __str__(self) -> str:
        return f"{self.function}({', '.join(self.argument)})"


class Update(NamedTuple):
    function: str
    argument: tuple[Atom, ...]
    value: Atom

    @property
    def location(self) -> Location:
        return Location(self.function, self.argument)

    def __str__(self) -> str:
        return f"{self.location} := {self.value}"


class TaggedUpdate(NamedTuple):
    function: str
    argument: tuple[Atom, ...]
    value: Atom
    tag: Atom

    @property
    def update(self) -> Update:
        return Update(self.function, self.argument, self.value)

    def __str__(self) -> str:
        return f"{self.update} @ {self.tag}"


UpdateSet = frozenset  # frozenset[Update]
UpdateSetFamily = frozenset  # frozenset[UpdateSet]
TaggedUpdateSet = frozenset  # frozenset[TaggedUpdate]

EMPTY: frozenset = frozenset()
EMPTY_FAMILY: frozenset = frozenset({EMPTY})


def update_set(updates: Iterable[tuple]) -> frozenset:
    """
    Build an update set from (function, argument, value) triples.

    Example:
    >>> sorted(update_set([("f", ("a",), "1")]))
    [Update(function='f', argument=('a',), value='1')]
    """
    return frozenset(Update(f, tuple(arg), value) for f, arg, value in updates)


def tagged_update_set(updates: Iterable[tuple]) -> frozenset:
    return frozenset(TaggedUpdate(f, tuple(arg), value, tag) for f, arg, value, tag in updates)


def conflict(u: Iterable[Update]) -> tuple[Location, tuple[Atom, Atom]] | None:
    """Return the first location receiving two distinct values, if any."""
    seen: dict[Location, Atom] = {}
    for update in sorted(u):
        location = update.location
        previous = seen.setdefault(location, update.value)
        if previous != update.value:
            return location, (previous, update.value)
    return None


def is_consistent(u: Iterable[Update]) -> bool:
    """
    Check that no two updates share a location with distinct values.

    Example:
    >>> is_consistent(update_set([("f", ("a",), "1"), ("f", ("a",), "2")]))
    False
    >>> is_consistent(frozenset())
    True
    """
    seen: dict[tuple, Atom] = {}
    for function, argument, value in u:
        previous = seen.setdefault((function, argument), value)
        if previous != value:
            return False
    return True


def seq_merge(d1: frozenset, d2: frozenset) -> frozenset:
    """
    Sequential merge: d2 plus the updates of d1 at locations d2 leaves alone.

    Example:
    >>> d1 = update_set([("f", ("a",), "1")])
    >>> d2 = update_set([("f", ("a",), "2")])
    >>> seq_merge(d1, d2) == d2
    True
    """
    overridden = {(f, arg) for f, arg, _ in d2}
    return d2 | frozenset(u for u in d1 if (u.function, u.argument) not in overridden)


def project(tagged: Iterable[TaggedUpdate], tag: Atom) -> frozenset:
    """The update set carried by one tag of a tagged update set."""
    return frozenset(t.update for t in tagged if t.tag == tag)


def untag(tagged: Iterable[TaggedUpdate]) -> frozenset:
    return frozenset(t.update for t in tagged)


def sorted_updates(u: Iterable, key: Callable[[Atom], object] | None = None) -> list:
    """Canonical order for printing: by function, argument and value atoms."""
    if key is None:
        return sorted(u)

    def order(update):
        return (update[0], tuple(key(a) for a in update[1]), *(key(a) for a in update[2:]))

    return sorted(u, key=order)


def format_update_set(u: Iterable, key: Callable[[Atom], object] | None = None) -> str:
    return "{" + ", ".join(str(x) for x in sorted_updates(u, key)) + "}"


def sorted_family(family: Iterable[frozenset], key: Callable[[Atom], object] | None = None) -> list:
    """Family members ordered by size, then by their canonical update lists."""

    def order(u):
        updates = sorted_updates(u, key)
        if key is None:
            return (len(updates), updates)
        return (
            len(updates),
            [(x[0], tuple(key(a) for a in x[1]), *(key(a) for a in x[2:])) for x in updates],
        )

    return sorted(family, key=order)
