"""
Finite metafinite states.

A State holds an ordered primary carrier (always containing the boolean
atoms), an ordered secondary carrier disjoint from it, and for every function
of its signature a default value plus the argument tuples whose value differs
from that default. States are immutable; `apply` builds the successor.

Equality is extensional: two states are equal when their carriers agree and
every function has the same value at every argument tuple, regardless of the
default chosen to write it down.
"""

# Standard library
import itertools
import logging
from typing import Iterable, Iterator, Mapping

# Internal dependencies
from asmbase.constants.keywords import BOOLEANS
from asmbase.core.signature import FunctionSymbol, Signature, Sort
from asmbase.core.updates import Atom, Location, Update, conflict
from asmbase.errors import InconsistentUpdateSet, SortError

logger = logging.getLogger(__name__)


class State:
    """
    A finite state over a signature.

    Parameters:
    - signature (Signature): the functions interpreted by the state
    - primary (Iterable[str]): primary carrier atoms, in canonical order
    - secondary (Iterable[str]): secondary carrier atoms, in canonical order
    - defaults (Mapping[str, str]): default value of every function
    - graphs (Mapping[str, Mapping[tuple, str]]): explicit argument -> value rows

    Raises:
    - ValueError: on empty, overlapping or duplicated carriers, missing
      defaults, or rows outside the function's carriers

    Example:
    >>> sig = Signature.from_groups(primary={"c": (0, True)})
    >>> s = State(sig, ["true", "false", "a"], ["0"], {"c": "a"})
    >>> s.value("c", ())
    'a'
    """

    __slots__ = (
        "signature",
        "primary",
        "secondary",
        "_defaults",
        "_tables",
        "_positions",
        "_dynamic_extension",
        "_static_extension",
        "_hash",
    )

    def __init__(
        self,
        signature: Signature,
        primary: Iterable[Atom],
        secondary: Iterable[Atom],
        defaults: Mapping[str, Atom],
        graphs: Mapping[str, Mapping[tuple, Atom]] | None = None,
    ) -> None:
        self.signature = signature
        self.primary = tuple(primary)
        self.secondary = tuple(secondary)
        self._validate_carriers()
        self._positions = {a: (0, i) for i, a in enumerate(self.primary)}
        self._positions.update({a: (1, i) for i, a in enumerate(self.secondary)})
        graphs = dict(graphs or {})
        defaults = dict(defaults)
        defaults.setdefault(BOOLEANS[0], BOOLEANS[0])
        defaults.setdefault(BOOLEANS[1], BOOLEANS[1])
        unknown = (set(graphs) | set(defaults)) - {s.name for s in signature}
        if unknown:
            raise ValueError(f"Interpretation given for undeclared functions {sorted(unknown)}")
        self._defaults: dict[str, Atom] = {}
        self._tables: dict[str, dict[tuple, Atom]] = {}
        for symbol in signature:
            if symbol.name not in defaults:
                raise ValueError(f"Function {symbol.name!r} has no default value")
            default = defaults[symbol.name]
            self._check_atom(default, symbol.result_sort, f"default of {symbol.name}")
            rows = {}
            for argument, value in graphs.get(symbol.name, {}).items():
                argument = tuple(argument)
                self._check_argument(symbol, argument)
                self._check_atom(value, symbol.result_sort, f"value of {symbol.name}{argument}")
                if value != default:
                    rows[argument] = value
            self._defaults[symbol.name] = default
            self._tables[symbol.name] = rows
        if self._defaults[BOOLEANS[0]] != BOOLEANS[0] or self._defaults[BOOLEANS[1]] != BOOLEANS[1]:
            raise ValueError("The boolean constants must denote the boolean atoms")
        self._dynamic_extension = None
        self._static_extension = None
        self._hash = None

    def _validate_carriers(self) -> None:
        if not self.primary:
            raise ValueError("Primary carrier must be non-empty")
        if not self.secondary:
            raise ValueError("Secondary carrier must be non-empty")
        for name, carrier in (("primary", self.primary), ("secondary", self.secondary)):
            if len(set(carrier)) != len(carrier):
                raise ValueError(f"Duplicate atoms in {name} carrier {carrier!r}")
        overlap = set(self.primary) & set(self.secondary)
        if overlap:
            raise ValueError(f"Carriers must be disjoint, shared atoms {sorted(overlap)}")
        missing = [b for b in BOOLEANS if b not in self.primary]
        if missing:
            raise ValueError(f"Primary carrier must contain the boolean atoms, missing {missing}")

    def _check_atom(self, atom: Atom, sort: Sort, where: str) -> None:
        if atom not in self.carrier(sort):
            raise ValueError(f"Invalid {where}: {atom!r} is not in the {sort.value} carrier")

    def _check_argument(self, symbol: FunctionSymbol, argument: tuple) -> None:
        if len(argument) != symbol.arity:
            raise ValueError(
                f"Function {symbol.name!r} expects {symbol.arity} arguments, got {argument!r}"
            )
        for atom in argument:
            self._check_atom(atom, symbol.argument_sort, f"argument of {symbol.name}")

    @classmethod
    def _derived(cls, parent: "State", tables: dict[str, dict[tuple, Atom]]) -> "State":
        state = cls.__new__(cls)
        state.signature = parent.signature
        state.primary = parent.primary
        state.secondary = parent.secondary
        state._positions = parent._positions
        state._defaults = parent._defaults
        state._tables = tables
        state._dynamic_extension = None
        state._static_extension = parent._static_extension
        state._hash = None
        return state

    # Carriers

    def carrier(self, sort: Sort) -> tuple[Atom, ...]:
        if sort is Sort.POINT:
            return self.primary
        if sort is Sort.ALGO:
            return self.secondary
        raise SortError(f"Sort {sort.value} has no carrier of atoms")

    def atom_key(self, atom: Atom) -> tuple[int, int]:
        """Canonical position of an atom: primary atoms first, in listed order."""
        return self._positions[atom]

    def sort_of_atom(self, atom: Atom) -> Sort:
        return Sort.POINT if self._positions[atom][0] == 0 else Sort.ALGO

    def domain(self, name: str) -> Iterator[tuple[Atom, ...]]:
        symbol = self.signature[name]
        return itertools.product(self.carrier(symbol.argument_sort), repeat=symbol.arity)

    def codomain(self, name: str) -> tuple[Atom, ...]:
        return self.carrier(self.signature[name].result_sort)

    # Interpretation

    def value(self, name: str, argument: tuple = ()) -> Atom:
        table = self._tables[name]
        if table:
            found = table.get(argument)
            if found is not None:
                return found
        return self._defaults[name]

    def default(self, name: str) -> Atom:
        return self._defaults[name]

    def graph(self, name: str) -> dict[tuple, Atom]:
        """Explicit rows of a function (arguments whose value is not the default)."""
        return dict(self._tables[name])

    def locations(self) -> Iterator[Location]:
        for symbol in self.signature.dynamic:
            for argument in self.domain(symbol.name):
                yield Location(symbol.name, argument)

    def _extension(self, symbols) -> tuple:
        return tuple(
            tuple(self.value(s.name, arg) for arg in self.domain(s.name)) for s in symbols
        )

    @property
    def dynamic_extension(self) -> tuple:
        if self._dynamic_extension is None:
            self._dynamic_extension = self._extension(self.signature.dynamic)
        return self._dynamic_extension

    @property
    def static_extension(self) -> tuple:
        if self._static_extension is None:
            self._static_extension = self._extension(self.signature.static)
        return self._static_extension

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        if self is other:
            return True
        return (
            self.primary == other.primary
            and self.secondary == other.secondary
            and self.signature == other.signature
            and self.dynamic_extension == other.dynamic_extension
            and self.static_extension == other.static_extension
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.primary, self.secondary, self.dynamic_extension))
        return self._hash

    def __repr__(self) -> str:
        return (
            f"State(primary={len(self.primary)}, secondary={len(self.secondary)}, "
            f"functions={len(self.signature)})"
        )

    def __str__(self) -> str:
        rows = []
        for symbol in self.signature.dynamic:
            for argument, value in sorted(
                self._tables[symbol.name].items(),
                key=lambda item: tuple(self.atom_key(a) for a in item[0]),
            ):
                rows.append(f"{Location(symbol.name, argument)} = {value}")
        return "; ".join(rows) if rows else "(all dynamic functions at default)"

    def apply(self, u: Iterable[Update]) -> "State":
        return apply(self, u)

    def dynamic_rows(self) -> dict[str, dict[tuple, Atom]]:
        return {s.name: dict(self._tables[s.name]) for s in self.signature.dynamic}


def _check_update(state: State, update: Update) -> None:
    if update.function not in state.signature:
        raise ValueError(f"Update to undeclared function {update.function!r}")
    symbol = state.signature[update.function]
    if not symbol.dynamic:
        raise ValueError(f"Update to static function {symbol.name!r}")
    state._check_argument(symbol, update.argument)
    state._check_atom(update.value, symbol.result_sort, f"update value for {symbol.name}")


def apply(s: State, u: Iterable[Update]) -> State:
    """
    Successor of a state under a consistent update set.

    Raises:
    - InconsistentUpdateSet: if two updates write distinct values to one location
    - ValueError: if an update is not well-kinded for the state's signature

    Example:
    >>> sig = Signature.from_groups(primary={"c": (0, True)})
    >>> s = State(sig, ["true", "false"], ["0"], {"c": "false"})
    >>> apply(s, {Update("c", (), "true")}).value("c")
    'true'
    """
    u = frozenset(u)
    if not u:
        return s
    clash = conflict(u)
    if clash is not None:
        raise InconsistentUpdateSet(*clash)
    tables = dict(s._tables)
    touched: set[str] = set()
    for update in u:
        _check_update(s, update)
        if update.function not in touched:
            tables[update.function] = dict(tables[update.function])
            touched.add(update.function)
        table = tables[update.function]
        if update.value == s._defaults[update.function]:
            table.pop(update.argument, None)
        else:
            table[update.argument] = update.value
    return State._derived(s, tables)
