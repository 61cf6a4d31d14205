"""
Signatures of metafinite states.

A signature splits its function names into three groups: primary functions
over the finite part, secondary functions over the algorithmic part, and
bridge functions from primary tuples into the secondary carrier. Each name is
static or dynamic; the dynamic names form the set of updatable functions.

Key components:
1. Sort -- the two individual sorts and the two predicate sorts
2. Kind -- which group a function belongs to
3. FunctionSymbol -- name, kind, arity and staticness
4. Signature -- the validated, ordered collection of symbols

Notes:
- `true` and `false` are added to every signature as static primary
  constants; they denote the boolean atoms of the primary carrier.
"""

# Standard library
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

# Internal dependencies
from asmbase.constants.keywords import BOOLEANS, RESERVED
from asmbase.errors import SortError


class Sort(Enum):
    POINT = "point"
    ALGO = "algorithmic"
    PRED1 = "pred1"
    PRED2 = "pred2"

    @property
    def individual(self) -> bool:
        return self in (Sort.POINT, Sort.ALGO)


class Kind(Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"
    BRIDGE = "bridge"


@dataclass(frozen=True)
class FunctionSymbol:
    name: str
    kind: Kind
    arity: int
    dynamic: bool = False

    @property
    def argument_sort(self) -> Sort:
        return Sort.ALGO if self.kind is Kind.SECONDARY else Sort.POINT

    @property
    def result_sort(self) -> Sort:
        return Sort.POINT if self.kind is Kind.PRIMARY else Sort.ALGO

    def __str__(self) -> str:
        staticness = "dynamic" if self.dynamic else "static"
        return f"{self.name}/{self.arity} {self.kind.value} {staticness}"


class Signature:
    """
    An ordered, immutable collection of function symbols.

    Parameters:
    - symbols (Iterable[FunctionSymbol]): the declared functions, in order

    Raises:
    - SortError: on duplicate names, negative arity or reserved names

    Example:
    >>> sig = Signature([FunctionSymbol("f", Kind.PRIMARY, 1, dynamic=True)])
    >>> [s.name for s in sig.dynamic]
    ['f']
    >>> sig["true"].kind
    <Kind.PRIMARY: 'primary'>
    """

    def __init__(self, symbols: Iterable[FunctionSymbol] = ()) -> None:
        declared = [
            FunctionSymbol(name, Kind.PRIMARY, 0, dynamic=False) for name in BOOLEANS
        ]
        table: dict[str, FunctionSymbol] = {s.name: s for s in declared}
        for symbol in symbols:
            if symbol.name in BOOLEANS:
                if symbol != table[symbol.name]:
                    raise SortError(f"{symbol.name!r} is a built-in static constant")
                continue
            self._validate_symbol(symbol, table)
            table[symbol.name] = symbol
            declared.append(symbol)
        self._symbols = tuple(declared)
        self._table = table

    @staticmethod
    def _validate_symbol(symbol: FunctionSymbol, table: Mapping[str, FunctionSymbol]) -> None:
        if symbol.name in table:
            raise SortError(f"Function name {symbol.name!r} is declared twice")
        if symbol.name in RESERVED:
            raise SortError(f"Function name {symbol.name!r} is a reserved word")
        if symbol.arity < 0:
            raise SortError(f"Function {symbol.name!r} has negative arity {symbol.arity}")

    @classmethod
    def from_groups(
        cls,
        primary: Mapping[str, tuple[int, bool]] | None = None,
        secondary: Mapping[str, tuple[int, bool]] | None = None,
        bridge: Mapping[str, tuple[int, bool]] | None = None,
    ) -> "Signature":
        """Build a signature from name -> (arity, dynamic) maps per group."""
        symbols = []
        for kind, group in (
            (Kind.PRIMARY, primary),
            (Kind.SECONDARY, secondary),
            (Kind.BRIDGE, bridge),
        ):
            for name, (arity, dynamic) in (group or {}).items():
                symbols.append(FunctionSymbol(name, kind, arity, dynamic))
        return cls(symbols)

    def __getitem__(self, name: str) -> FunctionSymbol:
        try:
            return self._table[name]
        except KeyError:
            raise SortError(f"Unknown function symbol {name!r}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._table

    def __iter__(self) -> Iterator[FunctionSymbol]:
        return iter(self._symbols)

    def __len__(self) -> int:
        return len(self._symbols)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Signature) and self._symbols == other._symbols

    def __hash__(self) -> int:
        return hash(self._symbols)

    def __repr__(self) -> str:
        return f"Signature({', '.join(str(s) for s in self._symbols)})"

    def _group(self, kind: Kind) -> dict[str, tuple[int, bool]]:
        return {s.name: (s.arity, s.dynamic) for s in self._symbols if s.kind is kind}

    @property
    def primary_functions(self) -> dict[str, tuple[int, bool]]:
        return self._group(Kind.PRIMARY)

    @property
    def secondary_functions(self) -> dict[str, tuple[int, bool]]:
        return self._group(Kind.SECONDARY)

    @property
    def bridge_functions(self) -> dict[str, tuple[int, bool]]:
        return self._group(Kind.BRIDGE)

    @property
    def dynamic(self) -> tuple[FunctionSymbol, ...]:
        return tuple(s for s in self._symbols if s.dynamic)

    @property
    def static(self) -> tuple[FunctionSymbol, ...]:
        return tuple(s for s in self._symbols if not s.dynamic)

    def is_dynamic(self, name: str) -> bool:
        return self[name].dynamic


def main():
    sig = Signature.from_groups(
        primary={"label": (1, True), "first": (1, False)},
        bridge={"weight": (1, False)},
    )
    print(sig)
    print(sig.primary_functions)
    print([s.name for s in sig.dynamic])


if __name__ == "__main__":
    main()
