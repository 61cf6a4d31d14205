# Standard library
from typing import Iterator, Mapping

# Internal dependencies
from asmbase.errors import UnboundVariable
from asmbase.syntax.terms import Var


class Valuation(Mapping):
    """
    Immutable assignment of values to variables.

    Point and algorithmic variables map to atoms, first predicate sort
    variables to update sets, second predicate sort variables to tagged
    update sets. `bind` returns a new valuation overriding one variable.

    Example:
    >>> from asmbase.syntax.terms import point
    >>> zeta = Valuation().bind(point("x"), "a")
    >>> zeta.lookup(point("x"))
    'a'
    """

    __slots__ = ("_bindings", "_hash")

    def __init__(self, bindings: Mapping[Var, object] | None = None) -> None:
        self._bindings = dict(bindings or {})
        self._hash = None

    def bind(self, var: Var, value) -> "Valuation":
        bindings = dict(self._bindings)
        bindings[var] = value
        return Valuation(bindings)

    def bind_all(self, pairs) -> "Valuation":
        bindings = dict(self._bindings)
        bindings.update(pairs)
        return Valuation(bindings)

    def lookup(self, var: Var):
        try:
            return self._bindings[var]
        except KeyError:
            raise UnboundVariable(var) from None

    def restrict(self, variables) -> "Valuation":
        return Valuation({v: self._bindings[v] for v in variables if v in self._bindings})

    def __getitem__(self, var: Var):
        return self._bindings[var]

    def __iter__(self) -> Iterator[Var]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._bindings.items()))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Valuation):
            return self._bindings == other._bindings
        return NotImplemented

    def __repr__(self) -> str:
        items = ", ".join(f"{var}={value!r}" for var, value in sorted(self._bindings.items(), key=lambda kv: kv[0].name))
        return f"Valuation({items})"


EMPTY_VALUATION = Valuation()
