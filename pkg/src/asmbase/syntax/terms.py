# Standard library
from dataclasses import dataclass

# Internal dependencies
from asmbase.core.signature import Signature, Sort
from asmbase.errors import SortError


@dataclass(frozen=True)
class Var:
    name: str
    sort: Sort = Sort.POINT

    def __str__(self) -> str:
        from asmbase.syntax.printer import format_variable

        return format_variable(self)


@dataclass(frozen=True)
class App:
    function: str
    args: tuple = ()

    def __str__(self) -> str:
        from asmbase.syntax.printer import format_term

        return format_term(self)


Term = Var | App


def point(name: str) -> Var:
    return Var(name, Sort.POINT)


def algo(name: str) -> Var:
    return Var(name, Sort.ALGO)


def pred1(name: str) -> Var:
    return Var(name, Sort.PRED1)


def pred2(name: str) -> Var:
    return Var(name, Sort.PRED2)


def sort_of(t: Term, signature: Signature) -> Sort:
    """
    Classify a term as a point term or an algorithmic term.

    Point terms are sort-1 variables closed under primary functions.
    Algorithmic terms are sort-2 variables, bridge functions over point terms,
    and secondary functions over algorithmic terms.

    Raises:
    - SortError: for unknown functions, wrong arity, or arguments of the wrong sort

    Example:
    >>> sig = Signature.from_groups(bridge={"weight": (1, False)})
    >>> sort_of(App("weight", (point("e"),)), sig)
    <Sort.ALGO: 'algorithmic'>
    """
    if isinstance(t, Var):
        if not t.sort.individual:
            raise SortError(f"Predicate variable {t} used as a term")
        return t.sort
    symbol = signature[t.function]
    if len(t.args) != symbol.arity:
        raise SortError(
            f"Function {t.function!r} expects {symbol.arity} arguments, got {len(t.args)}"
        )
    for arg in t.args:
        arg_sort = sort_of(arg, signature)
        if arg_sort is not symbol.argument_sort:
            raise SortError(
                f"Function {t.function!r} ({symbol.kind.value}) expects {symbol.argument_sort.value} "
                f"arguments, got {arg_sort.value} term {arg}"
            )
    return symbol.result_sort
