"""
Domains of the two predicate sorts over a finite state.

A first-predicate-sort variable ranges over finite sets of update triples, a
second-predicate-sort variable over finite sets of tagged quadruples whose
tag is a primary atom. Over a finite state both domains are finite, but they
grow as 2^n in the number n of admissible triples, so enumeration checks
`Limits.max_pred_enum` before yielding anything.

By default only well-kinded triples are admissible: the function is dynamic,
its arguments come from its argument carrier and its value from its result
carrier. No other triple can change the truth of a formula, because
membership atoms are sort checked and ill-kinded sets make every modal atom
true. `Limits.strict_domains` switches to the raw product
F_dyn x (D1 u D2)^arity x (D1 u D2) for conformance runs on tiny carriers.
"""

# Standard library
import itertools
import logging
from typing import Iterator

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.core.signature import Sort
from asmbase.core.state import State
from asmbase.core.updates import TaggedUpdate, Update
from asmbase.errors import SortError

logger = logging.getLogger(__name__)


def triples(s: State, strict: bool = False) -> list[Update]:
    """Admissible update triples of a state, in canonical order."""
    atoms = s.primary + s.secondary
    found = []
    for symbol in s.signature.dynamic:
        if strict:
            arguments = itertools.product(atoms, repeat=symbol.arity)
            values = atoms
        else:
            arguments = s.domain(symbol.name)
            values = s.codomain(symbol.name)
        values = tuple(values)
        for argument in arguments:
            for value in values:
                found.append(Update(symbol.name, argument, value))
    return found


def quadruples(s: State, strict: bool = False) -> list[TaggedUpdate]:
    return [TaggedUpdate(*t, tag) for t in triples(s, strict) for tag in s.primary]


def domain_size(sort: Sort, s: State, limits: Limits = DEFAULT_LIMITS) -> int:
    """Number of values a predicate-sort variable ranges over."""
    if sort is Sort.PRED1:
        return 2 ** len(triples(s, limits.strict_domains))
    if sort is Sort.PRED2:
        return 2 ** len(quadruples(s, limits.strict_domains))
    return len(s.carrier(sort))


def enumerate_domain(sort: Sort, s: State, limits: Limits = DEFAULT_LIMITS) -> Iterator[frozenset]:
    """
    Every value of a predicate sort, smallest sets first.

    Raises:
    - ResourceLimit: when the domain has more than max_pred_enum members
    - SortError: for individual sorts

    Example:
    >>> from asmbase.parser import parse_state
    >>> s = parse_state("primary-carrier: true, false\\nsecondary-carrier: 0\\n"
    ...                 "functions:\\n  c: primary dynamic arity 0 default false\\n")
    >>> len(list(enumerate_domain(Sort.PRED1, s)))
    4
    """
    if sort is Sort.PRED1:
        elements = triples(s, limits.strict_domains)
    elif sort is Sort.PRED2:
        elements = quadruples(s, limits.strict_domains)
    else:
        raise SortError(f"Sort {sort.value} is not a predicate sort")
    limits.check("max_pred_enum", 2 ** len(elements))
    logger.debug("enumerating %d subsets of %d %s elements", 2 ** len(elements), len(elements), sort.value)
    return _subsets(elements)


def _subsets(elements: list) -> Iterator[frozenset]:
    for size in range(len(elements) + 1):
        for combination in itertools.combinations(elements, size):
            yield frozenset(combination)


def is_well_kinded(u, s: State) -> bool:
    """True when every update (or tagged update) of u fits the state's signature and carriers."""
    for update in u:
        if update.function not in s.signature:
            return False
        symbol = s.signature[update.function]
        if not symbol.dynamic or len(update.argument) != symbol.arity:
            return False
        carrier = s.carrier(symbol.argument_sort)
        if any(a not in carrier for a in update.argument):
            return False
        if update.value not in s.carrier(symbol.result_sort):
            return False
        if isinstance(update, TaggedUpdate) and update.tag not in s.primary:
            return False
    return True
