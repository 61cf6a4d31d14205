# Standard library
from dataclasses import dataclass, replace

# Internal dependencies
from asmbase.constants import limits as _defaults
from asmbase.errors import ResourceLimit


@dataclass(frozen=True)
class Limits:
    """
    Caps applied by the enumeration engine.

    Parameters:
    - max_family (int): largest family delta may return
    - max_set (int): largest update set inside a family
    - max_pred_enum (int): largest predicate-sort domain a quantifier may walk
    - max_nodes (int): largest formula the translator may produce
    - max_traces (int): traces kept by an exhaustive run
    - strict_domains (bool): enumerate P1/P2 over the raw product instead of
      the well-kinded triples

    Example:
    >>> Limits().max_family
    100000
    >>> Limits().replace(max_set=3).max_set
    3
    """

    max_family: int = _defaults.MAX_FAMILY
    max_set: int = _defaults.MAX_SET
    max_pred_enum: int = _defaults.MAX_PRED_ENUM
    max_nodes: int = _defaults.MAX_NODES
    max_traces: int = _defaults.MAX_TRACES
    strict_domains: bool = False

    def __post_init__(self):
        for name in ("max_family", "max_set", "max_pred_enum", "max_nodes", "max_traces"):
            if getattr(self, name) < 0:
                raise ValueError(f"Limit {name} must be non-negative, got {getattr(self, name)}")

    def replace(self, **overrides) -> "Limits":
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **overrides)

    def check(self, limit: str, value: int) -> None:
        cap = getattr(self, limit)
        if value > cap:
            raise ResourceLimit(limit, value, cap)


DEFAULT_LIMITS = Limits()
