"""
Default resource limits

Public module variables:
MAX_FAMILY -- largest update-set family delta may produce
MAX_SET -- largest single update set
MAX_PRED_ENUM -- largest predicate-sort domain a quantifier may enumerate
MAX_NODES -- largest formula the translation pipeline may emit
MAX_TRACES -- number of run traces kept in memory by exhaustive runs
DEFAULT_MAX_STEPS -- step bound for runs when none is given
DEFAULT_TRIALS -- instances per schema in validation runs

Notes:
- Enumeration over the secondary carrier and over predicate sorts grows
  exponentially, so exceeding any of these raises ResourceLimit instead of
  truncating.
"""

MAX_FAMILY = 10**5
MAX_SET = 10**4
MAX_PRED_ENUM = 2**16
MAX_NODES = 10**6
MAX_TRACES = 10**4

DEFAULT_MAX_STEPS = 64
DEFAULT_TRIALS = 100
