from asmbase.constants import keywords, limits

TRUE = keywords.TRUE
FALSE = keywords.FALSE
BOOLEANS = keywords.BOOLEANS
RESERVED = keywords.RESERVED
FILE_SUFFIXES = keywords.FILE_SUFFIXES

MAX_FAMILY = limits.MAX_FAMILY
MAX_SET = limits.MAX_SET
MAX_PRED_ENUM = limits.MAX_PRED_ENUM
MAX_NODES = limits.MAX_NODES
MAX_TRACES = limits.MAX_TRACES
DEFAULT_MAX_STEPS = limits.DEFAULT_MAX_STEPS
DEFAULT_TRIALS = limits.DEFAULT_TRIALS
