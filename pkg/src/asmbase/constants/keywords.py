"""
Lexical constants of the rule, formula and state languages.

Public module variables:
TRUE, FALSE -- the two boolean atoms every primary carrier contains
BOOLEANS -- both of them, in canonical order
RESERVED -- words that cannot name functions or variables
ALGO_SIGIL, PRED1_SIGIL, PRED2_SIGIL -- variable prefixes by sort
FILE_SUFFIXES -- suffix of each bundled file kind
"""

TRUE = "true"
FALSE = "false"
BOOLEANS = (TRUE, FALSE)

RESERVED = frozenset(
    {
        "if",
        "then",
        "endif",
        "forall",
        "exists",
        "choose",
        "with",
        "do",
        "enddo",
        "par",
        "endpar",
        "seq",
        "endseq",
        "not",
        "and",
        "or",
        "upd",
        "conUSet",
        "con",
        "wcon",
        "scon",
        "joinable",
        "rule",
        "initial",
        "final",
        "true",
        "false",
    }
)

ALGO_SIGIL = "$"
PRED1_SIGIL = "@"
PRED2_SIGIL = "@@"

FILE_SUFFIXES = {
    "machine": ".asmr",
    "state": ".asms",
    "formula": ".asml",
    "derivation": ".asmd",
}
