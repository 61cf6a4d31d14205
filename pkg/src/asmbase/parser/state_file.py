"""
Reader and printer for `.asms` state files.

A state file has three sections. Carriers are comma separated atom lists;
each function line gives kind, staticness, arity and default; graph rows
list the arguments whose value differs from the default.

    // comment
    primary-carrier: true, false, a, b
    secondary-carrier: 0, 1
    functions:
      f: primary dynamic arity 1 default a
      f(b) = b
      weight: bridge static arity 2 default 0
      weight(a, b) = 1

Rows may appear anywhere in the functions section after their function's
declaration. `true` and `false` are implicit.
"""

# Standard library
import logging
import re
from pathlib import Path

# Internal dependencies
from asmbase.constants.keywords import ALGO_SIGIL, BOOLEANS, PRED1_SIGIL, PRED2_SIGIL
from asmbase.core.signature import FunctionSymbol, Kind, Signature, Sort
from asmbase.core.state import State
from asmbase.core.updates import TaggedUpdate, Update
from asmbase.errors import AsmSyntaxError
from asmbase.syntax.terms import Var

logger = logging.getLogger(__name__)

_ATOM = r"[A-Za-z0-9_.\-]+"
_SECTION = re.compile(r"^(primary-carrier|secondary-carrier|functions)\s*:\s*(.*)$")
_DECLARATION = re.compile(
    r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*:\s*(?P<kind>primary|secondary|bridge)\s+"
    r"(?P<mode>static|dynamic)\s+arity\s+(?P<arity>\d+)\s+default\s+(?P<default>" + _ATOM + r")$"
)
_ROW = re.compile(
    r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*(?:\((?P<args>[^()]*)\))?\s*=\s*(?P<value>" + _ATOM + r")$"
)


def _atoms(text: str, line: int) -> list[str]:
    items = [item.strip() for item in text.split(",")] if text.strip() else []
    for item in items:
        if not re.fullmatch(_ATOM, item):
            raise AsmSyntaxError(f"Invalid atom {item!r}", line, 1)
    return items


def parse_state(text: str) -> State:
    """
    Parse the text of a state file.

    Raises:
    - AsmSyntaxError: on lines that fit no section, with their line number
    - ValueError: when the described state is invalid (see State)

    Example:
    >>> s = parse_state("primary-carrier: true, false\\nsecondary-carrier: 0\\n"
    ...                 "functions:\\n  c: primary dynamic arity 0 default true\\n")
    >>> s.value("c")
    'true'
    """
    primary: list[str] | None = None
    secondary: list[str] | None = None
    symbols: dict[str, FunctionSymbol] = {}
    defaults: dict[str, str] = {}
    graphs: dict[str, dict[tuple, str]] = {}
    section = None

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        header = _SECTION.match(line)
        if header:
            section, rest = header.groups()
            if section == "primary-carrier":
                primary = _atoms(rest, number)
            elif section == "secondary-carrier":
                secondary = _atoms(rest, number)
            elif rest:
                raise AsmSyntaxError(f"Unexpected text after 'functions:' {rest!r}", number, 1)
            continue
        if section != "functions":
            raise AsmSyntaxError(f"Line outside any section {line!r}", number, 1)
        declaration = _DECLARATION.match(line)
        if declaration:
            name = declaration["name"]
            if name in symbols:
                raise AsmSyntaxError(f"Function {name!r} declared twice", number, 1)
            symbols[name] = FunctionSymbol(
                name,
                Kind(declaration["kind"]),
                int(declaration["arity"]),
                declaration["mode"] == "dynamic",
            )
            defaults[name] = declaration["default"]
            graphs[name] = {}
            continue
        row = _ROW.match(line)
        if row:
            name = row["name"]
            if name not in symbols:
                raise AsmSyntaxError(f"Row for undeclared function {name!r}", number, 1)
            args = tuple(_atoms(row["args"], number)) if row["args"] is not None else ()
            if args in graphs[name]:
                raise AsmSyntaxError(f"Duplicate row for {name}{args!r}", number, 1)
            graphs[name][args] = row["value"]
            continue
        raise AsmSyntaxError(f"Invalid function line {line!r}", number, 1)

    if primary is None or secondary is None:
        raise AsmSyntaxError("State file needs primary-carrier and secondary-carrier sections")
    signature = Signature(symbols.values())
    logger.debug("parsed state with %d functions", len(symbols))
    return State(signature, primary, secondary, defaults, graphs)


def read_state(path: str | Path) -> State:
    return parse_state(Path(path).read_text())


# Update-set literals, for binding predicate-sort variables

_UPDATE = re.compile(
    r"\s*(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*(?:\((?P<args>[^()]*)\))?\s*:=\s*(?P<value>" + _ATOM + r")"
    r"(?:\s*@\s*(?P<tag>" + _ATOM + r"))?\s*(?:,|$)"
)


def parse_update_set(text: str, state: State, tagged: bool = False) -> frozenset:
    """
    Parse an update-set literal such as `{f(a) := b, c := true}`.

    Tagged literals give each update a primary atom after `@`:
    `{f(a) := b @ true}`.

    Raises:
    - AsmSyntaxError: on malformed text
    - ValueError: on updates that do not fit the state (static or undeclared
      functions, atoms outside the carriers)

    Example:
    >>> s = parse_state("primary-carrier: true, false\\nsecondary-carrier: 0\\n"
    ...                 "functions:\\n  c: primary dynamic arity 0 default false\\n")
    >>> sorted(parse_update_set("{c := true}", s))
    [Update(function='c', argument=(), value='true')]
    """
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise AsmSyntaxError(f"Update-set literal must be enclosed in braces, got {text!r}", 1, 1)
    body = body[1:-1]
    updates = []
    position = 0
    while body[position:].strip():
        match = _UPDATE.match(body, position)
        if match is None:
            raise AsmSyntaxError(f"Invalid update {body[position:].strip()!r}", 1, position + 2)
        position = match.end()
        name = match["name"]
        args = tuple(_atoms(match["args"], 1)) if match["args"] is not None else ()
        if tagged != (match["tag"] is not None):
            expected = "every update needs a tag" if tagged else "updates take no tag"
            raise AsmSyntaxError(f"In {text!r}: {expected}", 1, match.start() + 2)
        if name not in state.signature:
            raise ValueError(f"Update to undeclared function {name!r}")
        symbol = state.signature[name]
        if not symbol.dynamic:
            raise ValueError(f"Update to static function {name!r}")
        if len(args) != symbol.arity:
            raise ValueError(f"Function {name!r} expects {symbol.arity} arguments, got {args!r}")
        for atom in (*args, match["value"]):
            if atom not in state.primary and atom not in state.secondary:
                raise ValueError(f"Atom {atom!r} is in neither carrier")
        if tagged:
            if match["tag"] not in state.primary:
                raise ValueError(f"Tag {match['tag']!r} is not a primary atom")
            updates.append(TaggedUpdate(name, args, match["value"], match["tag"]))
        else:
            updates.append(Update(name, args, match["value"]))
    return frozenset(updates)


def parse_binding(text: str, state: State) -> tuple:
    """
    Parse `NAME=VALUE` into a (variable, value) pair.

    The sigil of NAME picks the sort: none for point variables, `$` for
    algorithmic ones, `@` and `@@` for the predicate sorts, whose values are
    update-set literals.

    Raises:
    - AsmSyntaxError: when there is no `=` or the name is malformed
    - ValueError: when the value does not belong to the variable's sort

    Example:
    >>> s = parse_state("primary-carrier: true, false, a\\nsecondary-carrier: 0\\n"
    ...                 "functions:\\n")
    >>> var, value = parse_binding("x=a", s)
    >>> (var.name, var.sort.value, value)
    ('x', 'point', 'a')
    """
    name, separator, value = text.partition("=")
    name, value = name.strip(), value.strip()
    if not separator:
        raise AsmSyntaxError(f"Binding must look like NAME=VALUE, got {text!r}", 1, 1)
    sigils = ((PRED2_SIGIL, Sort.PRED2), (PRED1_SIGIL, Sort.PRED1), (ALGO_SIGIL, Sort.ALGO))
    sort = next((s for sigil, s in sigils if name.startswith(sigil)), Sort.POINT)
    bare = name[len(next((sigil for sigil, s in sigils if s is sort), "")):]
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", bare):
        raise AsmSyntaxError(f"Invalid variable name {name!r}", 1, 1)
    var = Var(bare, sort)
    if sort.individual:
        if value not in state.carrier(sort):
            raise ValueError(f"{value!r} is not in the {sort.value} carrier")
        return var, value
    return var, parse_update_set(value, state, tagged=sort is Sort.PRED2)


def format_state(state: State) -> str:
    """Canonical text of a state; parse_state(format_state(s)) == s."""
    lines = [
        f"primary-carrier: {', '.join(state.primary)}",
        f"secondary-carrier: {', '.join(state.secondary)}",
        "functions:",
    ]
    for symbol in state.signature:
        if symbol.name in BOOLEANS:
            continue
        mode = "dynamic" if symbol.dynamic else "static"
        lines.append(
            f"  {symbol.name}: {symbol.kind.value} {mode} arity {symbol.arity} "
            f"default {state.default(symbol.name)}"
        )
        rows = sorted(
            state.graph(symbol.name).items(),
            key=lambda item: tuple(state.atom_key(a) for a in item[0]),
        )
        for argument, value in rows:
            target = f"{symbol.name}({', '.join(argument)})" if argument else symbol.name
            lines.append(f"  {target} = {value}")
    return "\n".join(lines) + "\n"
