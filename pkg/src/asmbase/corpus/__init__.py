"""
Bundled machines, states, formulas and derivations.

The files ship inside the package and are found through
importlib.resources, so they work from a source checkout and from an
installed wheel alike.

Key components:
1. available -- names of the bundled files, optionally by kind
2. read_text -- contents of one file
3. path -- filesystem path of one file, for commands that resolve
   neighbouring files (derivation headers and certificates)

Notes:
- Kinds follow the suffixes in asmbase.constants.keywords.FILE_SUFFIXES:
  machine (.asmr), state (.asms), formula (.asml), derivation (.asmd).
"""

# Standard library
import importlib.resources
from pathlib import Path

# Internal dependencies
from asmbase.constants.keywords import FILE_SUFFIXES


def _root():
    return importlib.resources.files("asmbase.corpus")


def available(kind: str | None = None) -> list[str]:
    """
    Sorted names of the bundled files.

    Parameters:
    - kind (str | None): "machine", "state", "formula" or "derivation";
      None lists every kind

    Raises:
    - ValueError: for an unknown kind

    Example:
    >>> "kruskal.asmr" in available("machine")
    True
    """
    if kind is None:
        suffixes = tuple(FILE_SUFFIXES.values())
    elif kind in FILE_SUFFIXES:
        suffixes = (FILE_SUFFIXES[kind],)
    else:
        raise ValueError(f"Unknown corpus kind {kind!r}, expected one of {sorted(FILE_SUFFIXES)}")
    return sorted(entry.name for entry in _root().iterdir() if entry.name.endswith(suffixes))


def _entry(name: str):
    entry = _root().joinpath(name)
    if name not in available() or not entry.is_file():
        raise FileNotFoundError(f"No bundled file named {name!r}")
    return entry


def read_text(name: str) -> str:
    return _entry(name).read_text(encoding="utf-8")


def path(name: str) -> Path:
    # The package is installed unzipped, so the resource is a real file.
    return Path(str(_entry(name)))


def main():
    for kind in FILE_SUFFIXES:
        print(kind, available(kind))
    print(read_text("skip.asmr"))


if __name__ == "__main__":
    main()
