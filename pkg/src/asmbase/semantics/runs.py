"""
Bounded runs of a machine.

A run starts in an initial state, ends in the first final state it reaches
and never passes through a final state on the way. `run` either explores
every run up to a step bound (`mode="all"`) or follows one seeded random
choice per step (`mode="sample"`).

Key components:
1. RunReport -- terminal states, trace count, materialised traces, stuck
   states and whether the step bound cut exploration short
2. run -- exhaustive or sampled exploration
3. sorted_states -- canonical order used for reports and sampling
"""

# Standard library
import logging
from collections import Counter, deque
from dataclasses import dataclass, field

# Third-party dependencies
import numpy as np

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.constants.limits import DEFAULT_MAX_STEPS
from asmbase.core.state import State
from asmbase.semantics.evaluation import eval_guard
from asmbase.semantics.families import successors
from asmbase.syntax.rules import Machine

logger = logging.getLogger(__name__)

MODES = ("all", "sample")


def state_key(s: State) -> tuple:
    """Canonical sort key: dynamic function values in carrier order."""
    return tuple(tuple(s.atom_key(a) for a in row) for row in s.dynamic_extension)


def sorted_states(states) -> list[State]:
    return sorted(states, key=state_key)


@dataclass(frozen=True)
class RunReport:
    """
    Outcome of `run`.

    Parameters:
    - mode (str): "all" or "sample"
    - terminal (tuple[State, ...]): distinct final states reached, canonical order
    - trace_count (int): number of runs found (sample mode: 0 or 1)
    - traces (tuple): up to max_traces runs, each a tuple of states; a sampled
      run that did not reach a final state keeps its partial trace
    - stuck (tuple[State, ...]): non-final states without a successor
    - non_terminating (bool): some exploration was still going at max_steps
    - seed (int | None): seed of a sampled run
    """

    mode: str
    terminal: tuple = ()
    trace_count: int = 0
    traces: tuple = ()
    stuck: tuple = ()
    non_terminating: bool = False
    seed: int | None = None
    steps: int = field(default=0)


class _Explorer:
    def __init__(self, machine: Machine, limits: Limits) -> None:
        self.machine = machine
        self.limits = limits
        self._successors: dict[State, list[State]] = {}
        self._final: dict[State, bool] = {}

    def is_final(self, s: State) -> bool:
        if s not in self._final:
            self._final[s] = eval_guard(self.machine.final, s)
        return self._final[s]

    def successors(self, s: State) -> list[State]:
        if s not in self._successors:
            self._successors[s] = sorted_states(successors(self.machine.main, s, self.limits))
        return self._successors[s]


def run(
    machine: Machine,
    s0: State,
    max_steps: int = DEFAULT_MAX_STEPS,
    mode: str = "all",
    seed: int | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> RunReport:
    """
    Explore the runs of a machine from an initial state.

    Parameters:
    - machine (Machine): closed main rule with initial and final predicates
    - s0 (State): must satisfy the initial predicate
    - max_steps (int): longest run explored
    - mode (str): "all" for exhaustive exploration, "sample" for one seeded run
    - seed (int | None): seed of the sample stream
    - limits (Limits): caps for delta and the number of materialised traces

    Raises:
    - ValueError: if s0 is not an initial state or the mode is unknown
    - ResourceLimit: from delta

    Example:
    >>> from asmbase.parser import parse_machine, parse_state
    >>> s = parse_state("primary-carrier: true, false\\nsecondary-carrier: 0\\n"
    ...                 "functions:\\n  c: primary dynamic arity 0 default false\\n")
    >>> m = parse_machine("rule main = c := true ; final: c = true ;", s.signature)
    >>> run(m, s).trace_count
    1
    """
    if mode not in MODES:
        raise ValueError(f"Unknown run mode {mode!r}, expected one of {MODES}")
    if max_steps < 0:
        raise ValueError(f"max_steps must be non-negative, got {max_steps}")
    if not eval_guard(machine.initial, s0):
        raise ValueError("The start state does not satisfy the machine's initial predicate")
    explorer = _Explorer(machine, limits)
    if mode == "sample":
        return _sample(explorer, s0, max_steps, seed)
    return _explore(explorer, s0, max_steps)


def _explore(explorer: _Explorer, s0: State, max_steps: int) -> RunReport:
    # Level by level over distinct states, counting the runs that reach each.
    frontier = Counter({s0: 1})
    terminal: set[State] = set()
    stuck: set[State] = set()
    trace_count = 0
    steps = 0
    while frontier:
        following: Counter = Counter()
        for s, count in frontier.items():
            if explorer.is_final(s):
                terminal.add(s)
                trace_count += count
                continue
            if steps == max_steps:
                following[s] += count
                continue
            nexts = explorer.successors(s)
            if not nexts:
                stuck.add(s)
            for t in nexts:
                following[t] += count
        if steps == max_steps:
            frontier = following
            break
        frontier = following
        steps += 1
        logger.debug("step %d: %d distinct states in the frontier", steps, len(frontier))
    non_terminating = bool(frontier)
    traces = _materialise(explorer, s0, max_steps)
    logger.info(
        "explored %d steps: %d terminal states, %d runs, %d stuck",
        steps,
        len(terminal),
        trace_count,
        len(stuck),
    )
    return RunReport(
        mode="all",
        terminal=tuple(sorted_states(terminal)),
        trace_count=trace_count,
        traces=traces,
        stuck=tuple(sorted_states(stuck)),
        non_terminating=non_terminating,
        steps=steps,
    )


def _distances_to_final(explorer: _Explorer) -> dict[State, int]:
    """Fewest steps from each explored state to a final state; unreachable states are absent."""
    predecessors: dict[State, list[State]] = {}
    for s, nexts in explorer._successors.items():
        for t in nexts:
            predecessors.setdefault(t, []).append(s)
    queue = deque(s for s, final in explorer._final.items() if final)
    distance = {s: 0 for s in queue}
    while queue:
        t = queue.popleft()
        for s in predecessors.get(t, ()):
            if s not in distance and not explorer.is_final(s):
                distance[s] = distance[t] + 1
                queue.append(s)
    return distance


def _materialise(explorer: _Explorer, s0: State, max_steps: int) -> tuple:
    """
    Depth-first listing of complete runs, in canonical order, up to max_traces.

    Only states that still reach a final state within the remaining step
    budget are entered, so every branch taken ends in a listed run.
    """
    found: list[tuple] = []
    cap = explorer.limits.max_traces
    distance = _distances_to_final(explorer)
    if distance.get(s0, max_steps + 1) > max_steps:
        return ()
    stack = [(s0,)]
    while stack and len(found) < cap:
        trace = stack.pop()
        last = trace[-1]
        if explorer.is_final(last):
            found.append(trace)
            continue
        budget = max_steps - len(trace)
        for t in reversed(explorer.successors(last)):
            if distance.get(t, budget + 1) <= budget:
                stack.append(trace + (t,))
    return tuple(found)


def _sample(explorer: _Explorer, s0: State, max_steps: int, seed: int | None) -> RunReport:
    rng = np.random.default_rng(seed)
    trace = [s0]
    while not explorer.is_final(trace[-1]):
        if len(trace) - 1 == max_steps:
            return RunReport(mode="sample", traces=(tuple(trace),), non_terminating=True, seed=seed, steps=max_steps)
        nexts = explorer.successors(trace[-1])
        if not nexts:
            logger.info("sampled run stuck after %d steps", len(trace) - 1)
            return RunReport(mode="sample", traces=(tuple(trace),), stuck=(trace[-1],), seed=seed, steps=len(trace) - 1)
        trace.append(nexts[int(rng.integers(len(nexts)))])
    return RunReport(
        mode="sample",
        terminal=(trace[-1],),
        trace_count=1,
        traces=(tuple(trace),),
        seed=seed,
        steps=len(trace) - 1,
    )
