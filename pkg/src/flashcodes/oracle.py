"""Ground truth for write guarantees.

``exact_guarantee`` plays the adversary exactly: the guaranteed write
count of a code is the largest t such that every sequence of t single-bit
flips from the all-zero state succeeds.  Equivalently it is the game value
f(zeros) of

    f(s) = min over bits b of (0 if write(s, b) erases else 1 + f(s')),

computed over every reachable cell state with memoization; purity of the
code makes the memo sound.  Every transition the search expands is audited
against the code contract (levels only rise, the decoded vector flips
exactly the written bit, unit-increment codes raise exactly one level, and
any configured monitors stay within their limits); audit failures abort
with a diagnostic.

``random_walk`` drives a code along seeded random bit sequences with the
same audits, for sizes the exhaustive game cannot reach.  Walk findings
are data, never exceptions.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (
    ERASE,
    CellState,
    FlashCode,
    MonitorSpec,
    ascent_check,
    flip,
    initial_state,
    weight,
)


class OracleError(Exception):
    """Base class for verification failures."""


class ContractViolation(OracleError):
    """A code broke its contract on a concrete transition."""

    def __init__(self, kind: str, state: CellState, bit: int | None, detail: str):
        self.kind = kind
        self.state = state
        self.bit = bit
        super().__init__(f"{kind} at state {state}, bit {bit}: {detail}")


class SearchBudgetExceeded(OracleError):
    """The reachable state space outgrew the configured memo cap."""


@dataclass(frozen=True)
class GameResult:
    """Exact guarantee plus evidence.

    ``witness`` holds t_star + 1 bit indices: replaying it performs t_star
    successful writes and then hits an erase.  ``max_frontier`` is the
    deepest chain of successful writes the search examined.
    """

    t_star: int
    witness: tuple[int, ...]
    states_explored: int
    max_frontier: int


@dataclass(frozen=True)
class Violation:
    step: int
    kind: str
    state: CellState
    bit: int


@dataclass
class WalkReport:
    """Outcome of one seeded random walk."""

    seed: int
    steps_requested: int
    steps_taken: int = 0
    writes_until_erase: int | None = None
    erase_count: int = 0
    violations: list[Violation] = field(default_factory=list)
    monitor_maxima: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def _audit_transition(
    code: FlashCode,
    state: CellState,
    decoded: tuple[int, ...],
    bit: int,
    child: CellState,
    monitors: Sequence[MonitorSpec],
) -> tuple[int, ...]:
    """Check one successful transition; returns the child's decoding."""
    if not ascent_check(state, child):
        raise ContractViolation("ascent", state, bit, f"reached {child}")
    if code.unit_increment and weight(child) - weight(state) != 1:
        raise ContractViolation(
            "unit-increment", state, bit, f"weight jumped to {weight(child)}"
        )
    decoded_child = code.decode(child)
    if decoded_child != flip(decoded, bit):
        raise ContractViolation(
            "decode-flip",
            state,
            bit,
            f"decoded {decoded} -> {decoded_child}",
        )
    for name, fn, limit in monitors:
        value = fn(child)
        if value > limit:
            raise ContractViolation(
                f"monitor:{name}", child, bit, f"value {value} exceeds {limit}"
            )
    return decoded_child


class _Frame:
    __slots__ = ("state", "decoded", "values", "bit", "pending")

    def __init__(self, state: CellState, decoded: tuple[int, ...] | None):
        self.state = state
        self.decoded = decoded
        self.values: list[int] = []
        self.bit = 0
        self.pending: CellState | None = None


def _solve_from(
    code: FlashCode,
    root: CellState,
    memo: dict[CellState, int],
    max_states: int,
    monitors: Sequence[MonitorSpec],
    audit: bool,
) -> tuple[int, int]:
    """Game value of ``root``; returns (value, max stack depth seen)."""
    k = code.params.k
    cached = memo.get(root)
    if cached is not None:
        return cached, 0
    stack = [_Frame(root, code.decode(root) if audit else None)]
    max_depth = 1
    while stack:
        fr = stack[-1]
        if fr.pending is not None:
            fr.values.append(1 + memo[fr.pending])
            fr.pending = None
        suspended = False
        while fr.bit < k:
            b = fr.bit
            fr.bit += 1
            child = code.write(fr.state, b)
            if child is ERASE:
                fr.values.append(0)
                continue
            decoded_child = (
                _audit_transition(code, fr.state, fr.decoded, b, child, monitors)
                if audit
                else None
            )
            hit = memo.get(child)
            if hit is not None:
                fr.values.append(1 + hit)
                continue
            if len(memo) + len(stack) >= max_states:
                raise SearchBudgetExceeded(
                    f"more than {max_states} states; raise max_states to continue"
                )
            fr.pending = child
            stack.append(_Frame(child, decoded_child))
            max_depth = max(max_depth, len(stack))
            suspended = True
            break
        if not suspended and fr.bit >= k and fr.pending is None:
            memo[fr.state] = min(fr.values)
            stack.pop()
    return memo[root], max_depth


def exact_guarantee(
    code: FlashCode,
    *,
    max_states: int = 10**8,
    monitors: Iterable[MonitorSpec] | None = None,
    audit: bool = True,
    threads: int = 1,
) -> GameResult:
    """Exact guaranteed write count of ``code`` with an adversarial witness.

    ``monitors`` defaults to the code's own; pass ``()`` to disable.
    ``threads`` > 1 fans the top-level subtrees out to worker threads
    sharing the memo table; results are identical either way because the
    memoized function is pure.
    """
    params = code.params
    k = params.k
    zeros = initial_state(params)
    specs: tuple[MonitorSpec, ...] = (
        tuple(monitors) if monitors is not None else tuple(code.monitors())
    )
    if audit:
        decoded_zero = code.decode(zeros)
        if decoded_zero != (0,) * k:
            raise ContractViolation(
                "decode-zeros", zeros, None, f"decoded {decoded_zero}"
            )
        for name, fn, limit in specs:
            value = fn(zeros)
            if value > limit:
                raise ContractViolation(
                    f"monitor:{name}", zeros, None, f"value {value} exceeds {limit}"
                )
    memo: dict[CellState, int] = {}
    if threads > 1:
        roots = []
        for b in range(k):
            child = code.write(zeros, b)
            if child is not ERASE:
                roots.append(child)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_solve_from, code, r, memo, max_states, specs, audit)
                for r in roots
            ]
            for fut in futures:
                fut.result()
    _, max_depth = _solve_from(code, zeros, memo, max_states, specs, audit)
    witness = _extract_witness(code, zeros, memo)
    return GameResult(
        t_star=memo[zeros],
        witness=witness,
        states_explored=len(memo),
        max_frontier=max_depth,
    )


def _extract_witness(
    code: FlashCode, zeros: CellState, memo: dict[CellState, int]
) -> tuple[int, ...]:
    """Adversarial write sequence: t_star successes, then an erase.

    Ties between equally bad bits break toward the lowest index so the
    witness is reproducible.
    """
    k = code.params.k
    witness: list[int] = []
    state = zeros
    while True:
        best_bit = None
        best_value = None
        best_child = None
        for b in range(k):
            child = code.write(state, b)
            value = 0 if child is ERASE else 1 + memo[child]
            if best_value is None or value < best_value:
                best_bit, best_value, best_child = b, value, child
        witness.append(best_bit)
        if best_child is ERASE:
            return tuple(witness)
        state = best_child


def replay_witness(code: FlashCode, witness: Sequence[int]) -> int:
    """Number of successful writes before the witness hits an erase.

    Raises if the witness never erases or erases before its last entry.
    """
    state = initial_state(code.params)
    for i, bit in enumerate(witness):
        out = code.write(state, bit)
        if out is ERASE:
            if i != len(witness) - 1:
                raise OracleError(f"witness erased early at write {i + 1}")
            return i
        state = out
    raise OracleError("witness replay ended without an erase")


def random_walk(
    code: FlashCode,
    steps: int,
    seed: int,
    monitors: Iterable[MonitorSpec] | None = None,
    *,
    restart: bool = False,
) -> WalkReport:
    """Drive ``code`` along a seeded uniform random bit sequence.

    Stops at the first erase unless ``restart`` is set, in which case the
    walk resumes from the all-zero state until the step budget is spent.
    Audit findings are collected, not raised.
    """
    params = code.params
    k = params.k
    rng = random.Random(seed)
    specs: tuple[MonitorSpec, ...] = (
        tuple(monitors) if monitors is not None else tuple(code.monitors())
    )
    report = WalkReport(seed=seed, steps_requested=steps)
    report.monitor_maxima = {name: 0 for name, _, _ in specs}
    state = initial_state(params)
    decoded = code.decode(state)
    if decoded != (0,) * k:
        report.violations.append(Violation(0, "decode-zeros", state, -1))
    run_length = 0
    for step in range(1, steps + 1):
        bit = rng.randrange(k)
        out = code.write(state, bit)
        report.steps_taken = step
        if out is ERASE:
            report.erase_count += 1
            if report.writes_until_erase is None:
                report.writes_until_erase = run_length
            if not restart:
                break
            state = initial_state(params)
            decoded = code.decode(state)
            run_length = 0
            continue
        if not ascent_check(state, out):
            report.violations.append(Violation(step, "ascent", state, bit))
        if code.unit_increment and weight(out) - weight(state) != 1:
            report.violations.append(Violation(step, "unit-increment", state, bit))
        new_decoded = code.decode(out)
        if new_decoded != flip(decoded, bit):
            report.violations.append(Violation(step, "decode-flip", state, bit))
        for name, fn, limit in specs:
            value = fn(out)
            if value > report.monitor_maxima[name]:
                report.monitor_maxima[name] = value
            if value > limit:
                report.violations.append(Violation(step, f"monitor:{name}", out, bit))
        state = out
        decoded = new_decoded
        run_length += 1
    return report
