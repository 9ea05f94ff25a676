"""Shared test machinery: reachability enumeration with contract audits."""

from __future__ import annotations

from collections import deque

from flashcodes.core import CANNOT_ABSORB, ERASE, ascent_check, flip, initial_state, weight
from flashcodes import blocks
from flashcodes.blocks import Dedication


def enumerate_reachable(code, *, check=True, max_states=None):
    """BFS over all states reachable from zeros via successful writes.

    With ``check`` every transition is audited: levels only rise, the
    decoded vector flips exactly the written bit, unit-increment codes add
    exactly one level, and writes are deterministic.  Returns the state
    set and the number of successful transitions.
    """
    k = code.params.k
    zeros = initial_state(code.params)
    if check:
        assert code.decode(zeros) == (0,) * k
    seen = {zeros}
    queue = deque([zeros])
    transitions = 0
    while queue:
        state = queue.popleft()
        decoded = code.decode(state) if check else None
        for bit in range(k):
            out = code.write(state, bit)
            if check:
                assert code.write(state, bit) == out, "write is not deterministic"
            if out is ERASE:
                continue
            transitions += 1
            if check:
                assert ascent_check(state, out), (state, bit, out)
                if code.unit_increment:
                    assert weight(out) - weight(state) == 1, (state, bit, out)
                assert code.decode(out) == flip(decoded, bit), (state, bit, out)
            if out not in seen:
                seen.add(out)
                if max_states is not None and len(seen) > max_states:
                    raise AssertionError(f"more than {max_states} reachable states")
                queue.append(out)
    return seen, transitions


def enumerate_block_states(i, q, *, check=True):
    """BFS over standalone block states under every successful block write.

    Tracks the half each state was first committed to as ground truth and
    returns ``{levels: dedication}``.  With ``check`` each transition is
    audited for the block-level contract: unit weight increase, decoded
    contribution flips exactly the written bit, and classification agrees
    with the recorded commitment on every non-empty, non-full state.
    """
    cells = 1 << i
    bits = 1 << i
    half = bits // 2
    zeros = (0,) * cells
    truth = {zeros: Dedication.UNSET}
    queue = deque([zeros])
    while queue:
        levels = queue.popleft()
        ded = truth[levels]
        decoded = blocks.ci_decode(levels, i, q) if check else None
        for bit in range(bits):
            out = blocks.ci_write(levels, i, bit, q)
            if out is CANNOT_ABSORB:
                continue
            new_ded = ded
            if new_ded is Dedication.UNSET:
                new_ded = Dedication.LOWER if bit < half else Dedication.UPPER
            if check:
                assert weight(out) - weight(levels) == 1, (levels, bit, out)
                assert blocks.ci_decode(out, i, q) == flip(decoded, bit), (
                    levels,
                    bit,
                    out,
                )
                st = blocks.status(out, q)
                if st is blocks.BlockStatus.ACTIVE:
                    assert blocks.classify(out, i, q) is new_ded, (levels, bit, out)
            if out not in truth:
                truth[out] = new_ded
                queue.append(out)
            elif check and truth[out] is not new_ded:
                raise AssertionError(
                    f"state {out} reachable under both dedications"
                )
    return truth


def naive_guarantee(code, limit=64):
    """Largest t such that every length-t walk from zeros succeeds.

    Plain depth-first walk enumeration without memoization; usable only
    on tiny instances.
    """
    k = code.params.k

    def all_valid(state, depth):
        if depth == 0:
            return True
        for bit in range(k):
            out = code.write(state, bit)
            if out is ERASE or not all_valid(out, depth - 1):
                return False
        return True

    zeros = initial_state(code.params)
    t = 0
    while t < limit and all_valid(zeros, t + 1):
        t += 1
    return t
