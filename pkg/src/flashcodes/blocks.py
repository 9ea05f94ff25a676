"""Power-of-two cell blocks that serve half of their bit range at a time.

A block of 2**i cells (i >= 1) absorbs single-bit writes for a group of
2**i bits.  Two-cell blocks hold both of their bits directly; larger
blocks split into two sub-blocks of 2**(i-1) cells, commit to either the
lower or the upper half of the group on first use, and keep that
commitment readable from the cell levels alone.  Blocks never demand
erasure: a write they cannot place returns :data:`CANNOT_ABSORB` and the
containing code tries another block.

All rules here assume odd q.  Containers support even q by running these
blocks over virtual cells built from physical cell pairs.
"""

from __future__ import annotations

from enum import Enum

from .core import CANNOT_ABSORB, CellState, VariableVector

Levels = tuple[int, ...]


class BlockStatus(Enum):
    EMPTY = "empty"
    ACTIVE = "active"
    FULL = "full"


class Dedication(Enum):
    """Which half of its bit group a block currently serves."""

    UNSET = "unset"  # empty block, not committed yet
    LOWER = "lower"
    UPPER = "upper"
    SPENT = "spent"  # full block, contributes nothing


def status(levels: Levels, q: int) -> BlockStatus:
    if all(v == 0 for v in levels):
        return BlockStatus.EMPTY
    if all(v == q - 1 for v in levels):
        return BlockStatus.FULL
    return BlockStatus.ACTIVE


def c1_write(levels: Levels, bit: int, q: int) -> Levels | object:
    """Write ``bit`` into a two-cell block.

    The first q-1 writes raise the bit's own cell (first bit -> first
    cell).  From the q-th write on, the targeting crosses over: a block of
    the form (q-1, x) only accepts the first bit and raises the second
    cell, (x, q-1) only accepts the second bit and raises the first cell,
    and when both cells are below q-1 each bit raises the other cell.
    The write count is recovered from the state as its weight, since every
    absorbed write adds exactly one level.
    """
    if bit not in (0, 1):
        raise ValueError(f"bit index {bit} out of range [0, 2)")
    x1, x2 = levels
    full = q - 1
    if x1 == full and x2 == full:
        return CANNOT_ABSORB
    if x1 + x2 <= q - 2:  # at most the (q-1)-th write into this block
        return (x1 + 1, x2) if bit == 0 else (x1, x2 + 1)
    if x1 == full:
        return (x1, x2 + 1) if bit == 0 else CANNOT_ABSORB
    if x2 == full:
        return (x1 + 1, x2) if bit == 1 else CANNOT_ABSORB
    return (x1, x2 + 1) if bit == 0 else (x1 + 1, x2)


def c1_decode(levels: Levels, q: int) -> VariableVector:
    """Bit pair of a two-cell block; the cell roles swap past weight q-1."""
    x1, x2 = levels
    if x1 + x2 <= q - 1:
        return (x1 % 2, x2 % 2)
    return (x2 % 2, x1 % 2)


def c1_writable_bits(levels: Levels, q: int) -> tuple[int, ...]:
    """Bits a two-cell block can still absorb."""
    return tuple(b for b in (0, 1) if c1_write(levels, b, q) is not CANNOT_ABSORB)


def classify(levels: Levels, i: int, q: int) -> Dedication:
    """Recover a block's half-commitment from its levels.

    Only encoder-reachable states classify meaningfully; anything else gets
    a deterministic but unspecified answer.
    """
    if i < 2:
        raise ValueError("classification applies to blocks of four or more cells")
    st = status(levels, q)
    if st is BlockStatus.EMPTY:
        return Dedication.UNSET
    if st is BlockStatus.FULL:
        return Dedication.SPENT
    half = len(levels) // 2
    left, right = levels[:half], levels[half:]
    ls, rs = status(left, q), status(right, q)
    if rs is BlockStatus.EMPTY:
        return Dedication.LOWER
    if ls is BlockStatus.EMPTY:
        return Dedication.UPPER
    if i >= 3:
        # Strict sequencing: the far sub-block opens only once the near one
        # is full, so exactly one of the two can be active.
        if ls is BlockStatus.FULL:
            return Dedication.LOWER
        if rs is BlockStatus.FULL:
            return Dedication.UPPER
        return Dedication.LOWER  # both active: unreachable, resolved low
    if ls is BlockStatus.FULL:
        return Dedication.LOWER
    if rs is BlockStatus.FULL:
        return Dedication.UPPER
    # Both columns active.  A column that still accepts both bits can only
    # be the later column of its block's writing order.
    lw = c1_writable_bits(left, q)
    rw = c1_writable_bits(right, q)
    if len(rw) == 2:
        return Dedication.LOWER
    if len(lw) == 2:
        return Dedication.UPPER
    # Both columns stuck on a single bit.  An upper block feeds its far
    # column through swapped pair order, leaving both columns stuck in the
    # same cell form; a lower block always ends up mixed.
    return Dedication.UPPER if lw == rw else Dedication.LOWER


def ci_write(levels: Levels, i: int, bit: int, q: int) -> Levels | object:
    """Write ``bit`` (in [0, 2**i)) into a block of 2**i cells."""
    if i == 1:
        return c1_write(levels, bit, q)
    half_bits = 1 << (i - 1)
    if not 0 <= bit < 2 * half_bits:
        raise ValueError(f"bit index {bit} out of range [0, {2 * half_bits})")
    ded = classify(levels, i, q)
    if ded is Dedication.SPENT:
        return CANNOT_ABSORB
    want = Dedication.LOWER if bit < half_bits else Dedication.UPPER
    if ded is not Dedication.UNSET and ded is not want:
        return CANNOT_ABSORB
    j = bit if want is Dedication.LOWER else bit - half_bits
    half = len(levels) // 2
    left, right = levels[:half], levels[half:]
    if want is Dedication.LOWER:
        first = (0, left, j)
        second = (half, right, j)
    else:
        # Far (left) column of a four-cell block swaps its pair order.
        second_bit = (1 - j) if i == 2 else j
        first = (half, right, j)
        second = (0, left, second_bit)

    off, sub, local = first
    out = ci_write(sub, i - 1, local, q)
    if out is not CANNOT_ABSORB:
        return levels[:off] + out + levels[off + half:]
    if i >= 3 and status(sub, q) is not BlockStatus.FULL:
        return CANNOT_ABSORB  # the far sub-block waits for a full near one
    off2, sub2, local2 = second
    out2 = ci_write(sub2, i - 1, local2, q)
    if out2 is CANNOT_ABSORB:
        return CANNOT_ABSORB
    if (
        i == 2
        and status(out2, q) is BlockStatus.FULL
        and status(sub, q) is not BlockStatus.FULL
    ):
        return CANNOT_ABSORB  # the far column may not fill up first
    return levels[:off2] + out2 + levels[off2 + half:]


def ci_decode(levels: Levels, i: int, q: int) -> VariableVector:
    """Block's contribution to its 2**i bits: zeros outside the served half,
    XOR of the two sub-blocks inside it."""
    if i == 1:
        return c1_decode(levels, q)
    k = 1 << i
    ded = classify(levels, i, q)
    if ded in (Dedication.UNSET, Dedication.SPENT):
        return (0,) * k
    half = len(levels) // 2
    a = ci_decode(levels[:half], i - 1, q)
    b = ci_decode(levels[half:], i - 1, q)
    if ded is Dedication.UPPER and i == 2:
        a = (a[1], a[0])  # undo the far-column swap
    local = tuple(x ^ y for x, y in zip(a, b))
    zeros = (0,) * (k // 2)
    return local + zeros if ded is Dedication.LOWER else zeros + local
