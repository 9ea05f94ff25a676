"""Box code built from a row of power-of-two blocks.

k = 2**D bits live in a 2 x ... x 2 x n_last box, viewed as n_last blocks
of 2**(D-1) cells.  The lower half of the bits fills blocks left to right
and the upper half right to left, with upper bits relabeled into the
block-local range.  At least one block always stays untouched between the
two growth fronts, so decoding can split the row into a lower prefix and
an upper suffix by inspection; each bit is the XOR of its value over all
blocks.  A write that would consume the last untouched block returns
:data:`ERASE` instead.

Even q is supported by pairing physical cells: two q-level cells emulate
one cell with 2q-1 levels (fill the first, then the second), and the odd
code runs unchanged on the emulated cells.
"""

from __future__ import annotations

from .core import (
    CANNOT_ABSORB,
    ERASE,
    CellState,
    FlashCode,
    MonitorSpec,
    Params,
    VariableVector,
    WriteOutcome,
)
from . import blocks
from .blocks import BlockStatus


def active_block_budget(i: int) -> int:
    """Most blocks of order i that can be active at once for one bit group."""
    return 2 if i <= 1 else 3 * 2 ** (i - 1)


def _frontiers(row: list[tuple[int, ...]]) -> tuple[int, int]:
    """(L, U): last index of the non-empty prefix, first of the suffix."""
    m = len(row)
    low = -1
    while low + 1 < m and any(row[low + 1]):
        low += 1
    up = m
    while up > 0 and any(row[up - 1]):
        up -= 1
    return low, up


class EnhancedCode(FlashCode):
    """k = 2**D bits in n_last blocks of 2**(D-1) cells, odd q."""

    name = "enhanced"
    unit_increment = True

    def __init__(self, k: int, n_last: int, q: int) -> None:
        d = k.bit_length() - 1
        if k < 4 or 1 << d != k:
            raise ValueError(f"k must be a power of two >= 4, got {k}")
        if n_last < 3:
            raise ValueError(f"need at least three blocks, got n_last={n_last}")
        if q < 3 or q % 2 == 0:
            raise ValueError(f"direct construction needs odd q >= 3, got {q}")
        self.order = d - 1  # block order: 2**order cells per block
        self.block_cells = 1 << self.order
        self.n_last = n_last
        self.params = Params(q=q, k=k, dims=(2,) * self.order + (n_last,))

    def _row(self, state: CellState) -> list[tuple[int, ...]]:
        bc = self.block_cells
        return [state[b * bc : (b + 1) * bc] for b in range(self.n_last)]

    def decode(self, state: CellState) -> VariableVector:
        q = self.params.q
        half = self.params.k // 2
        row = self._row(state)
        low, up = _frontiers(row)
        bits = [0] * self.params.k
        for b in range(low + 1):
            for j, v in enumerate(blocks.ci_decode(row[b], self.order, q)):
                bits[j] ^= v
        for b in range(up, self.n_last):
            for j, v in enumerate(blocks.ci_decode(row[b], self.order, q)):
                bits[half + j] ^= v
        return tuple(bits)

    def write(self, state: CellState, bit: int) -> WriteOutcome:
        k = self.params.k
        if not 0 <= bit < k:
            raise ValueError(f"bit index {bit} out of range [0, {k})")
        q = self.params.q
        half = k // 2
        row = self._row(state)
        low, up = _frontiers(row)
        lower = bit < half
        j = bit if lower else bit - half
        candidates = range(low + 1) if lower else range(self.n_last - 1, up - 1, -1)
        for b in candidates:
            out = blocks.ci_write(row[b], self.order, j, q)
            if out is not CANNOT_ABSORB:
                return self._splice(state, b, out)
        # All opened blocks refuse; open the next one if a separator remains.
        if up - low < 3:
            return ERASE
        b = low + 1 if lower else up - 1
        out = blocks.ci_write(row[b], self.order, j, q)
        assert out is not CANNOT_ABSORB, "empty block refused a write"
        return self._splice(state, b, out)

    def _splice(self, state: CellState, b: int, levels: tuple[int, ...]) -> CellState:
        bc = self.block_cells
        return state[: b * bc] + levels + state[(b + 1) * bc :]

    def count_active_blocks(self, state: CellState) -> int:
        q = self.params.q
        return sum(
            1 for blk in self._row(state) if blocks.status(blk, q) is BlockStatus.ACTIVE
        )

    def count_active_per_half(self, state: CellState) -> tuple[int, int]:
        q = self.params.q
        row = self._row(state)
        low, up = _frontiers(row)
        lo = sum(
            1
            for b in range(low + 1)
            if blocks.status(row[b], q) is BlockStatus.ACTIVE
        )
        hi = sum(
            1
            for b in range(up, self.n_last)
            if blocks.status(row[b], q) is BlockStatus.ACTIVE
        )
        return lo, hi

    def monitors(self) -> tuple[MonitorSpec, ...]:
        per_half = active_block_budget(self.order)
        return (
            ("active-blocks", self.count_active_blocks, 2 * per_half),
            ("active-blocks-lower", lambda s: self.count_active_per_half(s)[0], per_half),
            ("active-blocks-upper", lambda s: self.count_active_per_half(s)[1], per_half),
        )

    def guarantee_floor(self) -> int:
        # Budgeted loss in the active blocks of both halves plus one wholly
        # unused separator block.
        from .bounds import enhanced_conservative_deficiency

        q = self.params.q
        return self.params.n * (q - 1) - enhanced_conservative_deficiency(
            self.params.k, q
        )

    def reported_floor(self) -> int:
        # The sharper budget that charges only the active-block loss plus a
        # single level; measured gaps against it are reported, not asserted.
        from .bounds import thm3_deficiency

        q = self.params.q
        return self.params.n * (q - 1) - thm3_deficiency(self.params.k, q)


def pair_level(pair: tuple[int, int]) -> int:
    """Level of the virtual cell built from a physical pair."""
    return pair[0] + pair[1]


def raise_pair(pair: tuple[int, int], q: int) -> tuple[int, int]:
    """One-step increment of a physical pair: fill the first cell, then the
    second."""
    a, b = pair
    if a < q - 1:
        return (a + 1, b)
    if b < q - 1:
        return (a, b + 1)
    raise ValueError(f"pair {pair} already full for q={q}")


class VirtualizedCode(FlashCode):
    """Adapter running an odd-q code over pairs of physical even-q cells."""

    def __init__(self, inner: FlashCode, q: int) -> None:
        if q < 2 or q % 2:
            raise ValueError(f"virtualization targets even q, got {q}")
        if inner.params.q != 2 * q - 1:
            raise ValueError(
                f"inner code must use {2 * q - 1} levels for physical q={q}, "
                f"got {inner.params.q}"
            )
        if not inner.unit_increment:
            raise ValueError("virtualization needs a unit-increment inner code")
        self.inner = inner
        self.name = inner.name
        self.unit_increment = True
        self.params = Params(q=q, k=inner.params.k, dims=(2,) + inner.params.dims)

    def _virtual(self, state: CellState) -> CellState:
        return tuple(state[2 * m] + state[2 * m + 1] for m in range(len(state) // 2))

    def decode(self, state: CellState) -> VariableVector:
        return self.inner.decode(self._virtual(state))

    def write(self, state: CellState, bit: int) -> WriteOutcome:
        virt = self._virtual(state)
        out = self.inner.write(virt, bit)
        if out is ERASE:
            return ERASE
        diff = [m for m, (a, b) in enumerate(zip(virt, out)) if a != b]
        assert len(diff) == 1 and out[diff[0]] == virt[diff[0]] + 1
        m = diff[0]
        pair = raise_pair((state[2 * m], state[2 * m + 1]), self.params.q)
        return state[: 2 * m] + pair + state[2 * m + 2 :]

    def monitors(self) -> tuple[MonitorSpec, ...]:
        return tuple(
            (name, lambda s, fn=fn: fn(self._virtual(s)), limit)
            for name, fn, limit in self.inner.monitors()
        )

    def guarantee_floor(self) -> int | None:
        return self.inner.guarantee_floor()

    def reported_floor(self) -> int:
        return self.inner.reported_floor()  # type: ignore[attr-defined]


def make_enhanced(k: int, n_last: int, q: int) -> FlashCode:
    """Enhanced code for any q >= 3; even q runs on virtual cell pairs."""
    if q % 2:
        return EnhancedCode(k, n_last, q)
    return VirtualizedCode(EnhancedCode(k, n_last, 2 * q - 1), q)
