"""Box code with frontier-pair columns and untouched separators.

An n_1 x ... x n_D box stores 2**D bits.  A single column serves one bit
pair: the pair's first bit raises the column's first cell below q-1, the
second bit works from the opposite end, and a write is refused once it
would leave fewer than two cells below q-1 (the refusal keeps both
frontiers decodable and costs at most two levels per column).

Each higher dimension splits its bit range in half.  The lower half uses
hyperplanes in ascending order, oldest first; the upper half is the exact
mirror image, i.e. the lower-half rules applied to the reversed box.  A
hyperplane is opened only while another untouched one remains between the
two fronts; at the top level a write that cannot respect that returns
:data:`ERASE`.  Bits decode as XORs of the per-column frontier parities
across the columns of their pair.

Odd q only; :func:`make_basic` handles even q with virtual cell pairs.
"""

from __future__ import annotations

import math

from .core import (
    CANNOT_ABSORB,
    ERASE,
    CellState,
    FlashCode,
    Params,
    VariableVector,
    WriteOutcome,
)
from .enhanced import VirtualizedCode


def _column_write(cells: tuple[int, ...], q: int) -> tuple[int, ...] | object:
    """Raise the first-bit frontier; callers mirror the column for the
    second bit."""
    full = q - 1
    free = [i for i, v in enumerate(cells) if v < full]
    if not free:
        return CANNOT_ABSORB
    i = free[0]
    if cells[i] == full - 1 and len(free) < 3:
        return CANNOT_ABSORB  # keep two cells below q-1
    return cells[:i] + (cells[i] + 1,) + cells[i + 1 :]


def _box_write(
    cells: tuple[int, ...], dims: tuple[int, ...], bit: int, q: int
) -> tuple[int, ...] | object:
    half = 1 << (len(dims) - 1)
    if bit >= half:
        # Upper half: the same code on the 180-degree mirrored box.
        out = _box_write(cells[::-1], dims, bit - half, q)
        return out if out is CANNOT_ABSORB else out[::-1]
    if len(dims) == 1:
        return _column_write(cells, q)
    m = dims[-1]
    sub = len(cells) // m
    planes = [cells[p * sub : (p + 1) * sub] for p in range(m)]
    low = -1
    while low + 1 < m and any(planes[low + 1]):
        low += 1
    for p in range(low + 1):
        out = _box_write(planes[p], dims[:-1], bit, q)
        if out is not CANNOT_ABSORB:
            return cells[: p * sub] + out + cells[(p + 1) * sub :]
    up = m
    while up > 0 and any(planes[up - 1]):
        up -= 1
    if up - low < 3:
        return CANNOT_ABSORB  # opening would consume the last separator
    p = low + 1
    out = _box_write(planes[p], dims[:-1], bit, q)
    assert out is not CANNOT_ABSORB, "empty hyperplane refused a write"
    return cells[: p * sub] + out + cells[(p + 1) * sub :]


def _lower_half_decode(
    cells: tuple[int, ...], dims: tuple[int, ...], q: int
) -> tuple[int, ...]:
    """Values of the box's lower 2**(D-1) bits."""
    if len(dims) == 1:
        full = q - 1
        for v in cells:
            if v < full:
                return (v % 2,)
        return (0,)  # full column: unreachable, reads as zero
    m = dims[-1]
    sub = len(cells) // m
    acc = [0] * (1 << (len(dims) - 1))
    for p in range(m):
        plane = cells[p * sub : (p + 1) * sub]
        if not any(plane):
            break
        for j, v in enumerate(_box_decode(plane, dims[:-1], q)):
            acc[j] ^= v
    return tuple(acc)


def _box_decode(cells: tuple[int, ...], dims: tuple[int, ...], q: int) -> tuple[int, ...]:
    return _lower_half_decode(cells, dims, q) + _lower_half_decode(
        cells[::-1], dims, q
    )


def basic_guarantee(dims: tuple[int, ...], q: int) -> int:
    """Closed-form write floor for this construction.

    May go negative for small boxes; callers clamp at zero when reporting.
    """
    d = len(dims)
    if d < 1:
        raise ValueError("need at least one dimension")
    t = math.prod(s - 1 for s in dims) * (q - 1)
    for i in range(1, d):
        t -= 2 ** (i - 1) * (math.prod(dims[j] - 1 for j in range(d - i)) * (q - 1) - 1)
    t -= 2 ** (d - 1) * (q - 2)
    return t


class BasicCode(FlashCode):
    """k = 2**D bits in an n_1 x ... x n_D box, odd q."""

    name = "basic"
    unit_increment = True

    def __init__(self, dims: tuple[int, ...], q: int) -> None:
        dims = tuple(dims)
        if not dims or any(s < 2 for s in dims):
            raise ValueError(f"every dimension must be >= 2, got {dims}")
        if q < 3 or q % 2 == 0:
            raise ValueError(f"direct construction needs odd q >= 3, got {q}")
        self.params = Params(q=q, k=2 ** len(dims), dims=dims)

    def decode(self, state: CellState) -> VariableVector:
        return _box_decode(state, self.params.dims, self.params.q)

    def write(self, state: CellState, bit: int) -> WriteOutcome:
        k = self.params.k
        if not 0 <= bit < k:
            raise ValueError(f"bit index {bit} out of range [0, {k})")
        out = _box_write(state, self.params.dims, bit, self.params.q)
        return ERASE if out is CANNOT_ABSORB else out

    def guarantee_floor(self) -> int:
        return basic_guarantee(self.params.dims, self.params.q)

    def min_free_cells_per_column(self, state: CellState) -> int:
        """Smallest count of below-(q-1) cells over all columns."""
        n1 = self.params.dims[0]
        full = self.params.q - 1
        columns = [state[c * n1 : (c + 1) * n1] for c in range(len(state) // n1)]
        return min(sum(1 for v in col if v < full) for col in columns)

    def monitors(self):
        # Violated when any column drops below two free cells.
        return (
            (
                "column-squeeze",
                lambda s: max(0, 2 - self.min_free_cells_per_column(s)),
                0,
            ),
        )


def make_basic(dims: tuple[int, ...], q: int) -> FlashCode:
    """Basic code for any q >= 3; even q pairs physical cells, so the box
    gains a leading length-2 dimension."""
    if q % 2:
        return BasicCode(dims, q)
    return VirtualizedCode(BasicCode(dims, 2 * q - 1), q)
