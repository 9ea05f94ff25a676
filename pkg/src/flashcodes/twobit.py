"""Two bits in a single row of cells, with end-to-end growth.

Flipping the first bit raises the leftmost cell below q-1, flipping the
second raises the rightmost, so reachable states look like a full prefix,
a free frontier cell, untouched zeros, the other frontier, and a full
suffix.  Each bit reads back as the parity of the total charge in its end
run (for odd q the full cells contribute nothing and this is just the
frontier parity).

Once a single cell remains below q-1 it must carry both bits: its residue
modulo 4 encodes the offset of the bit pair from the value the filled
cells already express.  For even q that last cell stops at level q-2 so
the state where every cell is full stays unambiguous.
"""

from __future__ import annotations

from .core import (
    CANNOT_ABSORB,  # noqa: F401  (re-exported for symmetry with sibling modules)
    ERASE,
    CellState,
    FlashCode,
    Params,
    VariableVector,
    WriteOutcome,
    flip,
)

#: residue mod 4 -> bit pair
RESIDUE_BITS: tuple[VariableVector, ...] = ((0, 0), (0, 1), (1, 0), (1, 1))


def _residue_of(bits: VariableVector) -> int:
    return 2 * bits[0] + bits[1]


def _free_cells(state: CellState, q: int) -> list[int]:
    full = q - 1
    return [i for i, v in enumerate(state) if v < full]


def _lone_cell_base(i: int, n: int, q: int) -> VariableVector:
    # Bit pair expressed by the filled cells once only cell i is free:
    # i full cells on the left, n-1-i on the right, each of parity q-1.
    p = (q - 1) % 2
    return ((i * p) % 2, ((n - 1 - i) * p) % 2)


def _raise_to_residue(minimum: int, residue: int) -> int:
    """Smallest level >= minimum congruent to residue mod 4."""
    return minimum + ((residue - minimum) % 4)


def decode2(state: CellState, q: int) -> VariableVector:
    """Bit pair represented by ``state``."""
    n = len(state)
    free = _free_cells(state, q)
    p = (q - 1) % 2
    if len(free) >= 2:
        i1, i2 = free[0], free[-1]
        return ((state[i1] + i1 * p) % 2, (state[i2] + (n - 1 - i2) * p) % 2)
    if len(free) == 1:
        i = free[0]
        b1, b2 = _lone_cell_base(i, n, q)
        r1, r2 = RESIDUE_BITS[state[i] % 4]
        return (b1 ^ r1, b2 ^ r2)
    # Every cell full: read as if the last cell were the lone carrier at q-1.
    # (Unreachable for even q, where the carrier is capped at q-2.)
    b1, b2 = _lone_cell_base(n - 1, n, q)
    r1, r2 = RESIDUE_BITS[(q - 1) % 4]
    return (b1 ^ r1, b2 ^ r2)


def write2(state: CellState, bit: int, q: int) -> WriteOutcome:
    """State after flipping ``bit``, or :data:`ERASE` when it cannot fit."""
    if bit not in (0, 1):
        raise ValueError(f"bit index {bit} out of range [0, 2)")
    n = len(state)
    full = q - 1
    cap = full if q % 2 else q - 2  # lone carrier must stay identifiable
    free = _free_cells(state, q)
    if not free:
        return ERASE
    target = flip(decode2(state, q), bit)
    out = list(state)
    if len(free) >= 2:
        i = free[0] if bit == 0 else free[-1]
        out[i] += 1
        if out[i] == full and len(free) == 2:
            # One free cell remains; move it onto the residue for the pair.
            j = free[0] if i == free[-1] else free[-1]
            b = _lone_cell_base(j, n, q)
            rho = _residue_of((b[0] ^ target[0], b[1] ^ target[1]))
            y = _raise_to_residue(out[j], rho)
            if y > cap:
                return ERASE
            out[j] = y
        return tuple(out)
    i = free[0]
    b = _lone_cell_base(i, n, q)
    rho = _residue_of((b[0] ^ target[0], b[1] ^ target[1]))
    y = _raise_to_residue(state[i] + 1, rho)
    if y > cap:
        return ERASE
    out[i] = y
    return tuple(out)


def guarantee2(n: int, q: int) -> int:
    """Writes this construction guarantees with n q-level cells."""
    if n < 1 or q < 2:
        raise ValueError(f"invalid shape n={n}, q={q}")
    return (n - 1) * (q - 1) + (q - 1) // 2


class TwoBitCode(FlashCode):
    """k=2 code over a row of n q-level cells (any q >= 2)."""

    name = "twobit"
    unit_increment = False  # the lone carrier may jump several levels

    def __init__(self, n: int, q: int) -> None:
        if n < 1 or q < 2:
            raise ValueError(f"invalid shape n={n}, q={q}")
        self.params = Params(q=q, k=2, dims=(n,))

    def decode(self, state: CellState) -> VariableVector:
        return decode2(state, self.params.q)

    def write(self, state: CellState, bit: int) -> WriteOutcome:
        return write2(state, bit, self.params.q)

    def guarantee_floor(self) -> int:
        return guarantee2(self.params.n, self.params.q)
