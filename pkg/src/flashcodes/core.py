"""Shared data model for multilevel-cell rewriting codes.

A code stores k bits in n memory cells whose levels lie in {0, ..., q-1}
and can only increase until the whole block is erased.  Concrete
constructions implement the :class:`FlashCode` contract: a ``decode`` map
from cell state to bit vector and a ``write`` map that realizes a
single-bit flip by raising cell levels, or reports that an erasure is
required.

Everything here is immutable.  Code instances must be pure functions of
the cell state (no hidden memory), which makes them safe to share between
threads and lets the verification oracle memoize on the state alone.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence, Union

CellState = tuple[int, ...]
VariableVector = tuple[int, ...]


class Signal(Enum):
    """Non-state outcomes of a write."""

    #: The requested flip cannot be realized; a block erasure is required.
    ERASE = "ERASE"
    #: A sub-unit refuses the write; its container escalates elsewhere.
    #: Sub-units never demand erasure, only the top-level code does.
    CANNOT_ABSORB = "CANNOT_ABSORB"


ERASE = Signal.ERASE
CANNOT_ABSORB = Signal.CANNOT_ABSORB

WriteOutcome = Union[CellState, Signal]

#: (name, value function, inclusive limit) checked on every visited state.
MonitorSpec = tuple[str, Callable[[CellState], int], int]


@dataclass(frozen=True)
class Params:
    """Code geometry: q cell levels, k stored bits, box dimensions.

    ``dims`` lists the box edge lengths; their product is the cell count n.
    The layout is row-major with the last dimension varying slowest, so the
    hyperplanes along the last dimension occupy contiguous index ranges.
    """

    q: int
    k: int
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"need at least two cell levels, got q={self.q}")
        if self.k < 1:
            raise ValueError(f"need at least one stored bit, got k={self.k}")
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError(f"dimensions must be positive, got {self.dims}")

    @property
    def n(self) -> int:
        return math.prod(self.dims)


class FlashCode(ABC):
    """Contract every construction implements.

    ``decode`` and ``write`` must be pure functions of the cell state, and
    ``decode`` of the all-zero state must be the all-zero bit vector.
    """

    name: str = "abstract"
    #: True when every successful write raises exactly one cell by one.
    unit_increment: bool = False
    params: Params

    @abstractmethod
    def decode(self, state: CellState) -> VariableVector:
        """Bit vector currently represented by ``state``."""

    @abstractmethod
    def write(self, state: CellState, bit: int) -> WriteOutcome:
        """State after flipping ``bit``, or :data:`ERASE`."""

    def initial_state(self) -> CellState:
        return (0,) * self.params.n

    def guarantee_floor(self) -> int | None:
        """Closed-form lower bound on the guaranteed write count, if known.

        May be negative for degenerate shapes; callers clamp at zero when
        reporting.
        """
        return None

    def monitors(self) -> tuple[MonitorSpec, ...]:
        """Default per-state monitors for walks and exhaustive search."""
        return ()


def weight(state: Sequence[int]) -> int:
    """Total charge of a cell state."""
    return sum(state)


def ascent_check(before: Sequence[int], after: Sequence[int]) -> bool:
    """True iff ``after`` dominates ``before`` componentwise with more weight."""
    if len(before) != len(after):
        raise ValueError(f"cell counts differ: {len(before)} vs {len(after)}")
    return all(b >= a for a, b in zip(before, after)) and weight(after) > weight(before)


def initial_state(params: Params) -> CellState:
    return (0,) * params.n


def flip(bits: Sequence[int], index: int) -> VariableVector:
    """Bit vector with ``index`` flipped."""
    if not 0 <= index < len(bits):
        raise ValueError(f"bit index {index} out of range for {len(bits)} bits")
    return tuple(b ^ 1 if i == index else b for i, b in enumerate(bits))


def linearize(dims: Sequence[int], coords: Sequence[int]) -> int:
    """Row-major cell index of ``coords``; the last dimension varies slowest."""
    if len(dims) != len(coords):
        raise ValueError(f"{len(coords)} coordinates for {len(dims)} dimensions")
    index = 0
    stride = 1
    for size, c in zip(dims, coords):
        if not 0 <= c < size:
            raise ValueError(f"coordinate {c} out of range [0, {size})")
        index += c * stride
        stride *= size
    return index


def delinearize(dims: Sequence[int], index: int) -> tuple[int, ...]:
    """Inverse of :func:`linearize`."""
    n = math.prod(dims)
    if not 0 <= index < n:
        raise ValueError(f"index {index} out of range [0, {n})")
    coords = []
    for size in dims:
        coords.append(index % size)
        index //= size
    return tuple(coords)


def format_state(state: Sequence[int]) -> str:
    """Textual cell state: space-separated decimal levels, e.g. ``"4 4 2"``."""
    return " ".join(str(v) for v in state)


def parse_state(text: str) -> CellState:
    try:
        return tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise ValueError(f"malformed cell state {text!r}") from exc


def format_bits(bits: Sequence[int]) -> str:
    """Textual bit vector: contiguous digits, bit 0 first, e.g. ``"10"``."""
    return "".join(str(b) for b in bits)


def parse_bits(text: str) -> VariableVector:
    if not all(ch in "01" for ch in text):
        raise ValueError(f"malformed bit vector {text!r}")
    return tuple(int(ch) for ch in text)
