"""Closed-form write guarantees, deficiencies, and loss budgets.

Everything is exact integer or rational arithmetic; equality checks
against these values are meant to be exact.  The write deficiency of a
code guaranteeing t writes with n q-level cells is n(q-1) - t, the number
of levels it can leave unused in the worst case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def thm1_upper(n: int, k: int, ell: int, q: int) -> int:
    """Upper bound on the guaranteed writes of ANY code with the given
    shape (k variables over an alphabet of size ell, n q-level cells)."""
    if n < 1 or k < 1 or ell < 2 or q < 2:
        raise ValueError(f"invalid shape n={n}, k={k}, ell={ell}, q={q}")
    m = k * (ell - 1)
    if n >= m - 1:
        return (n - m + 1) * (q - 1) + ((m - 1) * (q - 1)) // 2
    return (n * (q - 1)) // 2


def cor1_deficiency_lb(n: int, k: int, ell: int, q: int) -> int:
    """Lower bound on the write deficiency of any code with the given shape."""
    if n < 1 or k < 1 or ell < 2 or q < 2:
        raise ValueError(f"invalid shape n={n}, k={k}, ell={ell}, q={q}")
    m = k * (ell - 1)
    levels = (m - 1) * (q - 1) if n >= m - 1 else n * (q - 1)
    return levels - levels // 2


def loss_budget_A(i: int, q: int) -> int:
    """Levels the order-i block construction can leave unused in its active
    blocks, by the recursive budget.

    The two-cell base is 3(q-1)-1.  The four-cell budget is the directly
    argued 10(q-1), which is tighter than one generic recursion step from
    the base; from there each order doubles the previous budget and adds
    3(q-1)4**(i-1) for the empty partner sub-blocks.
    """
    if i < 1:
        raise ValueError(f"block order must be >= 1, got {i}")
    if q < 3 or q % 2 == 0:
        raise ValueError(f"budgets are defined for odd q >= 3, got {q}")
    if i == 1:
        return 3 * (q - 1) - 1
    acc = 10 * (q - 1)
    for j in range(3, i + 1):
        acc = 2 * acc + 3 * (q - 1) * 4 ** (j - 1)
    return acc


def loss_budget_A_closed(i: int, q: int) -> int:
    """Closed form of :func:`loss_budget_A`, valid for i >= 2 only."""
    if i < 2:
        raise ValueError(f"closed form is invalid below order 2, got i={i}")
    if q < 3 or q % 2 == 0:
        raise ValueError(f"budgets are defined for odd q >= 3, got {q}")
    return (q - 1) * (3 * 4**i - 7 * 2**i) // 2


def thm3_deficiency(k: int, q: int) -> int:
    """Worst-case unused levels of the enhanced block-row code for k = 2**D
    bits, counting only the active-block budget plus one level.

    Even q is served by cell pairing, which doubles the per-cell level
    span; the value is the odd-q expression at 2q-1.  For D = 2 the
    quadratic closed form is invalid and the value is twice the two-cell
    budget plus one.
    """
    d = k.bit_length() - 1
    if k < 4 or 1 << d != k:
        raise ValueError(f"k must be a power of two >= 4, got {k}")
    qe = q if q % 2 else 2 * q - 1
    span = qe - 1
    if d == 2:
        return 2 * (3 * span - 1) + 1
    return span * (3 * k * k - 14 * k) // 4 + 1


def enhanced_conservative_deficiency(k: int, q: int) -> int:
    """Active-block budget for both halves plus one wholly unused
    separator block of k/2 cells."""
    d = k.bit_length() - 1
    if k < 4 or 1 << d != k:
        raise ValueError(f"k must be a power of two >= 4, got {k}")
    qe = q if q % 2 else 2 * q - 1
    return 2 * loss_budget_A(d - 1, qe) + (k // 2) * (qe - 1)


def asymptotic_ratio(t: int, n: int, q: int) -> Fraction:
    """t / (n(q-1)) as an exact rational; a family of codes is
    asymptotically optimal when this tends to 1."""
    if n < 1 or q < 2:
        raise ValueError(f"invalid shape n={n}, q={q}")
    return Fraction(t, n * (q - 1))


@dataclass(frozen=True)
class BoundReport:
    """Bound evaluations for one shape."""

    n: int
    k: int
    ell: int
    q: int
    t_upper: int
    deficiency_lower: int
    guarantee: int | None
    ratio: Fraction | None

    def csv_row(self) -> str:
        g = "" if self.guarantee is None else str(self.guarantee)
        return f"{self.n},{self.k},{self.ell},{self.q},{self.t_upper},{self.deficiency_lower},{g}"


CSV_HEADER = "n,k,ell,q,t_upper,deficiency_lb,guarantee"


def bound_report(n: int, k: int, q: int, ell: int = 2) -> BoundReport:
    """Evaluate the bounds for one shape, attaching the matching
    construction guarantee where one exists."""
    from .basic import basic_guarantee  # noqa: F401  (documented alternative)
    from .twobit import guarantee2

    t_up = thm1_upper(n, k, ell, q)
    guarantee: int | None = None
    if ell == 2 and k == 2:
        guarantee = guarantee2(n, q)
    elif ell == 2 and k >= 4 and k & (k - 1) == 0:
        block_cells = k if q % 2 == 0 else k // 2
        if n % block_cells == 0 and n // block_cells >= 3:
            guarantee = n * (q - 1) - thm3_deficiency(k, q)
    ratio = asymptotic_ratio(guarantee, n, q) if guarantee is not None else None
    return BoundReport(
        n=n,
        k=k,
        ell=ell,
        q=q,
        t_upper=t_up,
        deficiency_lower=cor1_deficiency_lb(n, k, ell, q),
        guarantee=guarantee,
        ratio=ratio,
    )
