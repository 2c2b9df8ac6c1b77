"""The guess-and-check decoding loop.

Hard-decide the received reals, rank positions by reliability, then walk
candidate error patterns in logistic-weight order, testing each against the
full parity-check matrix until the syndrome clears or a budget runs out.
Constraint filtering only skips patterns that provably cannot clear the
syndrome, so it changes query counts, never decisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bitlin import BitVec, gf2_matvec
from .codes import LinearCode
from .constraints import ConstraintLayout, ConstraintTargets, compute_targets
from .patterns import GeneratorState


@dataclass(frozen=True, eq=False)
class ReceivedFrame:
    """Channel observations plus their derived hard decision and rank map.

    pi1[rank-1] is the bit position holding the rank-th least reliable
    observation; ties in |r| resolve toward the lower position.
    """

    r: np.ndarray
    v: BitVec
    pi1: tuple[int, ...]


@dataclass(frozen=True)
class DecodeBudget:
    """b caps codebook checks; b_prime caps considered candidates, counting
    the ones a constraint filter discards.  Unconstrained decoding checks
    everything it considers, so its effective check cap is min(b, b_prime)."""

    b: int
    b_prime: int

    def __post_init__(self):
        if self.b < 1 or self.b_prime < 1:
            raise ValueError("budgets must be at least 1")

    @classmethod
    def uniform(cls, b: int) -> "DecodeBudget":
        return cls(b, b)


@dataclass(frozen=True)
class DecodeOutcome:
    """result is the decoded codeword, or None on abandonment."""

    result: Optional[BitVec]
    queries_checked: int
    candidates_generated: int
    found_at_wL: Optional[int]

    @property
    def abandoned(self) -> bool:
        return self.result is None


def prepare_frame(r) -> ReceivedFrame:
    """Hard decision (negative reals decode to 1) and stable reliability
    ranking of |r|, least reliable first."""
    arr = np.asarray(r, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a nonempty 1-D real vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError("received vector contains non-finite values")
    n = arr.size
    hard = int.from_bytes(np.packbits(arr < 0, bitorder="little").tobytes(), "little")
    order = np.argsort(np.abs(arr), kind="stable")
    pi1 = tuple(int(i) + 1 for i in order)
    return ReceivedFrame(arr, BitVec(n, hard), pi1)


def decode(
    code: LinearCode,
    frame: ReceivedFrame,
    budget: DecodeBudget,
    layout: Optional[ConstraintLayout] = None,
    targets: Optional[ConstraintTargets] = None,
    count_oversize: bool = False,
) -> DecodeOutcome:
    """Run the query loop on one frame.

    When a layout is given, targets default to the frame's own parities;
    every emitted pattern is still verified against the full H.
    """
    n = code.n
    if frame.v.n != n or len(frame.pi1) != n:
        raise ValueError(f"frame length {frame.v.n} does not match code n={n}")
    if layout is not None and targets is None:
        targets = compute_targets(layout, frame.v)
    s0 = gf2_matvec(code.H, frame.v).value
    hcol = code.h_column_masks
    state = GeneratorState(
        n,
        pi1=frame.pi1,
        layout=layout,
        targets=targets,
        max_candidates=budget.b_prime,
        count_oversize=count_oversize,
    )
    check_cap = budget.b if layout is not None else min(budget.b, budget.b_prime)
    vbits = frame.v.value
    queries = 0
    for parts, positions in state:
        queries += 1
        s = s0
        for pos in positions:
            s ^= hcol[pos]
        if s == 0:
            ebits = 0
            for pos in positions:
                ebits |= 1 << (pos - 1)
            return DecodeOutcome(
                BitVec(n, vbits ^ ebits), queries, state.candidates_generated, sum(parts)
            )
        if queries >= check_cap:
            break
    return DecodeOutcome(None, queries, state.candidates_generated, None)
