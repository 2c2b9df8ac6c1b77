"""Disjoint-support parity constraints derived from a parity-check matrix.

A constraint is a dual-space row whose support is disjoint from every other
constraint's support.  Disjointness lets the decoder test each constraint by
counting guessed error positions inside one contiguous interval of a
permuted index space, and it guarantees the filtered search space shrinks by
exactly a factor of two per constraint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitlin import BitMatrix, BitVec, gf2_in_row_space


class ConstraintInfeasibleError(ValueError):
    """Raised when the greedy subset-chain search cannot reach p disjoint rows."""

    def __init__(self, requested: int, achievable: int):
        super().__init__(
            f"only {achievable} disjoint constraint rows obtainable, requested {requested}"
        )
        self.requested = requested
        self.achievable = achievable


@dataclass(frozen=True)
class ConstraintLayout:
    """p disjoint constraint rows plus the interval bookkeeping built on them.

    pi2[i-1] is the slot assigned to position i: unconstrained positions
    occupy the leading slots in ascending order, then each constraint set in
    derivation order, ascending within the set, so set j fills exactly the
    slots intervals[j] = (L, U).
    """

    p: int
    rows: tuple[BitVec, ...]
    sets: tuple[tuple[int, ...], ...]
    pi2: tuple[int, ...]
    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.pi2)
        if not (self.p == len(self.rows) == len(self.sets) == len(self.intervals)):
            raise ValueError("p, rows, sets, intervals must agree in length")
        if sorted(self.pi2) != list(range(1, n + 1)):
            raise ValueError("pi2 is not a permutation of 1..n")
        seen = 0
        for row, pset, (lo, hi) in zip(self.rows, self.sets, self.intervals):
            if row.n != n:
                raise ValueError("row length disagrees with pi2")
            if row.support() != pset:
                raise ValueError("set does not match its row's support")
            if row.value & seen:
                raise ValueError("constraint supports are not pairwise disjoint")
            seen |= row.value
            if hi - lo + 1 != len(pset):
                raise ValueError("interval width does not match set size")
            if sorted(self.pi2[i - 1] for i in pset) != list(range(lo, hi + 1)):
                raise ValueError("pi2 does not map the set onto its interval")

    @property
    def n(self) -> int:
        return len(self.pi2)

    @classmethod
    def unconstrained(cls, n: int) -> "ConstraintLayout":
        return cls(0, (), (), tuple(range(1, n + 1)), ())

    def position_masks(self) -> list[int]:
        """Packed set membership per 1-based position: bit j set iff the
        position belongs to sets[j].  Entry 0 is padding."""
        masks = [0] * (self.n + 1)
        for j, pset in enumerate(self.sets):
            for i in pset:
                masks[i] |= 1 << j
        return masks


@dataclass(frozen=True)
class ConstraintTargets:
    """Per-constraint target parities: the syndrome bits of the hard decision."""

    targets: tuple[int, ...]

    def __post_init__(self):
        if any(t not in (0, 1) for t in self.targets):
            raise ValueError("targets must be bits")

    @property
    def packed(self) -> int:
        out = 0
        for j, t in enumerate(self.targets):
            out |= t << j
        return out


def _build_layout(row_ints: list[int], n: int) -> ConstraintLayout:
    rows = tuple(BitVec(n, r) for r in row_ints)
    sets = tuple(r.support() for r in rows)
    covered = set()
    for s in sets:
        covered.update(s)
    slot = {}
    nxt = 1
    for i in range(1, n + 1):
        if i not in covered:
            slot[i] = nxt
            nxt += 1
    intervals = []
    for s in sets:
        lo = nxt
        for i in s:
            slot[i] = nxt
            nxt += 1
        intervals.append((lo, nxt - 1))
    pi2 = tuple(slot[i] for i in range(1, n + 1))
    return ConstraintLayout(len(rows), rows, sets, pi2, tuple(intervals))


def derive_constraints(h: BitMatrix, p: int) -> ConstraintLayout:
    """Extract p mutually disjoint constraint rows from H's row space.

    Seeds with the all-one row when it is a valid parity check, otherwise
    with the largest-support row of H.  Then repeatedly splits the largest
    current row h1 by a strict-subset partner h2 (single rows first, then
    XOR pairs, first hit wins), replacing h1 with h1 xor h2 and inserting h2
    after it, so each split turns one set into two disjoint ones.
    """
    n = h.cols
    if not 1 <= p <= h.nrows:
        raise ValueError(f"p must be in [1, {h.nrows}], got {p}")
    all_one = BitVec.ones(n)
    if gf2_in_row_space(h, all_one) is not None:
        derived = [all_one.value]
    else:
        # largest-support row of H, lowest index on ties
        seed = max(range(h.nrows), key=lambda j: (h.row_ints[j].bit_count(), -j))
        derived = [h.row_ints[seed]]
    # Partner pool: original rows, then cached XOR pairs, in scan order.
    pool = list(h.row_ints)
    m = len(pool)
    for a in range(m):
        for b in range(a + 1, m):
            pool.append(h.row_ints[a] ^ h.row_ints[b])

    while len(derived) < p:
        split = None
        for idx in sorted(range(len(derived)), key=lambda i: (-derived[i].bit_count(), i)):
            h1 = derived[idx]
            for cand in pool:
                if cand and cand != h1 and cand & ~h1 == 0:
                    split = (idx, cand)
                    break
            if split:
                break
        if split is None:
            raise ConstraintInfeasibleError(p, len(derived))
        idx, h2 = split
        derived[idx: idx + 1] = [derived[idx] ^ h2, h2]
    return _build_layout(derived, n)


def random_disjoint_layout(n: int, p: int, rng) -> ConstraintLayout:
    """Random layout of p disjoint nonempty sets over [1, n].

    Verification aid: Lemma-1 style counting holds for any disjoint layout,
    not just ones derived from a code, so trials draw layouts freely.
    """
    if p == 0:
        return ConstraintLayout.unconstrained(n)
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    perm = [int(x) + 1 for x in rng.permutation(n)]
    used = int(rng.integers(p, n + 1))
    if p > 1:
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, used), size=p - 1, replace=False))
    else:
        cuts = []
    bounds = [0] + cuts + [used]
    row_ints = []
    for a, b in zip(bounds, bounds[1:]):
        mask = 0
        for pos in perm[a:b]:
            mask |= 1 << (pos - 1)
        row_ints.append(mask)
    return _build_layout(row_ints, n)


def compute_targets(layout: ConstraintLayout, v: BitVec) -> ConstraintTargets:
    """Target parities of the hard-decision word: the parity of v on each set."""
    if v.n != layout.n:
        raise ValueError(f"hard decision length {v.n} != layout n {layout.n}")
    return ConstraintTargets(
        tuple((row.value & v.value).bit_count() & 1 for row in layout.rows)
    )


def count_search_space(n: int, layout: ConstraintLayout, targets: ConstraintTargets) -> int:
    """Exhaustively count length-n binary vectors meeting every constraint.

    Enumeration oracle for the 2^(n-p) search-space law; rejects n > 24.
    """
    if n > 24:
        raise ValueError(f"exhaustive count limited to n <= 24, got {n}")
    if layout.n != n:
        raise ValueError(f"layout is for n={layout.n}, got n={n}")
    if len(targets.targets) != layout.p:
        raise ValueError("targets length does not match layout")
    e = np.arange(1 << n, dtype=np.uint32)
    valid = np.ones(1 << n, dtype=bool)
    for row, tgt in zip(layout.rows, targets.targets):
        par = np.bitwise_count(e & np.uint32(row.value)).astype(np.uint8) & 1
        valid &= par == tgt
    return int(valid.sum())
