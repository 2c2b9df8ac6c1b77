"""Candidate error patterns in nondecreasing logistic weight, with optional
constraint filtering evaluated progressively.

A pattern is a set of reliability ranks, represented as a strictly
decreasing tuple of distinct integers in [1, n]; its logistic weight is the
sum.  Patterns of one weight are the distinct-part integer partitions of
that weight, enumerated by a two-phase tree: phase 1 splits the largest
part m into (m - d, d) with the smallest feasible d, phase 2 walks the
alternatives (m - d - 1, d + 1), (m - d - 2, d + 2), ...  The traversal is
depth-first, descending into a node's phase-1 split before its phase-2
alternative, which fixes a deterministic order inside each weight.

Constraint filtering keeps a cached partial parity per node covering all
parts except the one or two the next expansion replaces, so evaluating a
child costs two mask lookups instead of a full pass over its parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .constraints import ConstraintLayout, ConstraintTargets

AuditHook = Callable[[tuple[int, ...], int, int], None]


@dataclass(frozen=True)
class PatternNode:
    """One enumeration-tree node.

    parts is the full pattern; partial_parities caches, per constraint, the
    parity of the parts excluding the first `phase` entries (the largest
    one while a split is pending, the largest two while alternatives are).
    phase 0 means nothing is excluded.
    """

    parts: tuple[int, ...]
    wL: int
    partial_parities: tuple[int, ...]
    phase: int

    def __post_init__(self):
        if self.phase not in (0, 1, 2) or self.phase > len(self.parts):
            raise ValueError(f"bad phase {self.phase} for {len(self.parts)} parts")
        for a, b in zip(self.parts, self.parts[1:]):
            if a <= b:
                raise ValueError("parts must be strictly decreasing")
        if self.parts and self.parts[-1] < 1:
            raise ValueError("parts must be positive")
        if self.wL != sum(self.parts):
            raise ValueError("wL does not equal the sum of parts")


def _check_pi1(pi1: Sequence[int], n: int) -> tuple[int, ...]:
    if sorted(pi1) != list(range(1, n + 1)):
        raise ValueError("pi1 is not a permutation of 1..n")
    return tuple(pi1)


def rank_constraint_masks(layout: ConstraintLayout, pi1: Sequence[int]) -> list[int]:
    """Packed constraint membership per reliability rank.

    Entry r (1-based, entry 0 padding) has bit j set iff rank r maps through
    pi1 to a bit position inside constraint set j.
    """
    pi1 = _check_pi1(pi1, layout.n)
    pos_masks = layout.position_masks()
    return [0] + [pos_masks[pi1[r - 1]] for r in range(1, layout.n + 1)]


def progressive_update(
    node: PatternNode,
    new_parts: Sequence[int],
    layout: ConstraintLayout,
    pi1: Sequence[int],
) -> tuple[int, ...]:
    """Extend a node's cached parities by one or two new parts.

    Per constraint j the cached bit flips iff an odd number of the new
    parts land inside interval j, membership being tested on pi2(pi1(rank)).
    Passing the node's own excluded parts completes its evaluation;
    passing a child's replacement parts yields the child's parities.
    """
    if not 1 <= len(new_parts) <= 2:
        raise ValueError("expected one or two new parts")
    counted = node.parts[node.phase:]
    seen = set()
    for r in new_parts:
        if not 1 <= r <= layout.n:
            raise ValueError(f"part {r} out of range [1, {layout.n}]")
        if r in seen or r in counted:
            raise ValueError(f"duplicate part {r}")
        seen.add(r)
    pi1 = _check_pi1(pi1, layout.n)
    out = list(node.partial_parities)
    for j, (lo, hi) in enumerate(layout.intervals):
        flips = 0
        for r in new_parts:
            slot = layout.pi2[pi1[r - 1] - 1]
            if lo <= slot <= hi:
                flips += 1
        if flips & 1:
            out[j] ^= 1
    return tuple(out)


def check_node(
    node: PatternNode,
    layout: ConstraintLayout,
    targets: ConstraintTargets,
    pi1: Sequence[int],
) -> bool:
    """Full validity test: per constraint, the count of the node's parts
    whose pi2(pi1(rank)) slot falls in the interval must match the target
    parity.  Checks smaller intervals first and stops at the first miss."""
    pi1 = _check_pi1(pi1, layout.n)
    order = sorted(range(layout.p), key=lambda j: layout.intervals[j][1] - layout.intervals[j][0])
    for j in order:
        lo, hi = layout.intervals[j]
        count = 0
        for r in node.parts:
            slot = layout.pi2[pi1[r - 1] - 1]
            if lo <= slot <= hi:
                count += 1
        if count & 1 != targets.targets[j]:
            return False
    return True


class GeneratorState:
    """Driver for one frame's pattern stream.

    candidates_generated counts every materialized pattern (all parts <= n)
    the stream considered, whether or not it passed the filter; with
    count_oversize set, partitions carrying a part > n count as well, which
    emulates unbounded partitioning.  candidates_emitted counts only the
    patterns actually handed out.  Both counters are refreshed on every
    emission and at exhaustion.
    """

    def __init__(
        self,
        n: int,
        pi1: Optional[Sequence[int]] = None,
        layout: Optional[ConstraintLayout] = None,
        targets: Optional[ConstraintTargets] = None,
        max_candidates: Optional[int] = None,
        max_weight: Optional[int] = None,
        count_oversize: bool = False,
        audit: Optional[AuditHook] = None,
    ):
        if n <= 0:
            raise ValueError(f"n must be positive, got {n}")
        if (layout is None) != (targets is None):
            raise ValueError("layout and targets must be given together")
        if layout is not None and layout.n != n:
            raise ValueError(f"layout is for n={layout.n}, generator n={n}")
        if layout is not None and len(targets.targets) != layout.p:
            raise ValueError("targets length does not match layout")
        if max_candidates is not None and max_candidates < 1:
            raise ValueError("max_candidates must be at least 1")
        self.n = n
        self.layout = layout
        self.targets = targets
        self.wl = 0
        self.candidates_generated = 0
        self.candidates_emitted = 0
        self.count_oversize = count_oversize
        self._pi1 = [0] + list(_check_pi1(pi1, n) if pi1 is not None
                               else range(1, n + 1))
        self._rank_masks = (rank_constraint_masks(layout, self._pi1[1:])
                            if layout is not None else None)
        self._target_packed = targets.packed if targets is not None else 0
        self._cap = max_candidates if max_candidates is not None else math.inf
        top = n * (n + 1) // 2
        self._max_weight = top if max_weight is None else min(max_weight, top)
        self._audit = audit
        self._stack: list[tuple[int, int, tuple[int, ...], int]] = []
        self._gen = self._run()

    @property
    def frontier(self) -> list[PatternNode]:
        """Pending real nodes of the current weight's traversal, top first.

        Entries whose largest part exceeds n are internal carriers, never
        materialized as patterns, and are omitted here.
        """
        p = self.layout.p if self.layout is not None else 0
        out = []
        for y, x, tail, txor in reversed(self._stack):
            if y > self.n:
                continue
            parts = (y,) if x == 0 else (y, x) + tail
            cached = tuple((txor >> j) & 1 for j in range(p))
            out.append(PatternNode(parts, sum(parts), cached, 1 if x == 0 else 2))
        return out

    def __iter__(self):
        return self._gen

    def _run(self):
        n = self.n
        rmask = self._rank_masks
        tpack = self._target_packed
        audit = self._audit
        oversize = self.count_oversize
        cap = self._cap
        pi1 = self._pi1
        stack = self._stack
        # suffix[a] = a + (a+1) + ... + n: the largest weight coverable by
        # distinct parts that are all in [a, n]
        suffix = [0] * (n + 3)
        for a in range(n, 0, -1):
            suffix[a] = suffix[a + 1] + a

        gen = 1
        emt = 0
        if audit is not None:
            audit((), 0, 0)
        if rmask is None or tpack == 0:
            emt = 1
            self.candidates_generated = gen
            self.candidates_emitted = emt
            yield ((), ())
        if gen >= cap:
            self.candidates_generated = gen
            self.candidates_emitted = emt
            return

        for w in range(1, self._max_weight + 1):
            self.wl = w
            if not oversize and w > suffix[1]:
                break
            stack.clear()
            stack.append((w, 0, (), 0))
            while stack:
                y, x, tail, txor = stack.pop()
                if y <= n:
                    gen += 1
                    parts = None
                    if audit is not None:
                        parts = (y,) if x == 0 else (y, x) + tail
                        audit(parts, 1 if x == 0 else 2, txor)
                    if rmask is None:
                        ok = True
                    else:
                        full = txor ^ rmask[y]
                        if x:
                            full ^= rmask[x]
                        ok = full == tpack
                    if ok:
                        if parts is None:
                            parts = (y,) if x == 0 else (y, x) + tail
                        emt += 1
                        self.candidates_generated = gen
                        self.candidates_emitted = emt
                        yield (parts, tuple(pi1[i] for i in parts))
                    if gen >= cap:
                        self.candidates_generated = gen
                        self.candidates_emitted = emt
                        return
                elif oversize:
                    gen += 1
                    if gen >= cap:
                        self.candidates_generated = gen
                        self.candidates_emitted = emt
                        return
                # Phase-2 alternative first, phase-1 split second: the stack
                # pops the split subtree before moving along the alternatives.
                if x:
                    ny = y - 1
                    nx = x + 1
                    if ny > nx and (oversize or (nx <= n and (ny <= n or ny <= suffix[nx + 1]))):
                        stack.append((ny, nx, tail, txor))
                    d = x + 1
                    hy = y - d
                    if hy > d and (oversize or (d <= n and (hy <= n or hy <= suffix[d + 1]))):
                        cx = rmask[x] if rmask is not None and x <= n else 0
                        stack.append((hy, d, (x,) + tail, txor ^ cx))
                else:
                    hy = y - 1
                    if hy > 1 and (oversize or hy <= n or hy <= suffix[2]):
                        stack.append((hy, 1, (), 0))
        self.candidates_generated = gen
        self.candidates_emitted = emt


def next_pattern(
    state: GeneratorState,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Advance the stream one emission: (parts, bit positions via pi1), or
    None once the stream is exhausted or its candidate cap is consumed."""
    return next(state._gen, None)
