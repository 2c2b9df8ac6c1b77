"""Dense GF(2) vectors and matrices backed by word-packed integer bitsets.

Positions are 1-based in every public interface: bit i of a vector lives at
integer bit i-1 internally.  XOR and masked popcounts on Python ints are
word-parallel, which is what the decoder's syndrome arithmetic leans on.
All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


class BitVec:
    """Fixed-length vector over GF(2)."""

    __slots__ = ("n", "value")

    def __init__(self, n: int, value: int = 0):
        if n <= 0:
            raise ValueError(f"length must be positive, got {n}")
        if value < 0 or value >> n:
            raise ValueError(f"value does not fit in {n} bits")
        self.n = n
        self.value = value

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVec":
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {i + 1} is not binary: {b}")
            value |= b << i
        return cls(len(bits), value)

    @classmethod
    def from_support(cls, n: int, positions: Iterable[int]) -> "BitVec":
        value = 0
        for i in positions:
            if not 1 <= i <= n:
                raise ValueError(f"position {i} out of range [1, {n}]")
            value |= 1 << (i - 1)
        return cls(n, value)

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVec":
        return cls(n, (1 << n) - 1)

    def get(self, i: int) -> int:
        """Bit at 1-based position i."""
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range [1, {self.n}]")
        return (self.value >> (i - 1)) & 1

    def weight(self) -> int:
        return self.value.bit_count()

    def support(self) -> tuple[int, ...]:
        """1-based positions of the nonzero coordinates, ascending."""
        return tuple(i + 1 for i in range(self.n) if (self.value >> i) & 1)

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return BitVec(self.n, self.value ^ other.value)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVec):
            return NotImplemented
        return self.n == other.n and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.n, self.value))

    def to01(self) -> str:
        return "".join("1" if (self.value >> i) & 1 else "0" for i in range(self.n))

    def bits(self) -> list[int]:
        return [(self.value >> i) & 1 for i in range(self.n)]

    def __repr__(self) -> str:
        return f"BitVec({self.to01()})"


class BitMatrix:
    """Matrix over GF(2); each row is one packed integer."""

    __slots__ = ("nrows", "cols", "row_ints")

    def __init__(self, cols: int, row_ints: Sequence[int]):
        if cols <= 0:
            raise ValueError(f"cols must be positive, got {cols}")
        for r in row_ints:
            if r < 0 or r >> cols:
                raise ValueError(f"row does not fit in {cols} columns")
        self.cols = cols
        self.row_ints = tuple(row_ints)
        self.nrows = len(self.row_ints)

    @classmethod
    def from_bitvecs(cls, rows: Sequence[BitVec]) -> "BitMatrix":
        if not rows:
            raise ValueError("at least one row required")
        n = rows[0].n
        for r in rows:
            if r.n != n:
                raise ValueError("rows have mixed lengths")
        return cls(n, [r.value for r in rows])

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        return cls.from_bitvecs([BitVec.from_bits(r) for r in rows])

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, [1 << i for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.cols)

    def row(self, j: int) -> BitVec:
        """Row at 1-based index j."""
        if not 1 <= j <= self.nrows:
            raise IndexError(f"row {j} out of range [1, {self.nrows}]")
        return BitVec(self.cols, self.row_ints[j - 1])

    def row_vecs(self) -> list[BitVec]:
        return [BitVec(self.cols, r) for r in self.row_ints]

    def column_masks(self) -> list[int]:
        """For each 1-based column i, the packed column read across rows.

        Entry 0 is unused padding so the list indexes directly by position.
        """
        out = [0] * (self.cols + 1)
        for j, r in enumerate(self.row_ints):
            bit = 1 << j
            v = r
            while v:
                low = v & -v
                out[low.bit_length()] |= bit
                v ^= low
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.cols == other.cols and self.row_ints == other.row_ints

    def __hash__(self) -> int:
        return hash((self.cols, self.row_ints))

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.cols})"


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _reduce(row_ints: Sequence[int], cols: int, track: bool):
    """Gauss-Jordan over GF(2), pivoting on ascending columns.

    Returns (work rows, rank, pivot bit indices, combination masks).  When
    track is set, combination mask r records which input rows were XORed
    into work row r.
    """
    work = list(row_ints)
    comb = [1 << j for j in range(len(work))] if track else None
    rank = 0
    pivots: list[int] = []
    for bit in range(cols):
        piv = None
        for r in range(rank, len(work)):
            if (work[r] >> bit) & 1:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        if track:
            comb[rank], comb[piv] = comb[piv], comb[rank]
        for r in range(len(work)):
            if r != rank and (work[r] >> bit) & 1:
                work[r] ^= work[rank]
                if track:
                    comb[r] ^= comb[rank]
        pivots.append(bit)
        rank += 1
        if rank == len(work):
            break
    return work, rank, pivots, comb


def gf2_matvec(m: BitMatrix, v: BitVec) -> BitVec:
    """M @ v over GF(2): bit j of the result is <row j, v>."""
    if v.n != m.cols:
        raise ValueError(f"dimension mismatch: matrix has {m.cols} cols, vector length {v.n}")
    out = 0
    x = v.value
    for j, r in enumerate(m.row_ints):
        out |= ((r & x).bit_count() & 1) << j
    return BitVec(m.nrows, out)


def gf2_row_reduce(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row-echelon form.

    Returns (reduced matrix with the same shape, rank, 1-based pivot columns).
    Zero rows sink to the bottom; the row space is unchanged.
    """
    work, rank, pivots, _ = _reduce(m.row_ints, m.cols, track=False)
    return BitMatrix(m.cols, work), rank, [p + 1 for p in pivots]


def gf2_rank(m: BitMatrix) -> int:
    _, rank, _, _ = _reduce(m.row_ints, m.cols, track=False)
    return rank


def gf2_nullspace(m: BitMatrix) -> Optional[BitMatrix]:
    """Basis of {x : M x = 0}, one row per free column.

    Returns None when the null space is trivial (full column rank).
    """
    work, rank, pivots, _ = _reduce(m.row_ints, m.cols, track=False)
    pivot_set = set(pivots)
    free = [b for b in range(m.cols) if b not in pivot_set]
    if not free:
        return None
    basis = []
    for fb in free:
        x = 1 << fb
        for i, pb in enumerate(pivots):
            if (work[i] >> fb) & 1:
                x |= 1 << pb
        basis.append(x)
    return BitMatrix(m.cols, basis)


def gf2_in_row_space(m: BitMatrix, v: BitVec) -> Optional[BitVec]:
    """Coefficients c with c^T M = v if v lies in M's row space, else None.

    The returned BitVec has length M.nrows; XORing the selected rows of M
    reproduces v exactly.
    """
    if v.n != m.cols:
        raise ValueError(f"dimension mismatch: matrix has {m.cols} cols, vector length {v.n}")
    work, rank, pivots, comb = _reduce(m.row_ints, m.cols, track=True)
    u = v.value
    c = 0
    for i, pb in enumerate(pivots):
        if (u >> pb) & 1:
            u ^= work[i]
            c ^= comb[i]
    if u != 0:
        return None
    return BitVec(m.nrows, c)
