"""Binary linear block codes: extended BCH, PAC, and parity-check file I/O.

Constructed codes store a reduced-row-echelon parity-check matrix; codes
loaded from a file keep the file's rows verbatim so that downstream
constraint derivation sees exactly what the user wrote.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .bitlin import BitMatrix, BitVec, gf2_matvec, gf2_nullspace, gf2_rank, gf2_row_reduce


@dataclass(frozen=True)
class RateProfile:
    """Which of the n synthetic input positions carry information bits.

    Positions are 1-based and must be strictly increasing; the remaining
    positions are frozen to zero before precoding.
    """

    n: int
    info_positions: tuple[int, ...]

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError(f"n must be positive, got {self.n}")
        prev = 0
        for p in self.info_positions:
            if not 1 <= p <= self.n:
                raise ValueError(f"profile position {p} out of range [1, {self.n}]")
            if p <= prev:
                raise ValueError("profile positions must be strictly increasing")
            prev = p

    @property
    def k(self) -> int:
        return len(self.info_positions)


class LinearCode:
    """An (n, k) binary linear code with generator and parity-check matrices."""

    def __init__(self, name: str, g: BitMatrix, h: BitMatrix):
        n = g.cols
        k = g.nrows
        if h.cols != n:
            raise ValueError(f"G has {n} columns but H has {h.cols}")
        if h.nrows != n - k:
            raise ValueError(f"H must have n-k={n - k} rows, got {h.nrows}")
        if gf2_rank(g) != k:
            raise ValueError("G rows are not linearly independent")
        if gf2_rank(h) != n - k:
            raise ValueError("H rows are not linearly independent")
        for grow in g.row_ints:
            for hrow in h.row_ints:
                if (grow & hrow).bit_count() & 1:
                    raise ValueError("G and H are not orthogonal")
        self.name = name
        self.n = n
        self.k = k
        self.G = g
        self.H = h
        # Per-column packed H reads, indexed by 1-based position; the decoder
        # folds these instead of recomputing full syndromes per guess.
        self.h_column_masks: list[int] = h.column_masks()

    @property
    def rate(self) -> float:
        return self.k / self.n

    def encode(self, message: BitVec) -> BitVec:
        if message.n != self.k:
            raise ValueError(f"message length {message.n} != k={self.k}")
        out = 0
        x = message.value
        for row in self.G.row_ints:
            if x & 1:
                out ^= row
            x >>= 1
        return BitVec(self.n, out)

    def syndrome(self, word: BitVec) -> BitVec:
        return gf2_matvec(self.H, word)

    def is_codeword(self, word: BitVec) -> bool:
        return self.syndrome(word).value == 0

    def minimum_distance(self) -> int:
        """Exhaustive minimum weight over all nonzero codewords (k <= 20 only)."""
        if self.k > 20:
            raise ValueError(f"exhaustive search infeasible for k={self.k}")
        best = self.n
        cw = 0
        prev = 0
        for g in range(1, 1 << self.k):
            gray = g ^ (g >> 1)
            cw ^= self.G.row_ints[(gray ^ prev).bit_length() - 1]
            prev = gray
            w = cw.bit_count()
            if 0 < w < best:
                best = w
        return best

    def __repr__(self) -> str:
        return f"LinearCode({self.name}, n={self.n}, k={self.k})"


# ---------------------------------------------------------------------------
# GF(2^m) arithmetic on packed polynomials (bit i = coefficient of x^i).

def _gf_mul(a: int, b: int, prim: int, m: int) -> int:
    res = 0
    top = 1 << m
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= prim
    return res


def _x_has_full_order(poly: int, m: int) -> bool:
    """True when x generates the full multiplicative group mod poly.

    This simultaneously certifies irreducibility: a unit of order 2^m - 1
    forces every nonzero residue to be invertible.
    """
    order = (1 << m) - 1
    cur = 1
    for i in range(1, order + 1):
        cur = _gf_mul(cur, 2, poly, m)
        if cur == 1:
            return i == order
    return False


def smallest_primitive_poly(m: int) -> int:
    """Lexicographically smallest primitive polynomial of degree m, packed."""
    if m < 2:
        raise ValueError(f"degree must be at least 2, got {m}")
    for cand in range((1 << m) | 1, 1 << (m + 1), 2):
        if _x_has_full_order(cand, m):
            return cand
    raise RuntimeError(f"no primitive polynomial of degree {m}")  # unreachable


def _cyclotomic_coset(s: int, n: int) -> list[int]:
    coset = []
    c = s % n
    while c not in coset:
        coset.append(c)
        c = (2 * c) % n
    return sorted(coset)


def _minimal_poly(s: int, prim: int, m: int) -> int:
    """Minimal polynomial of alpha^s over GF(2), packed binary coefficients."""
    n = (1 << m) - 1
    poly = [1]
    for j in _cyclotomic_coset(s, n):
        root = 1
        for _ in range(j):
            root = _gf_mul(root, 2, prim, m)
        nxt = [0] * (len(poly) + 1)
        for d, co in enumerate(poly):
            nxt[d + 1] ^= co
            nxt[d] ^= _gf_mul(co, root, prim, m)
        poly = nxt
    out = 0
    for d, co in enumerate(poly):
        if co not in (0, 1):
            raise RuntimeError("minimal polynomial has coefficients outside GF(2)")
        out |= co << d
    return out


def _polymul_gf2(a: int, b: int) -> int:
    res = 0
    while b:
        if b & 1:
            res ^= a
        a <<= 1
        b >>= 1
    return res


def build_ebch(m: int, t: int) -> LinearCode:
    """Extended BCH code: BCH(2^m - 1) of designed distance 2t+1 plus an
    overall parity bit appended at position n = 2^m."""
    if m < 3:
        raise ValueError(f"m must be at least 3, got {m}")
    if t < 1:
        raise ValueError(f"t must be at least 1, got {t}")
    prim = smallest_primitive_poly(m)
    nc = (1 << m) - 1
    gen = 1
    seen: set[tuple[int, ...]] = set()
    for s in range(1, 2 * t, 2):
        coset = tuple(_cyclotomic_coset(s, nc))
        if coset in seen:
            continue
        seen.add(coset)
        gen = _polymul_gf2(gen, _minimal_poly(s, prim, m))
    deg = gen.bit_length() - 1
    k = nc - deg
    if k <= 0:
        raise ValueError(f"designed distance too large for m={m}: t={t}")
    n = nc + 1
    parity = gen.bit_count() & 1
    rows = [(gen << i) | (parity << nc) for i in range(k)]
    g = BitMatrix(n, rows)
    h_raw = gf2_nullspace(g)
    assert h_raw is not None and h_raw.nrows == n - k
    h, rank, _ = gf2_row_reduce(h_raw)
    assert rank == n - k
    return LinearCode(f"ebch{n}", g, h)


# ---------------------------------------------------------------------------
# PAC codes: rate profiling, convolutional precoding, polar transform.

def _polar_transform(bits: list[int]) -> list[int]:
    n = len(bits)
    x = list(bits)
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                x[j] ^= x[j + h]
        h *= 2
    return x


def _convolve(bits: list[int], poly: Sequence[int]) -> list[int]:
    out = []
    for i in range(len(bits)):
        acc = 0
        for j, tap in enumerate(poly):
            if tap and i - j >= 0:
                acc ^= bits[i - j]
        out.append(acc)
    return out


def rm_rate_profile(n: int, k: int) -> RateProfile:
    """Reed-Muller style profile: rank the n synthetic positions by the
    binary weight of their 0-based index (ties broken toward higher index)
    and keep the k best."""
    if n & (n - 1) or n <= 0:
        raise ValueError(f"n must be a power of two, got {n}")
    if not 0 < k <= n:
        raise ValueError(f"k out of range: {k}")
    ranked = sorted(range(n), key=lambda i: (i.bit_count(), i), reverse=True)
    chosen = sorted(ranked[:k])
    return RateProfile(n, tuple(p + 1 for p in chosen))


PAC_PRECODE_POLY: tuple[int, ...] = (1, 0, 1, 1, 0, 1, 1)


def build_pac(profile: RateProfile, poly: Sequence[int] = PAC_PRECODE_POLY) -> LinearCode:
    """PAC code: place message bits per the rate profile, precode with the
    binary convolution poly (poly[0] is the current-bit tap and must be 1),
    then apply the polar transform."""
    if not poly or poly[0] != 1:
        raise ValueError("precoding polynomial must start with a 1 tap")
    if any(tap not in (0, 1) for tap in poly):
        raise ValueError("precoding polynomial taps must be 0/1")
    n = profile.n
    if n & (n - 1):
        raise ValueError(f"PAC length must be a power of two, got {n}")
    rows = []
    for pos in profile.info_positions:
        u = [0] * n
        u[pos - 1] = 1
        cw = _polar_transform(_convolve(u, poly))
        rows.append(BitVec.from_bits(cw))
    g = BitMatrix.from_bitvecs(rows)
    h_raw = gf2_nullspace(g)
    if h_raw is None or h_raw.nrows != n - profile.k:
        raise ValueError("rate profile does not yield an injective encoder")
    h, rank, _ = gf2_row_reduce(h_raw)
    assert rank == n - profile.k
    return LinearCode(f"pac{n}", g, h)


# ---------------------------------------------------------------------------
# Parity-check file format: first line "n k", then n-k rows of n '0'/'1' chars.

def save_parity_check(code: LinearCode, path: str) -> None:
    with open(path, "w", encoding="ascii") as f:
        f.write(f"{code.n} {code.k}\n")
        for row in code.H.row_vecs():
            f.write(row.to01() + "\n")


def load_parity_check(path: str) -> LinearCode:
    """Load a code from its parity-check matrix; H rows keep file order."""
    with open(path, "r", encoding="ascii") as f:
        lines = [ln.strip() for ln in f if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty parity-check file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"{path}: header must be 'n k', got {lines[0]!r}")
    try:
        n, k = int(head[0]), int(head[1])
    except ValueError as e:
        raise ValueError(f"{path}: non-integer header") from e
    if not 0 < k < n:
        raise ValueError(f"{path}: need 0 < k < n, got n={n} k={k}")
    body = lines[1:]
    if len(body) != n - k:
        raise ValueError(f"{path}: expected {n - k} rows, got {len(body)}")
    rows = []
    for idx, ln in enumerate(body, start=1):
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ValueError(f"{path}: row {idx} is not {n} binary digits")
        rows.append(BitVec.from_bits([int(c) for c in ln]))
    h = BitMatrix.from_bitvecs(rows)
    if gf2_rank(h) != n - k:
        raise ValueError(f"{path}: parity-check rows are not independent")
    g_raw = gf2_nullspace(h)
    assert g_raw is not None and g_raw.nrows == k
    name = os.path.splitext(os.path.basename(path))[0]
    return LinearCode(name, g_raw, h)


# ---------------------------------------------------------------------------

def resolve_code(token: str) -> LinearCode:
    """Map a CLI code id (ebch128, ebch8, pac64, file:PATH) to a LinearCode."""
    if token == "ebch128":
        return build_ebch(7, 3)
    if token == "ebch8":
        return build_ebch(3, 1)
    if token == "pac64":
        return build_pac(rm_rate_profile(64, 44), PAC_PRECODE_POLY)
    if token.startswith("file:"):
        return load_parity_check(token[len("file:"):])
    raise ValueError(f"unknown code id: {token!r}")
