"""Dense exact linear algebra over a prime field.

Matrices hold int64 residues in [0, p) with p below 2^31, so every product
of two residues fits in a 64-bit intermediate.  Elimination is deterministic
(leftmost pivot column, topmost pivot row): ranks and kernel bases are
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_MODULUS = 2147483647  # prime below 2^31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    # deterministic Miller-Rabin; the base set is exact far past 2^31
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldConfig:
    """Prime modulus plus the seed that drives all sampling."""

    modulus: int = DEFAULT_MODULUS
    seed: int = 0

    def __post_init__(self):
        if not 2 < self.modulus < 2 ** 31:
            raise ValueError(f"modulus must lie in (2, 2^31), got {self.modulus}")
        if not _is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit non-negative integer")


@dataclass(frozen=True, eq=False)
class FMatrix:
    """Row-major matrix of residues in [0, p)."""

    rows: int
    cols: int
    modulus: int
    entries: np.ndarray  # shape (rows, cols), dtype int64, reduced mod p

    def __post_init__(self):
        if self.entries.shape != (self.rows, self.cols):
            raise ValueError(
                f"entry array shape {self.entries.shape} does not match {(self.rows, self.cols)}"
            )
        if self.entries.dtype != np.int64:
            raise ValueError("entries must be int64")
        if self.entries.size and not (
            (self.entries >= 0).all() and (self.entries < self.modulus).all()
        ):
            raise ValueError("entries must be residues in [0, modulus)")

    @classmethod
    def from_rows(cls, rows_data, modulus, cols=None):
        """Build a matrix from an iterable of rows, reducing entries mod p."""
        data = [list(row) for row in rows_data]
        if not data:
            if cols is None:
                raise ValueError("cannot infer the column count of an empty matrix")
            return cls(0, cols, modulus, np.zeros((0, cols), dtype=np.int64))
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged rows: all rows must have the same length")
        a = np.array(data, dtype=np.int64) % modulus
        return cls(a.shape[0], a.shape[1], modulus, a)

    def transpose(self):
        return FMatrix(self.cols, self.rows, self.modulus, self.entries.T.copy())


def _rref(m):
    """Reduced row echelon form; returns (array, pivot column list)."""
    p = m.modulus
    a = m.entries.copy()
    pivots = []
    row = 0
    for col in range(m.cols):
        if row == m.rows:
            break
        hit = np.nonzero(a[row:, col])[0]
        if hit.size == 0:
            continue
        first = row + int(hit[0])
        if first != row:
            a[[row, first]] = a[[first, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = a[row] * inv % p
        others = np.nonzero(a[:, col])[0]
        others = others[others != row]
        if others.size:
            # residue products stay below 2^62, inside int64
            a[others] = (a[others] - a[others, col][:, None] * a[row]) % p
        pivots.append(col)
        row += 1
    return a, pivots


def rank(m):
    """Rank over the prime field."""
    return len(_rref(m)[1])


def kernel_basis(m):
    """Basis of the right kernel, one vector per row.

    The row count is cols - rank(m) and m times each row transposed is
    zero.  Derived from the reduced echelon form, so the basis only depends
    on the row space of the input.
    """
    p = m.modulus
    a, pivots = _rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((len(free), m.cols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = (-int(a[ri, fc])) % p
    return FMatrix(len(free), m.cols, p, basis)


def row_space_rank(stack):
    """Rank of the vertical concatenation of equally wide matrices."""
    mats = list(stack)
    if not mats:
        raise ValueError("cannot stack zero matrices")
    cols = mats[0].cols
    p = mats[0].modulus
    for m in mats:
        if m.cols != cols:
            raise ValueError(f"column counts differ: {m.cols} vs {cols}")
        if m.modulus != p:
            raise ValueError(f"moduli differ: {m.modulus} vs {p}")
    joined = np.vstack([m.entries for m in mats])
    return rank(FMatrix(joined.shape[0], cols, p, joined))
