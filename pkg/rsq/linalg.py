"""
Exact dense linear algebra over Q and prime fields F_p.

Matrices are numpy arrays: int64 residues for F_p (p < 2**31), object
arrays of Fraction for Q. Products over F_p go through Python integers so
that accumulation cannot overflow. A single reduced-row-echelon routine
backs rank, kernels, solving and inversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from rsq.errors import InputFormatError, ShapeMismatchError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Rationals when prime is None, otherwise F_prime."""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None:
            if not _is_prime(self.prime) or self.prime >= 2 ** 31:
                raise InputFormatError(f"Field characteristic must be a prime below 2^31, got {self.prime}.")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """'q' for the rationals, 'fp:P' for F_P."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(None)
        if text.startswith("fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError:
                pass
        raise InputFormatError(f"Unknown field {text!r}; expected 'q' or 'fp:P'.")

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "q" if self.prime is None else f"fp:{self.prime}"

    # --------------------- Scalars ---------------------
    def scalar(self, value):
        if self.prime is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return int(value.numerator) * pow(int(value.denominator), self.prime - 2, self.prime) % self.prime
        return int(value) % self.prime

    def inv(self, value):
        if value == 0:
            raise ZeroDivisionError("Inverse of zero.")
        if self.prime is None:
            return 1 / Fraction(value)
        return pow(int(value), self.prime - 2, self.prime)

    def to_int(self, value) -> int:
        """Canonical integer for JSON output (residue, or the rational when integral)."""
        if self.prime is None:
            value = Fraction(value)
            if value.denominator != 1:
                raise ValueError("Non-integral rational entry.")
            return int(value)
        return int(value)

    # --------------------- Arrays ---------------------
    def _normalize(self, arr: np.ndarray) -> np.ndarray:
        if self.prime is None:
            out = np.empty(arr.shape, dtype=object)
            flat_in, flat_out = arr.reshape(-1), out.reshape(-1)
            for i, x in enumerate(flat_in):
                flat_out[i] = Fraction(x)
            return out
        return np.mod(arr.astype(object), self.prime).astype(np.int64)

    def matrix(self, data, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
        """Field matrix from nested lists (or an array); shape is needed for empty data."""
        arr = np.array(data, dtype=object)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            raise InputFormatError("Matrices must be two-dimensional.")
        return self._normalize(arr)

    def vector(self, data) -> np.ndarray:
        return self._normalize(np.array(data, dtype=object).reshape(-1))

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.prime is None:
            return self._normalize(np.zeros((rows, cols), dtype=object))
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] != b.shape[0]:
            raise ShapeMismatchError(f"Cannot multiply {a.shape} by {b.shape}.")
        if a.shape[-1] == 0:
            return self.zeros(a.shape[0], b.shape[1]) if b.ndim == 2 else self.vector([0] * a.shape[0])
        prod = np.dot(a.astype(object), b.astype(object))
        return self._normalize(np.asarray(prod, dtype=object))

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._normalize(a.astype(object) + b.astype(object))

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._normalize(a.astype(object) - b.astype(object))

    def scale(self, c, a: np.ndarray) -> np.ndarray:
        return self._normalize(self.scalar(c) * a.astype(object))

    def neg(self, a: np.ndarray) -> np.ndarray:
        return self.scale(-1, a)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ra, ca = a.shape
        rb, cb = b.shape
        out = self.zeros(ra * rb, ca * cb)
        for i in range(ra):
            for j in range(ca):
                if a[i, j] != 0:
                    out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = self.scale(a[i, j], b)
        return out

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int, bound: int = 3) -> np.ndarray:
        """Random entries; small integers over Q, uniform residues over F_p."""
        if self.prime is None:
            data = rng.integers(-bound, bound + 1, size=(rows, cols))
        else:
            data = rng.integers(0, self.prime, size=(rows, cols))
        return self.matrix(data.tolist(), (rows, cols))


def is_zero(a: np.ndarray) -> bool:
    return not np.any(a != 0)


def block_diag(field: FieldSpec, blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = field.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r, c = r + b.shape[0], c + b.shape[1]
    return out


# --------------------- Elimination ---------------------
def rref(field: FieldSpec, m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form.

    Returns:
        tuple: (R, pivot_cols)
    """
    work = m.astype(object).copy()
    rows, cols = work.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = [i for i in range(r, rows) if work[i, c] != 0]
        if not nonzero:
            continue
        i = nonzero[0]
        if i != r:
            work[[r, i]] = work[[i, r]]
        work[r] = field._normalize(work[r] * field.inv(work[r, c]))
        for i in range(rows):
            if i != r and work[i, c] != 0:
                work[i] = field._normalize(work[i] - work[i, c] * work[r])
        pivots.append(c)
        r += 1
    return field._normalize(work), pivots


def rank(field: FieldSpec, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(field, m)[1])


def rank_kernel(field: FieldSpec, m: np.ndarray) -> Tuple[int, np.ndarray]:
    """
    Rank and kernel basis of m.

    Returns:
        tuple: (rank, K) with K of shape (cols, cols - rank) in reduced
        column-echelon form: K^T is the reduced row echelon form of any kernel basis.
    """
    rows, cols = m.shape
    if rows == 0:
        return 0, field.eye(cols)
    R, pivots = rref(field, m)
    free = [c for c in range(cols) if c not in pivots]
    kernel = field.zeros(cols, len(free))
    for j, f in enumerate(free):
        kernel[f, j] = field.scalar(1)
        for k, pc in enumerate(pivots):
            kernel[pc, j] = field.scalar(-R[k, f])
    if free:
        # standard solutions -> echelon columns
        echelon, _ = rref(field, kernel.T)
        kernel = field._normalize(np.ascontiguousarray(echelon[:len(free)].T))
    return len(pivots), kernel


def nullity(field: FieldSpec, m: np.ndarray) -> int:
    return m.shape[1] - rank(field, m)


class Solution(NamedTuple):
    particular: np.ndarray
    kernel: np.ndarray


def solve_all(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> Optional[Solution]:
    """
    All solutions X of A X = B.

    Returns:
        Solution(particular, kernel) or None when the system is inconsistent
    """
    if a.shape[0] != b.shape[0]:
        raise ShapeMismatchError(f"A has {a.shape[0]} rows, B has {b.shape[0]}.")
    n = a.shape[1]
    _, kernel = rank_kernel(field, a)
    particular = field.zeros(n, b.shape[1])
    if a.shape[0] == 0:
        return Solution(particular, kernel)
    R, pivots = rref(field, np.hstack([a.astype(object), b.astype(object)]))
    if any(pc >= n for pc in pivots):
        return None
    for k, pc in enumerate(pivots):
        particular[pc, :] = R[k, n:]
    return Solution(particular, kernel)


def inverse(field: FieldSpec, m: np.ndarray) -> Optional[np.ndarray]:
    """Inverse of a square matrix, None when singular."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeMismatchError(f"Inverse of non-square {m.shape}.")
    if n == 0:
        return field.zeros(0, 0)
    R, pivots = rref(field, np.hstack([m.astype(object), field.eye(n).astype(object)]))
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] >= n:
        return None
    return field._normalize(R[:, n:])


def column_space(field: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Basis of the column space: the pivot columns of m."""
    if m.shape[1] == 0 or m.shape[0] == 0:
        return field.zeros(m.shape[0], 0)
    _, pivots = rref(field, m)
    return m[:, pivots]


def complement_columns(field: FieldSpec, basis: np.ndarray) -> np.ndarray:
    """Standard basis vectors completing the columns of basis to a basis of the ambient space."""
    n = basis.shape[0]
    if basis.shape[1] == 0:
        return field.eye(n)
    _, pivots = rref(field, basis.T)
    free = [c for c in range(n) if c not in pivots]
    return field.eye(n)[:, free]


def is_nilpotent(field: FieldSpec, m: np.ndarray) -> bool:
    n = m.shape[0]
    power = m
    for _ in range(max(1, n.bit_length())):
        power = field.matmul(power, power)
    return is_zero(power)
