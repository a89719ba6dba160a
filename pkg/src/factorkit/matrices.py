"""Dense matrices, vectors, and scalar helpers used by all solvers.

Entries are IEEE doubles: real matrices hold float64, complex ones
complex128 (stored as re/im pairs). Complex symmetry throughout this
library means a_ij == a_ji with no conjugation.

Indexing convention, stated once for the whole package: documentation,
error messages, and reports use 1-based row/column indices; Python-level
access (``m.data``, ``m[i, j]``, ``m.column(j)``) is 0-based.
"""

from __future__ import annotations

import cmath
import hashlib
import math
from typing import Union

import numpy as np

from .errors import ShapeError

__all__ = [
    "DEFAULT_SYMMETRY_TOL",
    "EPS",
    "DenseMatrix",
    "Scalar",
    "Vector",
    "canonical_text",
    "format_entry",
    "identity",
    "matmul",
    "matrix_hash",
    "principal_sqrt",
    "residual_norm",
    "transpose",
    "vector",
]

Scalar = Union[float, complex]

EPS = float(np.finfo(np.float64).eps)

# Relative symmetry tolerance: max|a_ij - a_ji| <= tol * max(1, max|a_ij|).
DEFAULT_SYMMETRY_TOL = 1e-12


def _coerce_entries(entries) -> np.ndarray:
    arr = np.array(entries, copy=True)
    if arr.dtype.kind in "iub":
        arr = arr.astype(np.float64)
    elif arr.dtype.kind == "f":
        arr = arr.astype(np.float64, copy=False)
    elif arr.dtype.kind == "c":
        arr = arr.astype(np.complex128, copy=False)
    else:
        raise TypeError(f"matrix entries must be real or complex numbers, got dtype {arr.dtype}")
    return arr


class DenseMatrix:
    """An immutable dense matrix of float64 or complex128 entries.

    Construction rejects non-finite entries (NaN/Inf) outright so that a
    bad value is reported at its source rather than deep inside a solve.
    """

    __slots__ = ("_data",)

    def __init__(self, entries):
        if isinstance(entries, DenseMatrix):
            entries = entries._data
        arr = _coerce_entries(entries)
        if arr.ndim != 2:
            raise ShapeError(f"matrix entries must be two-dimensional, got {arr.ndim} dimension(s)")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"matrix dimensions must be positive, got {arr.shape[0]}x{arr.shape[1]}")
        if not np.isfinite(arr).all():
            i, j = np.argwhere(~np.isfinite(arr))[0]
            raise ValueError(f"non-finite entry at ({i + 1},{j + 1}): {arr[i, j]}")
        arr.setflags(write=False)
        self._data = arr

    @property
    def data(self) -> np.ndarray:
        """The underlying read-only ndarray."""
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_complex(self) -> bool:
        return self._data.dtype.kind == "c"

    @property
    def field(self) -> str:
        return "complex" if self.is_complex else "real"

    def __getitem__(self, index):
        value = self._data[index]
        if np.isscalar(value) or value.ndim == 0:
            return value.item()
        return value

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._data, dtype=dtype)

    def column(self, j: int) -> "DenseMatrix":
        """Column ``j`` (0-based) as an n-by-1 matrix."""
        return DenseMatrix(self._data[:, j : j + 1])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._data)))

    def symmetry_deviation(self) -> tuple[float, tuple[int, int]]:
        """Largest |a_ij - a_ji| and its 1-based location."""
        if not self.is_square:
            raise ShapeError("symmetry is only defined for square matrices")
        diff = np.abs(self._data - self._data.T)
        i, j = np.unravel_index(np.argmax(diff), diff.shape)
        return float(diff[i, j]), (int(i) + 1, int(j) + 1)

    def is_symmetric(self, tol: float = DEFAULT_SYMMETRY_TOL) -> bool:
        deviation, _ = self.symmetry_deviation()
        return deviation <= tol * max(1.0, self.max_abs())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None  # value equality; use matrix_hash for content addressing

    def __repr__(self) -> str:
        return f"DenseMatrix({self.rows}x{self.cols} {self.field})"


#: A vector is simply an n-by-1 DenseMatrix.
Vector = DenseMatrix


def vector(values) -> DenseMatrix:
    """Build an n-by-1 column vector from a flat sequence."""
    arr = _coerce_entries(values)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[1] != 1:
        raise ShapeError(f"a vector must be a flat sequence or an n-by-1 matrix, got shape {arr.shape}")
    return DenseMatrix(arr)


def identity(n: int) -> DenseMatrix:
    return DenseMatrix(np.eye(n))


def principal_sqrt(z: Scalar) -> Scalar:
    """Principal square root: Re > 0, or Re == 0 with Im >= 0.

    Real non-negative input yields a real result; everything else is complex.
    """
    if isinstance(z, complex) or isinstance(z, np.complexfloating):
        z = complex(z)
        if not cmath.isfinite(z):
            raise ValueError(f"square root requires a finite value, got {z}")
        w = cmath.sqrt(z)
        # cmath picks the branch cut side from the sign of Im(z); fold the
        # negative-imaginary edge back onto the principal branch.
        if w.real < 0.0 or (w.real == 0.0 and w.imag < 0.0):
            w = -w
        return w
    x = float(z)
    if not math.isfinite(x):
        raise ValueError(f"square root requires a finite value, got {x}")
    if x >= 0.0:
        return math.sqrt(x)
    return complex(0.0, math.sqrt(-x))


def matmul(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Standard matrix product."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return DenseMatrix(a.data @ b.data)


def transpose(a: DenseMatrix) -> DenseMatrix:
    """Transpose without conjugation."""
    return DenseMatrix(a.data.T)


def residual_norm(a: DenseMatrix, x: Vector, b: Vector) -> float:
    """Scaled residual ``||A x - b||_inf / max(1, ||b||_inf)``."""
    if x.cols != 1 or b.cols != 1:
        raise ShapeError("residual_norm expects single-column x and b")
    if a.cols != x.rows or a.rows != b.rows:
        raise ShapeError(
            f"shapes do not conform: A is {a.rows}x{a.cols}, x has {x.rows} rows, b has {b.rows} rows"
        )
    r = a.data @ x.data - b.data
    return float(np.max(np.abs(r)) / max(1.0, np.max(np.abs(b.data))))


def format_entry(value: Scalar) -> str:
    """Shortest exact decimal rendering; complex values as ``re,im``."""
    if isinstance(value, complex) or isinstance(value, np.complexfloating):
        v = complex(value)
        return f"{float(v.real)!r},{float(v.imag)!r}"
    return repr(float(value))


def canonical_text(m: DenseMatrix) -> str:
    """Canonical textual rendering of a matrix.

    One header line ``matrix <rows> <cols> <field>`` followed by one
    whitespace-separated line per row. This is also the on-disk matrix
    format, so hashing this text content-addresses the file.
    """
    lines = [f"matrix {m.rows} {m.cols} {m.field}"]
    for i in range(m.rows):
        lines.append(" ".join(format_entry(v) for v in m.data[i]))
    return "\n".join(lines) + "\n"


def matrix_hash(m: DenseMatrix) -> str:
    """64-bit content hash of the canonical rendering, as 16 hex digits."""
    return hashlib.blake2b(canonical_text(m).encode("ascii"), digest_size=8).hexdigest()
