"""Packaged factorizations built from an elimination pass.

Two kinds are supported:

* ``lu``: A = L U with L the unit lower-triangular multiplier matrix and U
  the eliminated upper triangle.
* ``gauss-cholesky``: for symmetric A (complex symmetric allowed, no
  conjugation), A = G^T G where G is U with row i divided by the principal
  square root of the pivot u_ii. Real symmetric positive definite input
  stays entirely real on the same code path; a negative pivot simply makes
  G complex. No positive-definiteness proof is attempted or required.

Both kinds are immutable once constructed and may serve any number of
concurrent solves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elimination import EliminationRecord, _solve_lower, _solve_upper, gauss_eliminate
from .errors import NonSquareError, NotSymmetricError, ShapeError
from .matrices import (
    DEFAULT_SYMMETRY_TOL,
    EPS,
    DenseMatrix,
    matmul,
    principal_sqrt,
    residual_norm,
    transpose,
)

__all__ = [
    "Factorization",
    "KIND_GAUSS_CHOLESKY",
    "KIND_LU",
    "Provenance",
    "SolveReport",
    "gauss_cholesky",
    "gauss_cholesky_from_record",
    "lu_from_record",
    "solve",
    "verify",
]

KIND_LU = "lu"
KIND_GAUSS_CHOLESKY = "gauss-cholesky"

# Default bound on the relative Frobenius reconstruction error accepted as
# "this factorization reproduces its source".
DEFAULT_RECONSTRUCTION_TOL = 1e-10


@dataclass(frozen=True)
class Provenance:
    """Where a factorization came from: source hash, pivot sequence, cost."""

    matrix_hash: str
    pivots: tuple
    flops: int
    symmetry_tol: float | None = None


@dataclass(frozen=True)
class SolveReport:
    """Solutions (one column per right-hand side) with quality and cost."""

    solutions: DenseMatrix
    residuals: tuple[float, ...]
    flops: int
    method: str


def _check_factor(m: DenseMatrix, n: int, lower: bool, unit: bool, name: str) -> None:
    if m.shape != (n, n):
        raise ShapeError(f"factor {name} must be {n}x{n}, got {m.rows}x{m.cols}")
    off = np.triu(m.data, 1) if lower else np.tril(m.data, -1)
    if np.count_nonzero(off):
        raise ValueError(f"factor {name} must be exactly {'lower' if lower else 'upper'} triangular")
    diag = np.diagonal(m.data)
    if unit:
        if not np.all(diag == 1.0):
            raise ValueError(f"factor {name} must have a unit diagonal")
    elif np.min(np.abs(diag)) <= n * EPS * m.max_abs():
        raise ValueError(f"factor {name} has a negligible diagonal entry")


@dataclass(frozen=True)
class Factorization:
    """A tagged factorization: LU factors, or the single G of A = G^T G."""

    kind: str
    n: int
    provenance: Provenance
    l: DenseMatrix | None = None
    u: DenseMatrix | None = None
    g: DenseMatrix | None = None

    def __post_init__(self):
        if self.kind == KIND_LU:
            if self.l is None or self.u is None or self.g is not None:
                raise ValueError("an lu factorization carries exactly l and u")
            _check_factor(self.l, self.n, lower=True, unit=True, name="l")
            _check_factor(self.u, self.n, lower=False, unit=False, name="u")
        elif self.kind == KIND_GAUSS_CHOLESKY:
            if self.g is None or self.l is not None or self.u is not None:
                raise ValueError("a gauss-cholesky factorization carries exactly g")
            _check_factor(self.g, self.n, lower=False, unit=False, name="g")
        else:
            raise ValueError(f"unknown factorization kind {self.kind!r}")

    def rebuild(self) -> DenseMatrix:
        """Multiply the factors back together."""
        if self.kind == KIND_LU:
            return matmul(self.l, self.u)
        return matmul(transpose(self.g), self.g)


def lu_from_record(record: EliminationRecord) -> Factorization:
    """Package an elimination record as A = L U."""
    n = record.n
    l = np.eye(n, dtype=record.multipliers.data.dtype) + record.multipliers.data
    return Factorization(
        kind=KIND_LU,
        n=n,
        l=DenseMatrix(l),
        u=record.u,
        provenance=Provenance(
            matrix_hash=record.source_hash,
            pivots=record.pivots,
            flops=record.flops,
        ),
    )


def gauss_cholesky_from_record(
    record: EliminationRecord, symmetry_tol: float = DEFAULT_SYMMETRY_TOL
) -> Factorization:
    """Scale an elimination record of a symmetric matrix into A = G^T G.

    Row i of U is divided by the principal square root of the pivot u_ii;
    the diagonal itself is set to that root (the algebraically identical
    form of u_ii divided by it). The caller is responsible for having
    checked symmetry of the source.
    """
    n = record.n
    roots = np.array([principal_sqrt(p) for p in record.pivots])
    g = record.u.data / roots[:, None]
    idx = np.arange(n)
    g[idx, idx] = roots
    # n square roots plus one division per strictly-upper entry.
    build_flops = n + n * (n - 1) // 2
    return Factorization(
        kind=KIND_GAUSS_CHOLESKY,
        n=n,
        g=DenseMatrix(g),
        provenance=Provenance(
            matrix_hash=record.source_hash,
            pivots=record.pivots,
            flops=record.flops + build_flops,
            symmetry_tol=symmetry_tol,
        ),
    )


def require_symmetric(a: DenseMatrix, tol: float = DEFAULT_SYMMETRY_TOL) -> None:
    """Raise ``NotSymmetricError`` unless a_ij == a_ji within tolerance."""
    deviation, at = a.symmetry_deviation()
    bound = tol * max(1.0, a.max_abs())
    if deviation > bound:
        raise NotSymmetricError(deviation, at, bound)


def gauss_cholesky(a: DenseMatrix, symmetry_tol: float = DEFAULT_SYMMETRY_TOL) -> Factorization:
    """Factor a symmetric matrix as A = G^T G via no-pivot elimination.

    Raises ``NotSymmetricError`` when the input is not symmetric (Hermitian
    complex input does not qualify) and propagates ``ZeroPivotError`` when
    elimination stalls; a nonzero determinant alone does not guarantee
    success, every leading pivot must be nonzero.
    """
    if not a.is_square:
        raise NonSquareError(a.rows, a.cols)
    require_symmetric(a, symmetry_tol)
    return gauss_cholesky_from_record(gauss_eliminate(a), symmetry_tol)


def solve(f: Factorization, b: DenseMatrix) -> SolveReport:
    """Solve A x = b through the factors, one forward and one back substitution.

    ``b`` may carry any number of columns; each is solved independently.
    Residuals are measured against the reconstructed matrix, since the
    factorization does not retain its source.
    """
    if b.rows != f.n:
        raise ShapeError(f"right-hand side has {b.rows} rows, factorization is for n = {f.n}")
    if f.kind == KIND_LU:
        y, fl_forward = _solve_lower(f.l.data, b.data, unit_diagonal=True)
        x, fl_back = _solve_upper(f.u.data, y)
    else:
        y, fl_forward = _solve_lower(f.g.data.T, b.data)
        x, fl_back = _solve_upper(f.g.data, y)
    solutions = DenseMatrix(x)
    rebuilt = f.rebuild()
    residuals = tuple(
        residual_norm(rebuilt, solutions.column(j), b.column(j)) for j in range(b.cols)
    )
    return SolveReport(
        solutions=solutions,
        residuals=residuals,
        flops=fl_forward + fl_back,
        method=f.kind,
    )


def verify(f: Factorization, a: DenseMatrix) -> float:
    """Relative Frobenius error of the reconstruction against ``a``."""
    if a.shape != (f.n, f.n):
        raise ShapeError(f"matrix is {a.rows}x{a.cols}, factorization is for n = {f.n}")
    diff = float(np.linalg.norm(f.rebuild().data - a.data))
    denom = float(np.linalg.norm(a.data))
    if denom == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return diff / denom
