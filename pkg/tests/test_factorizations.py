import numpy as np
import pytest
from numpy.testing import assert_array_equal

from factorkit import (
    DenseMatrix,
    Factorization,
    KIND_GAUSS_CHOLESKY,
    KIND_LU,
    NonSquareError,
    NotSymmetricError,
    Provenance,
    ShapeError,
    ZeroPivotError,
    gauss_cholesky,
    gauss_eliminate,
    identity,
    lu_from_record,
    matrix_hash,
    principal_sqrt,
    solve,
    transpose,
    vector,
    verify,
)

from conftest import GOLD_G, GOLD_L, GOLD_PIVOTS, GOLD_U, GOLD_X1, GOLD_X2
from oracles import classical_upper_cholesky, random_spd, random_symmetric


def _rel_fro(x, y):
    return np.linalg.norm(x - y) / np.linalg.norm(y)


class TestLuFromRecord:
    def test_golden_factors(self, golden_a):
        f = lu_from_record(gauss_eliminate(golden_a))
        assert f.kind == KIND_LU
        assert_array_equal(f.l.data, np.array(GOLD_L, dtype=float))
        assert_array_equal(f.u.data, np.array(GOLD_U, dtype=float))
        assert_array_equal(f.rebuild().data, golden_a.data)

    def test_identity(self):
        f = lu_from_record(gauss_eliminate(identity(4)))
        assert f.l == identity(4)
        assert f.u == identity(4)

    def test_provenance(self, golden_a):
        f = lu_from_record(gauss_eliminate(golden_a))
        assert f.provenance.matrix_hash == matrix_hash(golden_a)
        assert f.provenance.pivots == GOLD_PIVOTS
        assert f.provenance.flops == 34
        assert f.provenance.symmetry_tol is None

    def test_random_reconstruction(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            n = int(rng.integers(1, 25))
            a = rng.standard_normal((n, n))
            f = lu_from_record(gauss_eliminate(DenseMatrix(a)))
            assert _rel_fro(f.rebuild().data, a) <= 1e-11


class TestGaussCholesky:
    def test_golden_g(self, golden_a):
        f = gauss_cholesky(golden_a)
        assert f.kind == KIND_GAUSS_CHOLESKY
        assert_array_equal(f.g.data, np.array(GOLD_G, dtype=float))
        assert f.provenance.symmetry_tol == 1e-12

    def test_one_by_one(self):
        f = gauss_cholesky(DenseMatrix([[4]]))
        assert f.g == DenseMatrix([[2]])

    def test_negative_one_goes_complex(self):
        f = gauss_cholesky(DenseMatrix([[-1]]))
        assert f.g.is_complex
        assert f.g[0, 0] == 1j
        assert_array_equal(f.rebuild().data, np.array([[-1.0 + 0j]]))

    def test_symmetric_but_zero_pivot(self):
        # det = -1 is nonzero, yet no factorization exists without pivoting
        with pytest.raises(ZeroPivotError) as exc:
            gauss_cholesky(DenseMatrix([[0, 1], [1, 0]]))
        assert exc.value.column == 1

    def test_rejects_non_symmetric(self):
        with pytest.raises(NotSymmetricError) as exc:
            gauss_cholesky(DenseMatrix([[1, 2], [3, 4]]))
        assert exc.value.deviation == 1.0
        assert set(exc.value.at) == {1, 2}

    def test_rejects_hermitian_that_is_not_symmetric(self):
        a = DenseMatrix(np.array([[1, 1j], [-1j, 1]], dtype=complex))
        with pytest.raises(NotSymmetricError):
            gauss_cholesky(a)

    def test_rejects_non_square(self):
        with pytest.raises(NonSquareError):
            gauss_cholesky(DenseMatrix([[1, 2, 3], [2, 5, 6]]))

    def test_spd_stays_real_and_matches_classical_cholesky(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            n = int(rng.integers(1, 40))
            a = random_spd(rng, n)
            f = gauss_cholesky(DenseMatrix(a))
            assert not f.g.is_complex
            assert np.all(np.diagonal(f.g.data) > 0)
            c = classical_upper_cholesky(a)
            assert _rel_fro(f.g.data, c) <= 1e-9

    def test_indefinite_real_input_reports_negative_pivot(self):
        f = gauss_cholesky(DenseMatrix([[1, 2], [2, 1]]))
        assert f.provenance.pivots == (1.0, -3.0)
        assert f.g.is_complex
        assert _rel_fro(f.rebuild().data, np.array([[1, 2], [2, 1]], dtype=complex)) <= 1e-14

    def test_complex_symmetric_reconstruction(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            n = int(rng.integers(1, 20))
            a = random_symmetric(rng, n, complex_entries=True)
            try:
                f = gauss_cholesky(DenseMatrix(a))
            except ZeroPivotError:
                continue
            assert _rel_fro(f.rebuild().data, a) <= 1e-9

    def test_diagonal_equals_principal_root_of_pivot(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            a = random_symmetric(rng, 6)
            try:
                f = gauss_cholesky(DenseMatrix(a))
            except ZeroPivotError:
                continue
            for i, p in enumerate(f.provenance.pivots):
                assert f.g[i, i] == principal_sqrt(p)

    def test_row_scaling_identity_from_the_construction(self):
        # L(A) diag(sqrt(u_ii)) must equal transpose(diag(1/sqrt(u_ii)) U(A))
        rng = np.random.default_rng(10)
        for _ in range(10):
            a = random_symmetric(rng, 7)
            try:
                record = gauss_eliminate(DenseMatrix(a))
            except ZeroPivotError:
                continue
            roots = np.array([principal_sqrt(p) for p in record.pivots])
            l = np.eye(7) + record.multipliers.data
            lhs = l * roots[None, :]
            rhs = (record.u.data / roots[:, None]).T
            assert np.linalg.norm(lhs - rhs) <= 1e-11 * np.linalg.norm(rhs)


class TestSolve:
    def test_golden_gauss_cholesky_solve(self, golden_a, golden_b2):
        report = solve(gauss_cholesky(golden_a), golden_b2)
        assert_array_equal(report.solutions.data.ravel(), np.array(GOLD_X2, dtype=float))
        assert report.residuals[0] <= 1e-14
        assert report.method == KIND_GAUSS_CHOLESKY

    def test_golden_lu_solve(self, golden_a, golden_b1):
        report = solve(lu_from_record(gauss_eliminate(golden_a)), golden_b1)
        assert_array_equal(report.solutions.data.ravel(), np.array(GOLD_X1, dtype=float))
        assert report.residuals[0] <= 1e-14

    def test_zero_rhs_gives_zero_solution(self, golden_a):
        report = solve(gauss_cholesky(golden_a), vector([0, 0, 0, 0]))
        assert not np.any(report.solutions.data)

    def test_multi_column(self, golden_a, golden_b1, golden_b2):
        f = gauss_cholesky(golden_a)
        both = DenseMatrix(np.hstack([golden_b1.data, golden_b2.data]))
        report = solve(f, both)
        assert report.solutions.column(0) == vector(GOLD_X1)
        assert report.solutions.column(1) == vector(GOLD_X2)
        assert len(report.residuals) == 2

    def test_substitution_flops(self, golden_a, golden_b1):
        # n = 4: unit forward 12 + back 16 for lu; 16 + 16 for gauss-cholesky
        assert solve(lu_from_record(gauss_eliminate(golden_a)), golden_b1).flops == 28
        assert solve(gauss_cholesky(golden_a), golden_b1).flops == 32

    def test_rhs_shape_mismatch(self, golden_a):
        with pytest.raises(ShapeError):
            solve(gauss_cholesky(golden_a), vector([1, 2]))

    def test_lu_and_gc_agree_on_symmetric_systems(self):
        rng = np.random.default_rng(12)
        for _ in range(15):
            n = int(rng.integers(2, 9))
            a = random_symmetric(rng, n)
            b = vector(rng.uniform(-1, 1, n))
            try:
                am = DenseMatrix(a)
                x_lu = solve(lu_from_record(gauss_eliminate(am)), b).solutions.data
                x_gc = solve(gauss_cholesky(am), b).solutions.data
            except ZeroPivotError:
                continue
            assert np.linalg.norm(x_lu - x_gc) <= 1e-9 * np.linalg.norm(x_lu)


class TestVerifyAndValidation:
    def test_verify_golden(self, golden_a):
        assert verify(gauss_cholesky(golden_a), golden_a) <= 1e-14

    def test_verify_lu_identity(self):
        assert verify(lu_from_record(gauss_eliminate(identity(3))), identity(3)) == 0.0

    def test_verify_random_spd(self):
        rng = np.random.default_rng(13)
        a = random_spd(rng, 20)
        assert verify(gauss_cholesky(DenseMatrix(a)), DenseMatrix(a)) <= 1e-12

    def test_verify_shape_mismatch(self, golden_a):
        with pytest.raises(ShapeError):
            verify(gauss_cholesky(golden_a), identity(3))

    def test_construction_rejects_wrong_kind(self, golden_a):
        record = gauss_eliminate(golden_a)
        prov = Provenance(record.source_hash, record.pivots, record.flops)
        with pytest.raises(ValueError):
            Factorization(kind="qr", n=4, provenance=prov, u=record.u)

    def test_construction_rejects_missing_factors(self, golden_a):
        record = gauss_eliminate(golden_a)
        prov = Provenance(record.source_hash, record.pivots, record.flops)
        with pytest.raises(ValueError):
            Factorization(kind=KIND_LU, n=4, provenance=prov, u=record.u)

    def test_construction_rejects_non_unit_l(self, golden_a):
        record = gauss_eliminate(golden_a)
        prov = Provenance(record.source_hash, record.pivots, record.flops)
        with pytest.raises(ValueError, match="unit diagonal"):
            Factorization(kind=KIND_LU, n=4, provenance=prov, l=DenseMatrix(2 * np.eye(4)), u=record.u)

    def test_construction_rejects_zero_diagonal_g(self):
        prov = Provenance("0" * 16, (0.0,), 0)
        with pytest.raises(ValueError, match="negligible"):
            Factorization(kind=KIND_GAUSS_CHOLESKY, n=2, provenance=prov, g=DenseMatrix([[1, 1], [0, 0]]))

    def test_transpose_of_g_is_not_stored(self, golden_a):
        f = gauss_cholesky(golden_a)
        assert f.l is None and f.u is None
        assert transpose(f.g) == DenseMatrix(np.array(GOLD_G, dtype=float).T)
