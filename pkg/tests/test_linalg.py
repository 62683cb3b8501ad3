import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_density, rand_herm
from wyskew import (
    DensityMatrix,
    DimensionMismatchError,
    HermitianOperator,
    ValidationError,
    commutator,
    frobenius_norm,
    partial_trace,
    psd_sqrt,
    spectral_decompose,
    tensor,
)
from wyskew.catalog import bell_states, pauli
from wyskew.linalg import dump_matrix_json, parse_matrix_json

S1, S2, S3 = (o.matrix for o in pauli())
I2 = np.eye(2)


def test_hermitian_symmetrizes_exactly(rng):
    z = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    h = z + z.conj().T
    h[0, 1] += 1e-13  # within tolerance
    op = HermitianOperator(h)
    assert np.array_equal(op.matrix, op.matrix.conj().T)
    assert not op.matrix.flags.writeable


@pytest.mark.parametrize(
    "bad",
    [
        [[0, 1], [0, 0]],
        [[1, 2, 3]],
        [[np.nan, 0], [0, 1]],
        np.eye(65),
    ],
)
def test_hermitian_rejects(bad):
    with pytest.raises(ValidationError):
        HermitianOperator(bad)


def test_operator_arithmetic_and_dims():
    x, y, _ = pauli()
    assert np.array_equal((x + y).matrix, S1 + S2)
    assert np.array_equal((2 * x - y).matrix, 2 * S1 - S2)
    with pytest.raises(DimensionMismatchError):
        x + HermitianOperator(np.eye(3))


def test_spectral_decompose_diagonal():
    w, v = spectral_decompose(np.diag([1.0, 3.0]))
    np.testing.assert_array_equal(w, [3.0, 1.0])
    np.testing.assert_allclose(np.abs(v), [[0, 1], [1, 0]])


def test_spectral_decompose_pauli_x():
    w, v = spectral_decompose(S1)
    np.testing.assert_allclose(w, [1, -1], atol=1e-15)
    # eigenvectors up to phase
    assert abs(abs(np.vdot(v[:, 0], [1, 1])) / np.sqrt(2) - 1) < 1e-12
    assert abs(abs(np.vdot(v[:, 1], [1, -1])) / np.sqrt(2) - 1) < 1e-12


def test_spectral_decompose_random_reconstruction():
    h = rand_herm(5, np.random.default_rng(5))
    w, v = spectral_decompose(h)
    assert np.all(np.diff(w) <= 0)
    assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - h.matrix) < 1e-9
    assert np.linalg.norm(v.conj().T @ v - np.eye(5)) < 1e-9


def test_density_validation():
    with pytest.raises(ValidationError, match="trace"):
        DensityMatrix(np.eye(2))
    with pytest.raises(ValidationError, match="negative"):
        DensityMatrix(np.diag([1.2, -0.2]))
    # tiny negative eigenvalue is clamped
    rho = DensityMatrix(np.diag([1 + 5e-11, -5e-11]))
    assert rho.eigenvalues[-1] == 0.0


def test_psd_sqrt_examples():
    np.testing.assert_allclose(psd_sqrt(DensityMatrix(I2 / 2)).matrix, I2 / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(psd_sqrt(DensityMatrix(np.diag([1.0, 0.0]))).matrix, np.diag([1.0, 0.0]), atol=1e-15)


def test_psd_sqrt_bloch_against_2x2_formula():
    a = np.sqrt(3) / 2
    rho = DensityMatrix(0.5 * (I2 + a * S1))
    lp, lm = 0.5 * (1 + a), 0.5 * (1 - a)
    # sigma_1 eigenprojectors
    pp, pm = 0.5 * (I2 + S1), 0.5 * (I2 - S1)
    expected = np.sqrt(lp) * pp + np.sqrt(lm) * pm
    np.testing.assert_allclose(psd_sqrt(rho).matrix, expected, atol=1e-14)


def test_psd_sqrt_squares_back(rng):
    for _ in range(100):
        d = int(rng.integers(2, 9))
        rank = int(rng.integers(1, d + 1))
        rho = rand_density(d, rng, rank=rank)
        s = psd_sqrt(rho).matrix
        assert np.linalg.norm(s @ s - rho.array) < 1e-9
        assert np.linalg.eigvalsh(s).min() > -1e-12


def test_commutator_examples():
    np.testing.assert_allclose(commutator(S1, S2), 2j * S3)
    h = rand_herm(4, np.random.default_rng(1))
    assert np.all(commutator(h, h) == 0)
    np.testing.assert_allclose(commutator(np.diag([1.0, 2.0]), S1), [[0, -1], [1, 0]])
    with pytest.raises(DimensionMismatchError):
        commutator(I2, np.eye(3))


def test_commutator_anti_hermitian(rng):
    for _ in range(50):
        d = int(rng.integers(2, 7))
        c = commutator(rand_density(d, rng).sqrt, rand_herm(d, rng))
        assert np.max(np.abs(c + c.conj().T)) < 1e-12


def test_frobenius_norm():
    assert frobenius_norm(I2) == pytest.approx(np.sqrt(2))
    assert frobenius_norm(S1) == pytest.approx(np.sqrt(2))
    assert frobenius_norm(np.full((3, 3), 1 + 1j)) == pytest.approx(np.sqrt(18))
    assert frobenius_norm(np.zeros((3, 3))) == 0.0


def _kron_by_blocks(a, b):
    a, b = np.asarray(a), np.asarray(b)
    p, q = a.shape[0], b.shape[0]
    out = np.zeros((p * q, p * q), dtype=complex)
    for i in range(p):
        for j in range(p):
            out[i * q:(i + 1) * q, j * q:(j + 1) * q] = a[i, j] * b
    return out


def test_tensor_examples():
    np.testing.assert_array_equal(tensor(I2, I2), np.eye(4))
    np.testing.assert_array_equal(tensor(S3, S3), np.diag([1, -1, -1, 1]))
    np.testing.assert_array_equal(tensor(S1, S1), np.fliplr(np.eye(4)))
    m = rand_herm(3, np.random.default_rng(2)).matrix
    np.testing.assert_array_equal(tensor(S2, m), _kron_by_blocks(S2, m))


int_mats = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n).map(
        lambda xs: np.array(xs, dtype=complex).reshape(n, n)
    )
)


@settings(max_examples=50, deadline=None)
@given(int_mats, int_mats, int_mats)
def test_tensor_associative(a, b, c):
    np.testing.assert_array_equal(tensor(tensor(a, b), c), tensor(a, tensor(b, c)))


def test_partial_trace_product_state(rng):
    ra, rb = rand_density(2, rng), rand_density(3, rng)
    rho = DensityMatrix(tensor(ra, rb))
    np.testing.assert_allclose(partial_trace(rho, 2, 3, "first").array, ra.array, atol=1e-14)
    np.testing.assert_allclose(partial_trace(rho, 2, 3, "second").array, rb.array, atol=1e-14)


def test_partial_trace_bell_marginal():
    phi_plus = bell_states()[0]
    np.testing.assert_allclose(partial_trace(phi_plus, 2, 2, "second").array, I2 / 2, atol=1e-15)
    np.testing.assert_allclose(partial_trace(phi_plus, 2, 2, "first").array, I2 / 2, atol=1e-15)


def _unit_matrices(d):
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1
            yield e


def test_partial_trace_pairing_identity():
    rng = np.random.default_rng(23)
    rho = rand_density(6, rng)
    red_a = partial_trace(rho, 2, 3, "first").array
    red_b = partial_trace(rho, 2, 3, "second").array
    for x in _unit_matrices(2):
        assert abs(np.trace(red_a @ x) - np.trace(rho.array @ np.kron(x, np.eye(3)))) < 1e-14
    for x in _unit_matrices(3):
        assert abs(np.trace(red_b @ x) - np.trace(rho.array @ np.kron(np.eye(2), x))) < 1e-14


def test_partial_trace_preserves_trace_and_positivity(rng):
    for _ in range(50):
        da, db = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        rho = rand_density(da * db, rng, rank=int(rng.integers(1, da * db + 1)))
        for keep in ("first", "second"):
            red = partial_trace(rho, da, db, keep).array
            assert abs(np.trace(red).real - 1) < 1e-12
            assert np.linalg.eigvalsh(red).min() > -1e-10


def test_partial_trace_bad_factorization():
    with pytest.raises(DimensionMismatchError):
        partial_trace(bell_states()[0], 3, 2)


def test_matrix_json_round_trip():
    text = dump_matrix_json(S2)
    np.testing.assert_array_equal(parse_matrix_json(text), S2)
    np.testing.assert_array_equal(parse_matrix_json('{"dim": 2, "re": [[1, 0], [0, 1]]}'), I2)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"re": [[1]]}',
        '{"dim": 2, "re": [[1, 0]]}',
        '{"dim": 2, "re": [[1, 0], [0]]}',
        '{"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0]]}',
        '{"dim": 2, "re": [[1, "a"], [0, 1]]}',
        '{"dim": 0, "re": []}',
    ],
)
def test_matrix_json_rejects(text):
    with pytest.raises(ValidationError):
        parse_matrix_json(text)
