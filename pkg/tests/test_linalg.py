import numpy as np
import pytest

from normetry import linalg
from normetry.errors import DimensionMismatch, DomainError
from normetry.rand import GenSpec, derive_stream, generate


def rand_hermitian(n, seed):
    return generate(GenSpec("hermitian", n, seed))


def test_eigh_diagonal():
    spec = linalg.eigh(np.diag([2.0, 1.0]).astype(complex))
    np.testing.assert_allclose(spec.eigenvalues, [2.0, 1.0])


def test_eigh_symmetry():
    spec = linalg.eigh(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    np.testing.assert_allclose(spec.eigenvalues, [1.0, -1.0])


def test_eigh_reconstruction_seed7():
    h = rand_hermitian(8, 7)
    spec = linalg.eigh(h)
    residual = linalg.opnorm(h - spec.reconstruct())
    assert residual <= 1e-10 * max(1.0, linalg.opnorm(h))
    frame_err = linalg.opnorm(spec.frame @ spec.frame.conj().T - np.eye(8))
    assert frame_err <= 1e-10


@pytest.mark.parametrize("seed", range(50))
def test_eigh_reconstruction_many(seed):
    n = 2 + seed % 15
    h = rand_hermitian(n, derive_stream(1234, seed))
    spec = linalg.eigh(h)
    assert np.all(np.diff(spec.eigenvalues) <= 1e-14)
    assert linalg.opnorm(h - spec.reconstruct()) <= 1e-10 * max(1, linalg.opnorm(h))


def test_spectral_apply_sqrt_diagonal():
    out = linalg.spectral_apply(np.sqrt, np.diag([4.0, 9.0]).astype(complex))
    np.testing.assert_allclose(out, np.diag([2.0, 3.0]), atol=1e-12)


def test_spectral_apply_identity_function():
    h = rand_hermitian(5, 99)
    h = h @ h.conj().T  # PSD so the identity map is in-domain
    out = linalg.spectral_apply(lambda t: t, h)
    assert linalg.opnorm(out - h) <= 1e-10 * max(1, linalg.opnorm(h))


def test_spectral_apply_sqrt_2x2_hand_oracle():
    # [[2,1],[1,2]] has eigenvalues 3 and 1 (eigenvectors (1,1), (1,-1))
    a = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
    out = linalg.spectral_apply(np.sqrt, a)
    w = np.linalg.eigvalsh(out)
    np.testing.assert_allclose(sorted(w), [1.0, np.sqrt(3.0)], atol=1e-12)


def test_spectral_apply_sqrt_then_square_roundtrip():
    p = generate(GenSpec("psd", 6, 42))
    root = linalg.spectral_apply(np.sqrt, p)
    assert linalg.opnorm(root @ root - p) <= 1e-8 * max(1, linalg.opnorm(p))


def test_spectral_apply_rejects_genuinely_negative():
    with pytest.raises(DomainError):
        linalg.spectral_apply(np.sqrt, np.diag([-1.0, 1.0]).astype(complex))


def test_spectral_apply_clamps_roundoff_negative():
    out = linalg.spectral_apply(np.sqrt, np.diag([-1e-12, 1.0]).astype(complex))
    assert np.all(np.isfinite(out))


def test_matrix_abs_rotation_is_identity():
    x = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
    np.testing.assert_allclose(linalg.matrix_abs(x), np.eye(2), atol=1e-12)


def test_matrix_abs_diagonal():
    np.testing.assert_allclose(
        linalg.matrix_abs(np.diag([-2.0, 3.0]).astype(complex)),
        np.diag([2.0, 3.0]),
        atol=1e-12,
    )


def test_matrix_abs_matches_eigh_of_gram_oracle_seed3():
    x = generate(GenSpec("general", 5, 3))
    got = np.sort(np.linalg.eigvalsh(linalg.matrix_abs(x)))
    # independent route: sqrt of eigenvalues of X*X
    expected = np.sort(np.sqrt(np.maximum(np.linalg.eigvalsh(x.conj().T @ x), 0)))
    np.testing.assert_allclose(got, expected, atol=1e-9)


def test_matrix_abs_normal_shares_spectrum_with_adjoint():
    for seed in range(20):
        x = generate(GenSpec("normal", 4, derive_stream(77, seed)))
        wa = np.linalg.eigvalsh(linalg.matrix_abs(x))
        wb = np.linalg.eigvalsh(linalg.matrix_abs(x.conj().T))
        np.testing.assert_allclose(wa, wb, atol=1e-9)


def test_polar_of_unitary():
    u = generate(GenSpec("unitary", 4, 8))
    parts = linalg.polar(u)
    np.testing.assert_allclose(parts.abs, np.eye(4), atol=1e-10)
    np.testing.assert_allclose(parts.u, u, atol=1e-10)


def test_polar_of_positive_definite():
    p = generate(GenSpec("pd", 4, 9))
    parts = linalg.polar(p)
    np.testing.assert_allclose(parts.u, np.eye(4), atol=1e-9)
    np.testing.assert_allclose(parts.abs, p, atol=1e-10)


def test_polar_mixed_form_seed11():
    x = generate(GenSpec("expansive", 4, 11))  # invertible by construction
    parts = linalg.polar(x)
    root_abs = linalg.spectral_apply(np.sqrt, parts.abs)
    root_abs_star = linalg.spectral_apply(np.sqrt, parts.abs_star)
    residual = linalg.opnorm(root_abs_star @ parts.u @ root_abs - x)
    assert residual <= 1e-9 * max(1, linalg.opnorm(x))


def test_polar_reconstructs():
    for seed in range(10):
        x = generate(GenSpec("general", 5, derive_stream(5, seed)))
        parts = linalg.polar(x)
        assert linalg.opnorm(parts.u @ parts.abs - x) <= 1e-10 * max(
            1, linalg.opnorm(x)
        )
        assert linalg.opnorm(
            parts.u @ parts.abs @ parts.u.conj().T - parts.abs_star
        ) <= 1e-9 * max(1, linalg.opnorm(x))


def test_loewner_basic():
    eye = np.eye(3, dtype=complex)
    assert linalg.loewner_leq(eye, 2 * eye)
    assert not linalg.loewner_leq(2 * eye, eye)
    h = rand_hermitian(3, 17)
    assert linalg.loewner_leq(h, h)


def test_loewner_partial_order_on_samples():
    # antisymmetry and transitivity within tolerance on constructed chains
    a = generate(GenSpec("psd", 4, 21))
    b = a + generate(GenSpec("psd", 4, 22))
    c = b + generate(GenSpec("psd", 4, 23))
    assert linalg.loewner_leq(a, b) and linalg.loewner_leq(b, c)
    assert linalg.loewner_leq(a, c)
    assert not (linalg.loewner_leq(b, a) and linalg.opnorm(b - a) > 1e-6)


def test_loewner_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        linalg.loewner_leq(np.eye(2), np.eye(3))


def test_predicates_unitary():
    u = generate(GenSpec("unitary", 3, 2))
    assert linalg.is_normal(u)
    assert linalg.is_contraction(u)
    assert linalg.is_expansive(u)


def test_predicates_scaled_identity():
    d = np.diag([2.0, 2.0]).astype(complex)
    assert linalg.is_normal(d)
    assert linalg.is_expansive(d)
    assert not linalg.is_contraction(d)


def test_predicates_nilpotent_not_normal():
    assert not linalg.is_normal(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
