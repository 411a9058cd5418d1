import math

import numpy as np
import pytest

from bjaudit import (
    DomainError,
    SpectralModel,
    UsageError,
    audit_spectral_bound,
    load_matrix_csv,
    load_state_csv,
    lp_norm,
    matrix_csv_text,
    spectral_instance,
    spectral_measure,
    spectral_rearrangement,
    state_csv_text,
    straddling_grid,
)

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
E0 = np.array([1.0, 0.0])


def random_hermitian(rng, n):
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (b + b.conj().T)


def random_state(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def test_projector_onto_single_eigenvector():
    # The zero-weight eigenvalue is dropped entirely.
    model = spectral_measure(np.diag([1.0, 2.0]), E0)
    assert model.n_points == 1
    assert model.eigenvalues.tolist() == [1.0]
    assert model.weights.tolist() == [1.0]


def test_swap_matrix_even_split():
    model = spectral_measure(SWAP, E0)
    assert model.eigenvalues.tolist() == [-1.0, 1.0]
    assert model.weights[0] == pytest.approx(0.5, abs=1e-12)
    assert model.weights[1] == pytest.approx(0.5, abs=1e-12)
    sf = spectral_rearrangement(model)  # |lambda| = 1 at both atoms, one step
    assert sf.values.tolist() == [1.0]
    assert sf.support_mass == pytest.approx(1.0, abs=1e-12)


def test_swap_matrix_g_square():
    model = spectral_measure(SWAP, E0)
    sf = spectral_rearrangement(model, g=lambda lam: lam * lam)
    assert sf.values.tolist() == [1.0]
    assert sf.support_mass == pytest.approx(1.0, abs=1e-12)


def test_degenerate_merge_identity_matrix():
    psi = np.ones(3) / math.sqrt(3.0)
    model = spectral_measure(np.eye(3), psi)
    assert model.n_points == 1
    assert model.eigenvalues[0] == pytest.approx(1.0, abs=1e-12)
    assert model.weights[0] == pytest.approx(1.0, abs=1e-12)


def test_g_zero_gives_empty_rearrangement():
    model = spectral_measure(SWAP, E0)
    sf = spectral_rearrangement(model, g=lambda lam: 0.0)
    assert sf.n_steps == 0
    assert sf.support_mass == 0.0


def test_trace_and_norm_consistency():
    rng = np.random.default_rng(2024)
    for _ in range(40):
        n = int(rng.integers(1, 9))
        a = random_hermitian(rng, n)
        psi = random_state(rng, n)
        model = spectral_measure(a, psi)
        assert model.weights.sum() == pytest.approx(1.0, abs=1e-10)
        quad_form = float(np.real(psi.conj() @ (a @ psi)))
        assert float(model.weights @ model.eigenvalues) == pytest.approx(
            quad_form, abs=1e-8
        )
        sp, f = spectral_instance(model)
        l1 = lp_norm(f, sp, 1.0)
        assert l1 == pytest.approx(
            float(model.weights @ np.abs(model.eigenvalues)), rel=1e-12, abs=1e-12
        )


def test_safe_unit_variant_never_violated():
    rng = np.random.default_rng(99)
    for _ in range(30):
        n = int(rng.integers(1, 9))
        model = spectral_measure(random_hermitian(rng, n), random_state(rng, n))
        sf = spectral_rearrangement(model)
        if sf.n_steps == 0:
            continue
        rep = audit_spectral_bound(model, None, "safe-unit", straddling_grid(sf))
        assert not rep.violated, rep.min_margin


def test_swap_matrix_pinned_audit():
    model = spectral_measure(SWAP, E0)
    sf = spectral_rearrangement(model)
    rep = audit_spectral_bound(model, None, "paper-2-over-pi", straddling_grid(sf))
    assert rep.inequality_name == "spectral_weak_l1"
    assert rep.violated
    assert rep.min_margin == pytest.approx(-0.36274297060302163, abs=1e-9)
    assert rep.witness_t == pytest.approx(0.999, rel=1e-12)


def test_matrix_validation():
    with pytest.raises(DomainError):
        spectral_measure(np.ones((2, 3)), E0)
    with pytest.raises(DomainError):
        spectral_measure(np.eye(65), np.eye(65)[0])
    with pytest.raises(DomainError):
        spectral_measure(np.array([[0.0, 1.0], [0.0, 0.0]]), E0)  # not Hermitian
    with pytest.raises(DomainError):
        spectral_measure(np.array([[math.inf, 0.0], [0.0, 1.0]]), E0)
    with pytest.raises(DomainError):
        spectral_measure(SWAP, np.array([1.0, 1.0]))  # not unit norm
    with pytest.raises(DomainError):
        spectral_measure(SWAP, np.array([1.0, 0.0, 0.0]))  # wrong length


def test_g_must_be_finite_on_spectrum():
    model = spectral_measure(np.array([[0.0]]), np.array([1.0]))
    with pytest.raises(DomainError):
        spectral_instance(model, g=lambda lam: 1.0 / lam if lam else math.inf)


def test_all_weights_zero_rejected():
    model = SpectralModel(eigenvalues=np.array([1.0]), weights=np.array([0.0]))
    with pytest.raises(DomainError):
        spectral_instance(model)


def test_model_validation():
    with pytest.raises(DomainError):
        SpectralModel(eigenvalues=np.array([1.0, 1.0]), weights=np.array([0.5, 0.5]))
    with pytest.raises(DomainError):
        SpectralModel(eigenvalues=np.array([1.0]), weights=np.array([-0.1]))


def test_matrix_csv_round_trip(tmp_path):
    rng = np.random.default_rng(5)
    a = random_hermitian(rng, 3)
    text = matrix_csv_text(a)
    assert np.array_equal(load_matrix_csv(text), a)
    path = tmp_path / "m.csv"
    path.write_text(text)
    assert np.array_equal(load_matrix_csv(str(path)), a)


def test_state_csv_round_trip(tmp_path):
    rng = np.random.default_rng(6)
    psi = random_state(rng, 4)
    text = state_csv_text(psi)
    assert np.array_equal(load_state_csv(text), psi)
    path = tmp_path / "s.csv"
    path.write_text(text)
    assert np.array_equal(load_state_csv(str(path)), psi)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("a,b,c,d\n0,0,1,0\n", "row 1"),
        ("row,col,re,im\n0,0,1\n", "row 2"),
        ("row,col,re,im\n0,0,1,0\n0,0,2,0\n", "duplicate"),
        ("row,col,re,im\n0,0,x,0\n", "non-numeric"),
        ("row,col,re,im\n1,1,1,0\n", "implies dimension"),
        ("row,col,re,im\n64,64,1,0\n", "exceeds the limit"),
        ("row,col,re,im\n", "no data rows"),
    ],
)
def test_matrix_csv_errors(text, fragment):
    with pytest.raises(UsageError, match=fragment):
        load_matrix_csv(text)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("idx,re,im\n0,1,0\n", "row 1"),
        ("index,re,im\n0,1,0\n0,0,0\n", "duplicate"),
        ("index,re,im\n1,1,0\n", "implies length"),
        ("index,re,im\n-1,1,0\n", "must be >= 0"),
    ],
)
def test_state_csv_errors(text, fragment):
    with pytest.raises(UsageError, match=fragment):
        load_state_csv(text)


def test_missing_file_is_usage_error():
    with pytest.raises(UsageError):
        load_matrix_csv("/nonexistent/matrix.csv")
