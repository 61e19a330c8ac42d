import math

import numpy as np
import pytest

from photongate import gates
from photongate.errors import InvalidDensityMatrix, InvalidProbabilities, NotUnitaryError
from photongate.measure import (
    PAULI_INDICES,
    CountTable,
    coefficients_from_runs,
    detection_probabilities,
    estimate_abs,
    is_positive,
    pauli_coefficients,
    pauli_label,
    pure_density,
    random_density_matrix,
    sample_counts,
    tomography_pipeline,
    tomography_reconstruct,
    tomography_report,
    trace_distance,
    validate_density,
)
from photongate.numkernel import kron, pauli_sigma, pauli_tau
from conftest import haar

I4 = np.eye(4)
MIXED = I4 / 4
BELL4 = pure_density(gates.basis("bell")[3])


def trace_oracle(rho):
    """tr(ρ τ_j σ_k) computed straight from the Kronecker products."""
    return {
        (j, k): np.trace(rho @ np.kron(pauli_tau(j), pauli_sigma(k))).real for j in range(4) for k in range(4) if (j, k) != (0, 0)
    }


def exact_runs(rho):
    runs = []
    for k in range(1, 6):
        p = gates.observable_pair(k)
        runs.append((p, *(np.trace(rho @ m).real for m in (p.a, p.b, p.ab))))
    return runs


def test_detection_examples(rng):
    assert np.allclose(detection_probabilities(pure_density(I4[0]), I4), [1, 0, 0, 0])
    assert np.allclose(detection_probabilities(BELL4, gates.gate("bell")), [0, 0, 0, 1], atol=1e-15)
    for _ in range(5):
        assert np.allclose(detection_probabilities(MIXED, haar(4, rng)), 0.25, atol=1e-15)


def test_detection_normalized(rng):
    for _ in range(200):
        p = detection_probabilities(random_density_matrix(rng), haar(4, rng))
        assert abs(p.sum() - 1) < 1e-10 and p.min() >= 0


def test_detection_rejects_bad_inputs():
    with pytest.raises(NotUnitaryError):
        detection_probabilities(MIXED, 2 * I4)
    with pytest.raises(InvalidDensityMatrix):
        detection_probabilities(np.diag([1.5, -0.5, 0, 0]), I4)


def test_validate_density():
    with pytest.raises(InvalidDensityMatrix):
        validate_density(np.diag([0.5, 0.5, 0.5, 0.5]))
    with pytest.raises(InvalidDensityMatrix):
        validate_density(np.triu(np.ones((4, 4))) / 4)
    with pytest.raises(InvalidDensityMatrix):
        validate_density(np.eye(2) / 2)


def test_random_density_matrices_valid(rng):
    for _ in range(100):
        rho = random_density_matrix(rng)
        validate_density(rho)
        assert np.linalg.matrix_rank(rho, tol=1e-10) == 2


def test_sample_counts_examples():
    assert sample_counts([1, 0, 0, 0], 100, 7).counts == (100, 0, 0, 0)
    assert sample_counts([0.1, 0.2, 0.3, 0.4], 0, 7).counts == (0, 0, 0, 0)
    n = 10**6
    c = sample_counts([0.25] * 4, n, 12345)
    bound = 3 * math.sqrt(n * 0.25 * 0.75)
    assert all(abs(x - n / 4) < bound for x in c.counts)
    assert sum(c.counts) == n


def test_sample_counts_deterministic_and_seed_sensitive():
    p = [0.1, 0.2, 0.3, 0.4]
    assert sample_counts(p, 1000, 5) == sample_counts(p, 1000, 5)
    assert sample_counts(p, 1000, 5) != sample_counts(p, 1000, 6)


def test_sample_counts_algorithm_is_inverse_cdf():
    p = np.array([0.1, 0.2, 0.3, 0.4])
    u = np.random.Generator(np.random.PCG64(99)).random(500)
    want = np.bincount(np.searchsorted(np.cumsum(p), u, side="right"), minlength=4)
    assert sample_counts(p, 500, 99).counts == tuple(want)


def test_sample_counts_rejects_bad_input():
    with pytest.raises(InvalidProbabilities):
        sample_counts([0.5, 0.6, 0, 0], 10, 1)
    with pytest.raises(InvalidProbabilities):
        sample_counts([1.2, -0.2, 0, 0], 10, 1)
    with pytest.raises(ValueError):
        sample_counts([1, 0, 0, 0], -1, 1)
    with pytest.raises(ValueError):
        CountTable((1, 2, 3, 4), 11)


def test_estimate_abs_examples():
    assert estimate_abs(CountTable((10, 0, 0, 0), 10)) == (1, 1, 1)
    assert estimate_abs(CountTable((0, 0, 10, 0), 10)) == (-1, 1, -1)
    assert estimate_abs(CountTable((5, 5, 5, 5), 20)) == (0, 0, 0)
    with pytest.raises(ValueError):
        estimate_abs(CountTable((0, 0, 0, 0), 0))


def test_estimates_match_expectations(rng):
    for _ in range(50):
        rho = random_density_matrix(rng)
        for k in range(1, 6):
            p = detection_probabilities(rho, gates.tomography_gate(k))
            pair = gates.observable_pair(k)
            f = p / p.sum()
            ma, mb, mab = f[0] + f[1] - f[2] - f[3], f[0] - f[1] + f[2] - f[3], f[0] - f[1] - f[2] + f[3]
            for got, op in zip((ma, mb, mab), (pair.a, pair.b, pair.ab)):
                assert got == pytest.approx(np.trace(rho @ op).real, abs=1e-10)


def test_reconstruct_examples():
    assert np.allclose(tomography_reconstruct(exact_runs(MIXED)), MIXED, atol=1e-15)
    coeffs = coefficients_from_runs(exact_runs(BELL4))
    nonzero = {jk: round(c, 12) for jk, c in coeffs.items() if abs(c) > 1e-12}
    assert nonzero == {(1, 1): 1.0, (2, 2): -1.0, (3, 3): 1.0}
    assert np.linalg.norm(tomography_reconstruct(exact_runs(BELL4)) - BELL4) < 1e-10


def test_reconstruct_random_against_trace_oracle(rng):
    for _ in range(100):
        rho = random_density_matrix(rng)
        runs = exact_runs(rho)
        rng.shuffle(runs)
        coeffs = coefficients_from_runs(runs)
        oracle = trace_oracle(rho)
        assert max(abs(coeffs[jk] - oracle[jk]) for jk in PAULI_INDICES) < 1e-10
        est = tomography_reconstruct(runs)
        assert np.allclose(est, est.conj().T) and np.trace(est).real == pytest.approx(1.0, abs=1e-14)


def test_reconstruct_rejects_wrong_pairs():
    runs = exact_runs(MIXED)
    with pytest.raises(ValueError):
        coefficients_from_runs(runs[:4])
    with pytest.raises(ValueError):
        coefficients_from_runs(runs[:4] + [runs[0]])
    odd = gates.ObservablePair(kron(pauli_tau(1), np.eye(2)), kron(np.eye(2), pauli_sigma(3)))
    with pytest.raises(ValueError):
        coefficients_from_runs(runs[:4] + [(odd, 0, 0, 0)])


def test_pauli_coefficients_match_oracle(rng):
    rho = random_density_matrix(rng)
    assert pauli_coefficients(rho) == pytest.approx(trace_oracle(rho), abs=1e-14)
    assert pauli_label(1, 2) == "tau1_sigma2" and pauli_label(0, 3) == "sigma3" and pauli_label(2, 0) == "tau2"


def test_pipeline_analytic(rng):
    for _ in range(100):
        rho = random_density_matrix(rng)
        est, coeffs = tomography_pipeline(rho, 0)
        assert np.linalg.norm(est - rho) < 1e-10
        assert len(coeffs) == 15


def test_pipeline_sampled_bell():
    est, _ = tomography_pipeline(BELL4, 10**6, seed=3)
    assert trace_distance(est, BELL4) < 0.01


def test_pipeline_sampled_mixed():
    _, coeffs = tomography_pipeline(MIXED, 10**4, seed=11)
    # each coefficient is a mean of 10⁴ ±1 outcomes: σ = 0.01
    assert max(abs(c) for c in coeffs.values()) < 0.05


def test_pipeline_deterministic():
    a = tomography_pipeline(BELL4, 1000, seed=4)
    b = tomography_pipeline(BELL4, 1000, seed=4)
    assert np.array_equal(a[0], b[0])


def test_positivity_flag():
    assert is_positive(BELL4)
    assert not is_positive(np.diag([0.6, 0.6, -0.1, -0.1]))


def test_trace_distance():
    assert trace_distance(BELL4, BELL4) == pytest.approx(0, abs=1e-15)
    assert trace_distance(pure_density(I4[0]), pure_density(I4[1])) == pytest.approx(1)


def test_report_shape():
    rep = tomography_report(MIXED, 0, 0)
    assert list(rep) == ["coefficients", "rho", "positive", "shots", "seed"]
    assert len(rep["coefficients"]) == 15
    assert all(v == 0 for v in rep["coefficients"].values())
