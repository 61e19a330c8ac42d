"""Four-detector readout, shot sampling and five-basis state tomography.

A basis is measured by a gate ``S`` that maps it onto the standard basis,
followed by polarizing beam splitters and four detectors (Rv, Rh, Lv, Lh).
For the pair ``(A, B)`` of a basis the gate satisfies ``S A = τ₃ S`` and
``S B = σ₃ S``, so detector Rv means A = B = +1, Rh means A = +1, B = −1, and
so on.

Sampling uses numpy's PCG64 generator seeded with the caller's integer seed.
Counts are drawn by inverse-CDF lookup: one uniform double per shot is placed
in the cumulative distribution (Rv, Rh, Lv, Lh) with a right-sided search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidDensityMatrix, InvalidProbabilities, NotUnitaryError, PhotonGateError
from .gates import ObservablePair, TOMOGRAPHY_PAIRS, observable_pair, tomography_gate
from .numkernel import DEFAULT_TOL, STANDARD_LABELS, as_matrix, dagger, is_unitary, pauli_product

# (j, k) labels of the 15 non-trivial products τ_j σ_k
PAULI_INDICES = tuple((j, k) for j in range(4) for k in range(4) if (j, k) != (0, 0))


@dataclass(frozen=True)
class CountTable:
    counts: tuple[int, int, int, int]
    shots: int

    def __post_init__(self):
        if any(c < 0 for c in self.counts) or sum(self.counts) != self.shots:
            raise ValueError("counts must be non-negative and sum to shots")

    def as_dict(self) -> dict[str, int]:
        return dict(zip(STANDARD_LABELS, self.counts))


def pauli_label(j: int, k: int) -> str:
    parts = ([f"tau{j}"] if j else []) + ([f"sigma{k}"] if k else [])
    return "_".join(parts)


def validate_density(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return ``rho`` as an array after checking it is a 4x4 density matrix."""
    try:
        rho = as_matrix(rho, 4)
    except (ValueError, PhotonGateError) as exc:
        raise InvalidDensityMatrix(str(exc)) from exc
    if np.linalg.norm(rho - dagger(rho)) > tol:
        raise InvalidDensityMatrix("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise InvalidDensityMatrix("density matrix does not have unit trace")
    if np.linalg.eigvalsh(0.5 * (rho + dagger(rho))).min() < -tol:
        raise InvalidDensityMatrix("density matrix has a negative eigenvalue")
    return rho


def pure_density(state) -> np.ndarray:
    v = np.asarray(state, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, np.conj(v))


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    """Mixed state from an 8-dim complex Gaussian vector with a qubit environment traced out."""
    z = rng.normal(size=8) + 1j * rng.normal(size=8)
    z /= np.linalg.norm(z)
    m = z.reshape(4, 2)  # system x environment
    return m @ dagger(m)


def detection_probabilities(rho, s) -> np.ndarray:
    """Click probabilities of the four detectors after the gate ``s``."""
    rho = validate_density(rho)
    s = as_matrix(s, 4)
    if not is_unitary(s, DEFAULT_TOL):
        raise NotUnitaryError("measurement gate is not unitary")
    p = np.real(np.einsum("ij,jk,ik->i", s, rho, np.conj(s)))
    return np.clip(p, 0.0, None)


def _check_probs(probs) -> np.ndarray:
    p = np.asarray(probs, dtype=float)
    if p.shape != (4,) or not np.all(np.isfinite(p)):
        raise InvalidProbabilities("need four finite probabilities")
    if p.min() < -1e-12 or abs(p.sum() - 1.0) > 1e-9:
        raise InvalidProbabilities(f"not a probability vector: {p.tolist()}")
    return np.clip(p, 0.0, None)


def sample_counts(probs, shots: int, seed: int) -> CountTable:
    """Multinomial draw of ``shots`` clicks, deterministic in ``seed``."""
    p = _check_probs(probs)
    shots = int(shots)
    if shots < 0:
        raise ValueError("shots must be non-negative")
    if int(seed) < 0:
        raise ValueError("seed must be non-negative")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    cdf = np.cumsum(p)
    cdf[-1] = 1.0
    u = rng.random(shots)
    idx = np.searchsorted(cdf, u, side="right")
    counts = np.bincount(np.minimum(idx, 3), minlength=4)
    return CountTable(counts=tuple(int(c) for c in counts), shots=shots)


def means_from_frequencies(f) -> tuple[float, float, float]:
    f0, f1, f2, f3 = (float(x) for x in f)
    return f0 + f1 - f2 - f3, f0 - f1 + f2 - f3, f0 - f1 - f2 + f3


def estimate_abs(counts: CountTable) -> tuple[float, float, float]:
    """Sample means of A, B and AB from the detector counts."""
    if counts.shots <= 0:
        raise ValueError("cannot estimate from zero shots")
    return means_from_frequencies(np.asarray(counts.counts, dtype=float) / counts.shots)


def _pair_index(pair: ObservablePair) -> int:
    for k in range(1, 6):
        ref = observable_pair(k)
        if np.allclose(pair.a, ref.a, atol=1e-12) and np.allclose(pair.b, ref.b, atol=1e-12):
            return k
    raise ValueError("observable pair is not one of the five tomography pairs")


def density_from_coefficients(coeffs: dict[tuple[int, int], float]) -> np.ndarray:
    rho = np.eye(4, dtype=complex)
    for jk, c in coeffs.items():
        rho = rho + c * pauli_product(*jk)
    rho = 0.25 * rho
    return 0.5 * (rho + dagger(rho))


def coefficients_from_runs(
    runs: Sequence[tuple[ObservablePair, float, float, float]],
) -> dict[tuple[int, int], float]:
    """The 15 Pauli expectations ``<τ_j σ_k>`` from the five measured bases.

    Each run is ``(pair, <A>, <B>, <AB>)``; the runs may come in any order.
    """
    if len(runs) != 5:
        raise ValueError("need exactly five runs, one per tomography pair")
    seen = {}
    for pair, ma, mb, mab in runs:
        k = _pair_index(pair)
        if k in seen:
            raise ValueError(f"tomography pair {k} given twice")
        seen[k] = (float(ma), float(mb), float(mab))

    coeffs: dict[tuple[int, int], float] = {}
    for k, (ma, mb, mab) in seen.items():
        (ja, ka), (jb, kb) = TOMOGRAPHY_PAIRS[k - 1]
        coeffs[(ja, ka)] = ma
        coeffs[(jb, kb)] = mb
        # AB is ±(a single Pauli product): read off its index and sign
        ab = observable_pair(k).ab
        jk = _single_pauli(ab)
        sign = np.trace(ab @ pauli_product(*jk)).real / 4.0
        coeffs[jk] = sign * mab
    return {jk: coeffs[jk] for jk in PAULI_INDICES}


def tomography_reconstruct(runs: Sequence[tuple[ObservablePair, float, float, float]]) -> np.ndarray:
    """Linear-inversion estimate ``ρ = ¼(1 + Σ c_jk τ_j σ_k)``; Hermitian, unit trace."""
    return density_from_coefficients(coefficients_from_runs(runs))


def _single_pauli(m: np.ndarray) -> tuple[int, int]:
    for jk in PAULI_INDICES:
        if abs(abs(np.trace(m @ pauli_product(*jk))) - 4.0) < 1e-9:
            return jk
    raise ValueError("operator is not a signed Pauli product")  # pragma: no cover


def pauli_coefficients(rho) -> dict[tuple[int, int], float]:
    """``<τ_j σ_k> = tr(ρ τ_j σ_k)`` for the 15 non-trivial products."""
    rho = np.asarray(rho, dtype=complex)
    return {jk: float(np.trace(rho @ pauli_product(*jk)).real) for jk in PAULI_INDICES}


def basis_seed(seed: int, k: int) -> int:
    """Seed of the k-th (1..5) basis in a tomography run with base ``seed``."""
    return 5 * int(seed) + (k - 1)


def tomography_pipeline(rho, shots_per_basis: int, seed: int = 0):
    """Simulate measuring the five bases and reconstruct the state.

    ``shots_per_basis = 0`` uses the exact probabilities.  Otherwise basis
    ``k`` is sampled with seed ``basis_seed(seed, k)``.  Returns
    ``(rho_estimate, coefficients)``.
    """
    rho = validate_density(rho)
    if shots_per_basis < 0:
        raise ValueError("shots_per_basis must be non-negative")
    runs = []
    for k in range(1, 6):
        p = detection_probabilities(rho, tomography_gate(k))
        if shots_per_basis == 0:
            means = means_from_frequencies(p)
        else:
            means = estimate_abs(sample_counts(p, shots_per_basis, basis_seed(seed, k)))
        runs.append((observable_pair(k), *means))
    coeffs = coefficients_from_runs(runs)
    return density_from_coefficients(coeffs), coeffs


def is_positive(rho, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.linalg.eigvalsh(0.5 * (rho + dagger(rho))).min() >= -tol)


def trace_distance(rho, sigma) -> float:
    d = np.asarray(rho) - np.asarray(sigma)
    return float(0.5 * np.abs(np.linalg.eigvalsh(0.5 * (d + dagger(d)))).sum())


def tomography_report(rho, shots_per_basis: int, seed: int) -> dict:
    """JSON-ready tomography result."""
    from .jsonio import matrix_to_json

    est, coeffs = tomography_pipeline(rho, shots_per_basis, seed)
    return {
        "coefficients": {pauli_label(*jk): c for jk, c in coeffs.items()},
        "rho": matrix_to_json(est),
        "positive": is_positive(est),
        "shots": int(shots_per_basis),
        "seed": int(seed),
    }
