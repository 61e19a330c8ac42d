"""Small dense complex linear algebra for 2x2 and 4x4 operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Two-qubit
operators use the basis order (Rv, Rh, Lv, Lh): the spatial R/L index is the
slow one, polarization v/h the fast one.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHermitianError, ShapeError

DEFAULT_TOL = 1e-10
DEGENERATE_TOL = 1e-10

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

for _p in _PAULI:
    _p.setflags(write=False)

# Standard-basis labels in matrix order.
STANDARD_LABELS = ("Rv", "Rh", "Lv", "Lh")


def as_matrix(m, dim: int | None = None) -> np.ndarray:
    """Coerce ``m`` to a finite square complex array, optionally of size ``dim``."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise ShapeError(f"expected a {dim}x{dim} matrix, got {a.shape[0]}x{a.shape[1]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def pauli_tau(k: int) -> np.ndarray:
    """Pauli operator of the spatial qubit in (R, L) order; ``k=0`` is the identity."""
    if k not in (0, 1, 2, 3):
        raise IndexError(f"Pauli index must be 0..3, got {k!r}")
    return _PAULI[k].copy()


def pauli_sigma(k: int) -> np.ndarray:
    """Pauli operator of the polarization qubit in (v, h) order; ``k=0`` is the identity."""
    if k not in (0, 1, 2, 3):
        raise IndexError(f"Pauli index must be 0..3, got {k!r}")
    return _PAULI[k].copy()


def kron(spatial: np.ndarray, polarization: np.ndarray) -> np.ndarray:
    """Two-qubit operator ``spatial ⊗ polarization`` with the spatial index slow."""
    a = as_matrix(spatial, 2)
    b = as_matrix(polarization, 2)
    return np.kron(a, b)


def pauli_product(j: int, k: int) -> np.ndarray:
    """``τ_j σ_k`` as a 4x4 matrix."""
    return kron(pauli_tau(j), pauli_sigma(k))


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    a = as_matrix(m)
    return float(np.linalg.norm(dagger(a) @ a - np.eye(a.shape[0]))) <= tol


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    a = as_matrix(m)
    return float(np.linalg.norm(a - dagger(a))) <= tol


def dist(a, b) -> float:
    """Frobenius distance ``‖a − b‖``."""
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def dist_up_to_phase(a, b) -> float:
    """``min_φ ‖a − e^{iφ} b‖_F``.

    The minimizing phase is ``arg tr(b† a)``; the norm is then taken directly,
    which avoids the cancellation of the expanded ``‖a‖² + ‖b‖² − 2|tr(b† a)|``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    overlap = np.vdot(b, a)  # tr(b† a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(a - phase * b))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # largest-magnitude component made real and positive; ties go to the first
    i = int(np.argmax(np.abs(v) - 1e-14 * np.arange(v.size)))
    return v * (np.conj(v[i]) / abs(v[i]))


def eig_hermitian_2x2(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian 2x2 matrix.

    Returns ``(values, vectors)`` with the eigenvalues in descending order
    and the eigenvectors as the columns of ``vectors``.  Each eigenvector has
    its largest-magnitude component real and positive.  When ``h`` is within
    ``DEGENERATE_TOL`` of a multiple of the identity the canonical basis is
    returned.

    The matrix is written as ``m·1 + r·(n·σ)`` and the eigenvectors are read
    off the unit Bloch vector ``n`` via ``atan2``, which keeps them exactly
    orthonormal and well conditioned near degeneracy.
    """
    h = as_matrix(h, 2)
    if not is_hermitian(h, DEFAULT_TOL):
        raise NotHermitianError("eig_hermitian_2x2 needs a Hermitian matrix")
    a = h[0, 0].real
    d = h[1, 1].real
    off = 0.5 * (h[0, 1] + np.conj(h[1, 0]))
    mean = 0.5 * (a + d)
    x, y, z = off.real, -off.imag, 0.5 * (a - d)
    r = float(np.sqrt(x * x + y * y + z * z))
    if np.sqrt(2.0) * r <= DEGENERATE_TOL:
        return np.array([mean, mean]), np.eye(2, dtype=complex)
    theta = np.arctan2(np.hypot(x, y), z)
    phi = np.arctan2(y, x)
    up = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    down = np.array([-np.exp(-1j * phi) * np.sin(theta / 2), np.cos(theta / 2)])
    vecs = np.column_stack([_fix_phase(up), _fix_phase(down)])
    return np.array([mean + r, mean - r]), vecs


def basis_vector(index: int, dim: int = 4) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / n
