"""Unitaries of the individual optical elements.

Spatial operators act on (R, L), polarization operators on (v, h).  Wave-plate
angles are measured from the vertical axis in radians.
"""

from __future__ import annotations

import math

import numpy as np

from .numkernel import pauli_sigma, pauli_tau

_SQRT_HALF = 1.0 / math.sqrt(2.0)


def wrap_waveplate(theta: float) -> float:
    """Reduce a wave-plate angle into (−π/2, π/2]; the plate action has period π."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    r = math.remainder(theta, math.pi)
    return math.pi / 2 if r <= -math.pi / 2 else r


def wrap_phase(phi: float) -> float:
    """Reduce a phase into (−π, π]."""
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError(f"phase must be finite, got {phi!r}")
    r = math.remainder(phi, 2 * math.pi)
    return math.pi if r <= -math.pi else r


def beam_splitter() -> np.ndarray:
    """Symmetric 50/50 beam splitter, ``(1 + iτ₁)/√2``."""
    return _SQRT_HALF * (pauli_tau(0) + 1j * pauli_tau(1))


def mirror_pair() -> np.ndarray:
    """Joint action of the two interferometer mirrors, ``−iτ₁``.

    The ``−i`` is a convention that makes ``BS · mirrors · BS`` the identity.
    """
    return -1j * pauli_tau(1)


def phase_shifter(port: str, phi: float) -> np.ndarray:
    """Phase shifter ``e^{iφ}`` in the R or the L branch."""
    phi = wrap_phase(phi)
    port = port.upper()
    if port == "R":
        return np.diag([np.exp(1j * phi), 1.0 + 0j])
    if port == "L":
        return np.diag([1.0 + 0j, np.exp(1j * phi)])
    raise ValueError(f"port must be 'R' or 'L', got {port!r}")


def qwp(theta: float) -> np.ndarray:
    """Quarter-wave plate with its major axis at ``theta`` from vertical."""
    t = 2.0 * wrap_waveplate(theta)
    return _SQRT_HALF * (
        pauli_sigma(0) - 1j * math.sin(t) * pauli_sigma(1) - 1j * math.cos(t) * pauli_sigma(3)
    )


def hwp(theta: float) -> np.ndarray:
    """Half-wave plate, ``−i(σ₁ sin2θ + σ₃ cos2θ)``; equal to ``qwp(theta)²``."""
    t = 2.0 * wrap_waveplate(theta)
    return -1j * (math.sin(t) * pauli_sigma(1) + math.cos(t) * pauli_sigma(3))


def pol_triple(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """QWP(alpha), then HWP(beta), then QWP(gamma), as one operator.

    Any polarization unitary is reachable up to a global phase.
    """
    return qwp(gamma) @ hwp(beta) @ qwp(alpha)
