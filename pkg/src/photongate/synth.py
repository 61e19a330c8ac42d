"""Compile unitaries into optical settings.

* ``compile_spatial``: U(2) on (R, L) -> Mach-Zehnder phases.
* ``compile_polarization``: U(2) on (v, h) -> one station (phase + three plates).
* ``compile_two_qubit``: U(4) -> four stations of the two-qubit interferometer.

The two-qubit compiler first brings the 2x2 blocks of ``S`` into a common
singular form

    S_RR = Σ_k |ψ̄_k> c_k <ψ_k|        S_LL = Σ_k |χ̄_k> c_k <χ_k|
    iS_RL = Σ_k |ψ̄_k> s_k <χ_k|       iS_LR = Σ_k |χ̄_k> s_k <ψ_k|

with ``c_k = cos``, ``s_k = sin`` of two angles, and then reads the station
unitaries off the four orthonormal frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .assembly import MZConfig, SetupConfig, StationConfig, blocks
from .errors import NotUnitaryError
from .numkernel import DEFAULT_TOL, as_matrix, dagger, eig_hermitian_2x2, is_unitary, pauli_sigma, pauli_tau

# below this, a frame vector is not derivable from its block and is completed instead
_WEIGHT_TOL = 1e-12
_GIMBAL_TOL = 1e-12


@dataclass(frozen=True)
class EulerFactors:
    """``u = e^{iδ} e^{i(a/2)P₃} e^{i(b/2)P₂} e^{i(c/2)P₃}``."""

    delta: float
    a: float
    b: float
    c: float


@dataclass(frozen=True)
class SingularFrame:
    """Angles and the four orthonormal frames; vectors are matrix columns."""

    cos_angles: tuple[float, float]
    sin_angles: tuple[float, float]
    psi: np.ndarray
    psibar: np.ndarray
    chi: np.ndarray
    chibar: np.ndarray

    @property
    def angles(self) -> tuple[float, float]:
        return tuple(math.atan2(s, c) for c, s in zip(self.cos_angles, self.sin_angles))

    def blocks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Rebuild ``(S_RR, S_RL, S_LR, S_LL)`` from the frame."""
        c = np.diag(self.cos_angles).astype(complex)
        s = np.diag(self.sin_angles).astype(complex)
        srr = self.psibar @ c @ dagger(self.psi)
        sll = self.chibar @ c @ dagger(self.chi)
        srl = -1j * self.psibar @ s @ dagger(self.chi)
        slr = -1j * self.chibar @ s @ dagger(self.psi)
        return srr, srl, slr, sll


def _require_unitary(u, dim):
    u = as_matrix(u, dim)
    if not is_unitary(u, DEFAULT_TOL):
        raise NotUnitaryError(f"input {dim}x{dim} matrix is not unitary")
    return u


def euler_su2(u, axis2, axis3) -> EulerFactors:
    """Euler decomposition of a 2x2 unitary about two anticommuting axes.

    ``axis2`` and ``axis3`` are Hermitian, square to one and anticommute.
    Returns ``b`` in [0, π].  When ``b`` is 0 or π the whole ``axis3``
    rotation is put into ``a`` and ``c = 0``.
    """
    u = _require_unitary(u, 2)
    p2 = as_matrix(axis2, 2)
    p3 = as_matrix(axis3, 2)
    p1 = -1j * p2 @ p3  # completes (p1, p2, p3) to a Pauli triple

    delta = 0.5 * float(np.angle(np.linalg.det(u)))
    v = np.exp(-1j * delta) * u  # special unitary
    # v = w0 + i(w1 p1 + w2 p2 + w3 p3) with real w; rebuild it in the standard Paulis
    w0 = 0.5 * np.trace(v)
    w = [np.trace(v @ p) / 2j for p in (p1, p2, p3)]
    std = w0 * pauli_sigma(0) + 1j * sum(wk * pauli_sigma(k) for k, wk in zip((1, 2, 3), w))

    # std = [[cos(b/2) e^{i(a+c)/2}, sin(b/2) e^{i(a-c)/2}], [...]]
    cb, sb = abs(std[0, 0]), abs(std[0, 1])
    b = 2.0 * math.atan2(sb, cb)
    if sb <= _GIMBAL_TOL:
        a, c = 2.0 * float(np.angle(std[0, 0])), 0.0
    elif cb <= _GIMBAL_TOL:
        a, c = 2.0 * float(np.angle(std[0, 1])), 0.0
    else:
        s, d = float(np.angle(std[0, 0])), float(np.angle(std[0, 1]))
        a, c = s + d, s - d
    return EulerFactors(delta=delta, a=a, b=b, c=c)


def compile_spatial(u) -> MZConfig:
    """Mach-Zehnder phases realizing ``u`` exactly, global phase included."""
    f = euler_su2(u, pauli_tau(2), pauli_tau(3))
    # U_MZ = e^{i(φ1+φ2+ϕ1+ϕ2)/2} e^{iφ2τ3/2} e^{i(ϕ1-ϕ2)τ2/2} e^{iφ1τ3/2}
    total = 2.0 * f.delta - f.a - f.c  # ϕ1 + ϕ2
    return MZConfig(phi1=f.c, phi2=f.a, vphi1=0.5 * (total + f.b), vphi2=0.5 * (total - f.b))


def compile_polarization(u) -> StationConfig:
    """Station (phase + wave plates) realizing ``u`` exactly, global phase included."""
    f = euler_su2(u, pauli_sigma(3), pauli_sigma(2))
    # QWP(γ)HWP(β)QWP(α) = e^{-i(γ+3π/4)σ2} e^{i(α-2β+γ)σ3} e^{i(α-π/4)σ2}
    alpha = 0.5 * f.c + math.pi / 4
    gamma = -0.5 * f.a - 3 * math.pi / 4
    # β from the unreduced α, γ; the plate angles are reduced mod π afterwards
    beta = 0.5 * (alpha + gamma - 0.5 * f.b)
    return StationConfig(phase=f.delta, alpha=alpha, beta=beta, gamma=gamma)


def _complement(u: np.ndarray) -> np.ndarray:
    """A unit vector orthogonal to the unit vector ``u`` in C²."""
    return np.array([-np.conj(u[1]), np.conj(u[0])])


def _orthonormal_pair(raw: list[np.ndarray], weights: list[float]) -> np.ndarray:
    """Turn two approximate frame vectors into an exact orthonormal pair.

    ``raw[k]`` is the unnormalized candidate whose length is ``weights[k]``.
    The longer one fixes the direction; the other becomes its orthogonal
    complement with the phase of its candidate.  Candidates shorter than
    ``_WEIGHT_TOL`` carry no information: their phase is set to 1, and if
    both are that short the canonical basis is used.
    """
    k = 0 if weights[0] >= weights[1] else 1
    other = 1 - k
    out = [None, None]
    if weights[k] <= _WEIGHT_TOL:
        return np.eye(2, dtype=complex)
    out[k] = raw[k] / np.linalg.norm(raw[k])
    comp = _complement(out[k])
    if weights[other] > _WEIGHT_TOL:
        ov = np.vdot(comp, raw[other])
        if abs(ov) > 0:
            comp = comp * (ov / abs(ov))
    out[other] = comp
    return np.column_stack(out)


def singular_frame(s) -> SingularFrame:
    """Common singular form of the four blocks of a unitary 4x4 ``s``.

    The ψ frame diagonalizes ``S_RR† S_RR``.  The ψ̄ and χ̄ frames are the
    images of ψ under ``S_RR`` and ``iS_LR``, so ``<ψ̄_k|S_RR|ψ_k> = c_k ≥ 0``
    and ``<χ̄_k|iS_LR|ψ_k> = s_k ≥ 0``.  The χ frame follows from

        χ_k = c_k S_LL† χ̄_k + s_k (iS_RL)† ψ̄_k,

    which holds exactly for a unitary ``s`` and remains well conditioned when
    either ``c_k`` or ``s_k`` vanishes.  Deriving χ this way removes the
    residual relative phases between the (ψ, ψ̄) and (χ, χ̄) pairs, so all four
    block formulas hold without extra phase factors.
    """
    s = _require_unitary(s, 4)
    srr, srl, slr, sll = blocks(s)
    _, psi = eig_hermitian_2x2(dagger(srr) @ srr)

    img_rr = [srr @ psi[:, k] for k in range(2)]
    img_lr = [1j * slr @ psi[:, k] for k in range(2)]
    cos_k = [float(np.linalg.norm(v)) for v in img_rr]
    sin_k = [float(np.linalg.norm(v)) for v in img_lr]
    norm = [math.hypot(c, si) for c, si in zip(cos_k, sin_k)]
    cos_k = [c / n for c, n in zip(cos_k, norm)]
    sin_k = [si / n for si, n in zip(sin_k, norm)]
    if cos_k[1] > cos_k[0]:
        psi = psi[:, ::-1]
        img_rr, img_lr = img_rr[::-1], img_lr[::-1]
        cos_k, sin_k = cos_k[::-1], sin_k[::-1]

    psibar = _orthonormal_pair(img_rr, cos_k)
    chibar = _orthonormal_pair(img_lr, sin_k)
    raw_chi = [
        cos_k[k] * dagger(sll) @ chibar[:, k] + sin_k[k] * dagger(1j * srl) @ psibar[:, k]
        for k in range(2)
    ]
    chi = _orthonormal_pair(raw_chi, [float(np.linalg.norm(v)) for v in raw_chi])
    return SingularFrame(
        cos_angles=(cos_k[0], cos_k[1]),
        sin_angles=(sin_k[0], sin_k[1]),
        psi=psi,
        psibar=psibar,
        chi=chi,
        chibar=chibar,
    )


def vs_from_frame(frame: SingularFrame) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Station unitaries ``(V1, V2, V_R, V_L)`` from a singular frame (upper signs)."""
    angles = frame.angles
    mid_r = np.diag([np.exp(-1j * t) for t in angles])
    mid_l = np.diag([np.exp(1j * t) for t in angles])
    v1 = -1j * frame.chi @ dagger(frame.psi)
    v2 = 1j * frame.psibar @ dagger(frame.chibar)
    vr = frame.chibar @ mid_r @ dagger(frame.chi)
    vl = frame.chibar @ mid_l @ dagger(frame.chi)
    return v1, v2, vr, vl


def decompose_vs(s) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Polarization unitaries ``(V1, V2, V_R, V_L)`` whose interferometer equals ``s``."""
    return vs_from_frame(singular_frame(s))


def compile_two_qubit(u) -> SetupConfig:
    """Optical settings of the two-qubit interferometer that realize ``u``."""
    v1, v2, vr, vl = decompose_vs(u)
    return SetupConfig(
        entry=compile_polarization(v1),
        exit=compile_polarization(v2),
        arm_r=compile_polarization(vr),
        arm_l=compile_polarization(vl),
    )
