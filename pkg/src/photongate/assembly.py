"""Forward models: from optical settings to the interferometer unitary.

A two-qubit setup has four stations, each a phase shifter followed by a
QWP-HWP-QWP triple: one in the R entry port (``entry``), one in the R exit
port (``exit``) and one in each interferometer arm (``arm_r``, ``arm_l``).
The L entry and exit ports are always empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .elements import (
    beam_splitter,
    mirror_pair,
    phase_shifter,
    pol_triple,
    wrap_phase,
    wrap_waveplate,
)
from .errors import NotUnitaryError
from .numkernel import DEFAULT_TOL, as_matrix, is_unitary, pauli_tau

# |R><R| and |L><L| on the spatial qubit
PROJ_R = np.diag([1.0 + 0j, 0.0])
PROJ_L = np.diag([0.0 + 0j, 1.0])
# τ = |L><R|
TAU = np.array([[0, 0], [1, 0]], dtype=complex)

_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class MZConfig:
    """Phases of the spatial Mach-Zehnder gate.

    ``phi1``/``phi2`` sit in the R entry/exit ports, ``vphi1``/``vphi2`` in
    the R/L interferometer arms.
    """

    phi1: float = 0.0
    phi2: float = 0.0
    vphi1: float = 0.0
    vphi2: float = 0.0

    def __post_init__(self):
        for name in ("phi1", "phi2", "vphi1", "vphi2"):
            object.__setattr__(self, name, wrap_phase(getattr(self, name)))


@dataclass(frozen=True)
class StationConfig:
    """One phase shifter plus a QWP(alpha)-HWP(beta)-QWP(gamma) triple."""

    phase: float = 0.0
    alpha: float = 0.0
    beta: float = np.pi / 2
    gamma: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "phase", wrap_phase(self.phase))
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, wrap_waveplate(getattr(self, name)))


@dataclass(frozen=True)
class SetupConfig:
    entry: StationConfig = field(default_factory=StationConfig)
    exit: StationConfig = field(default_factory=StationConfig)
    arm_r: StationConfig = field(default_factory=StationConfig)
    arm_l: StationConfig = field(default_factory=StationConfig)


def assemble_mz(cfg: MZConfig) -> np.ndarray:
    """Unitary of the spatial Mach-Zehnder gate, multiplied element by element."""
    return (
        phase_shifter("R", cfg.phi2)
        @ beam_splitter()
        @ phase_shifter("R", cfg.vphi1)
        @ phase_shifter("L", cfg.vphi2)
        @ mirror_pair()
        @ beam_splitter()
        @ phase_shifter("R", cfg.phi1)
    )


def station_unitary(s: StationConfig) -> np.ndarray:
    # the phase shifter is a scalar on polarization, so its position is irrelevant
    return np.exp(1j * s.phase) * pol_triple(s.alpha, s.beta, s.gamma)


def _port_op(r_op, l_op) -> np.ndarray:
    return np.kron(PROJ_R, r_op) + np.kron(PROJ_L, l_op)


def assemble_two_qubit(cfg: SetupConfig) -> np.ndarray:
    """Unitary of the full two-qubit gate as a product of 4x4 element factors.

    This path does not use the block formulas of :func:`assemble_from_vs`, so
    the two can be checked against each other.
    """
    v1 = station_unitary(cfg.entry)
    v2 = station_unitary(cfg.exit)
    vr = station_unitary(cfg.arm_r)
    vl = station_unitary(cfg.arm_l)
    bs = np.kron(beam_splitter(), _I2)
    mirr = np.kron(mirror_pair(), _I2)
    return _port_op(v2, _I2) @ bs @ _port_op(vr, vl) @ mirr @ bs @ _port_op(v1, _I2)


def _check_unitary(name, m, tol=DEFAULT_TOL):
    m = as_matrix(m, 2)
    if not is_unitary(m, tol):
        raise NotUnitaryError(f"{name} is not unitary")
    return m


def from_blocks(srr, srl, slr, sll) -> np.ndarray:
    """Assemble a 4x4 operator from its 2x2 spatial blocks."""
    return np.block([[srr, srl], [slr, sll]])


def blocks(s) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Split a 4x4 operator into ``(S_RR, S_RL, S_LR, S_LL)``.

    ``S_LR`` takes R input to L output, i.e. it is the lower-left block.
    """
    s = as_matrix(s, 4)
    return s[:2, :2].copy(), s[:2, 2:].copy(), s[2:, :2].copy(), s[2:, 2:].copy()


def assemble_from_vs(v1, v2, vr, vl) -> np.ndarray:
    """Two-qubit gate from the four station unitaries via the block formulas."""
    v1 = _check_unitary("V1", v1)
    v2 = _check_unitary("V2", v2)
    vr = _check_unitary("V_R", vr)
    vl = _check_unitary("V_L", vl)
    srr = 0.5 * v2 @ (vr + vl) @ v1
    sll = 0.5 * (vr + vl)
    srl = -0.5j * v2 @ (vr - vl)
    slr = 0.5j * (vr - vl) @ v1
    return from_blocks(srr, srl, slr, sll)


def bs_halfgate(r1, r2, l1, l2) -> np.ndarray:
    """Closed form of a beam splitter dressed with polarization gates.

    ``r1``/``l1`` act before the splitter on the R/L inputs, ``r2``/``l2``
    after it on the R/L outputs.
    """
    r1, r2, l1, l2 = (_check_unitary(n, m) for n, m in zip(("R1", "R2", "L1", "L2"), (r1, r2, l1, l2)))
    tau = TAU
    return (
        np.kron(PROJ_R, r2 @ r1)
        + np.kron(PROJ_L, l2 @ l1)
        + 1j * np.kron(tau, l2 @ r1)
        + 1j * np.kron(tau.conj().T, r2 @ l1)
    ) / np.sqrt(2.0)


def bs_stage(entry_r=None, entry_l=None, exit_r=None, exit_l=None) -> np.ndarray:
    """Beam splitter with optional polarization gates in its four ports.

    ``None`` marks an empty port.  Computed as a plain product of factors.
    """
    ops = [_I2 if m is None else as_matrix(m, 2) for m in (entry_r, entry_l, exit_r, exit_l)]
    return _port_op(ops[2], ops[3]) @ np.kron(beam_splitter(), _I2) @ _port_op(ops[0], ops[1])


def equivalent_placements(r1, r2, l1, l2) -> dict[str, dict[str, np.ndarray | None]]:
    """The five port arrangements that realize ``bs_halfgate(r1, r2, l1, l2)``.

    Besides the central arrangement with all four ports occupied, one input or
    one output port can be left empty by moving its gate through the splitter.
    """
    r1, r2, l1, l2 = (as_matrix(m, 2) for m in (r1, r2, l1, l2))
    inv = lambda m: m.conj().T  # noqa: E731  (unitary inverse)
    return {
        "all_ports": dict(entry_r=r1, entry_l=l1, exit_r=r2, exit_l=l2),
        "empty_entry_l": dict(entry_r=inv(l1) @ r1, entry_l=None, exit_r=r2 @ l1, exit_l=l2 @ l1),
        "empty_entry_r": dict(entry_r=None, entry_l=inv(r1) @ l1, exit_r=r2 @ r1, exit_l=l2 @ r1),
        "empty_exit_r": dict(entry_r=r2 @ r1, entry_l=r2 @ l1, exit_r=None, exit_l=l2 @ inv(r2)),
        "empty_exit_l": dict(entry_r=l2 @ r1, entry_l=l2 @ l1, exit_r=r2 @ inv(l2), exit_l=None),
    }


def spatial_tau(k: int) -> np.ndarray:
    """``τ_k ⊗ 1`` as a 4x4 operator."""
    return np.kron(pauli_tau(k), _I2)
