"""Named two-qubit gates, bases and observable pairs, with published settings.

Gate matrices are built from their Pauli-operator expressions.  Where the
optical settings for a gate are published they are stored as exact
:class:`StationConfig` constants (angles as multiples of π) and are never
recompiled, so that assembling them is an independent check of the matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .assembly import PROJ_L, PROJ_R, SetupConfig, StationConfig, assemble_from_vs
from .errors import SettingsUnavailable, UnknownGateError
from .numkernel import basis_vector, pauli_product

GATE_NAMES = (
    "cnot_tau_sigma",
    "cnot_sigma_tau",
    "swap",
    "walsh_hadamard",
    "bell",
    "grover_g1",
    "grover_g2",
    "grover_g3",
    "grover_g4",
    "grover_sg",
    "vaa",
    "tomo_1",
    "tomo_2",
    "tomo_3",
    "tomo_4",
    "tomo_5",
)

_I2 = np.eye(2, dtype=complex)
_ONE = np.eye(4, dtype=complex)


def _tp(j: int, k: int) -> np.ndarray:
    return pauli_product(j, k)


def _t(j: int) -> np.ndarray:
    return pauli_product(j, 0)


def _s(k: int) -> np.ndarray:
    return pauli_product(0, k)


def _sig(k: int) -> np.ndarray:
    return pauli_product(0, k)[:2, :2]


def canonical_name(name: str) -> str:
    """Accept ``snake_case`` or ``kebab-case`` names."""
    key = str(name).strip().lower().replace("-", "_")
    if key not in GATE_NAMES:
        raise UnknownGateError(f"unknown gate {name!r}")
    return key


# -- polarization operators that appear in published settings ------------------

_EPS = 0.5 * (1 + 1j)
_PROJ_V = np.diag([1.0 + 0j, 0.0])
_PROJ_H = np.diag([0.0 + 0j, 1.0])

# (V1, V2, V_R, V_L) of the published realizations
_PUBLISHED_VS = {
    "cnot_tau_sigma": (_sig(1), _I2, _sig(1), _sig(1)),
    "cnot_sigma_tau": (-1j * _I2, 1j * _I2, _I2, _sig(3)),
    "swap": (-1j * _sig(1), 1j * _sig(1), _I2, -_sig(3)),
    "walsh_hadamard": (_I2, -_I2, -_EPS * (_sig(1) + _sig(3)), -np.conj(_EPS) * (_sig(1) + _sig(3))),
    "bell": (_I2, _I2, (_I2 - 1j * _sig(1)) / math.sqrt(2), (_I2 + 1j * _sig(1)) / math.sqrt(2)),
    # both arm operators negated relative to the printed choice, see PUBLISHED_GROVER_SG_LITERAL
    "grover_sg": (-1j * _I2, 1j * _I2, -_sig(1), _I2),
    "vaa": (
        1j * _sig(1),
        _I2,
        (1 - 1j) / math.sqrt(8) * (_I2 + 1j * _sig(1) + 1j * _sig(2) - 1j * _sig(3)),
        (_I2 + 1j * _sig(2)) / math.sqrt(2),
    ),
    "tomo_1": (_I2, -_I2, -_EPS * (_sig(1) + _sig(3)), -np.conj(_EPS) * (_sig(1) + _sig(3))),
    "tomo_2": (1j * _I2, -1j * _I2, _EPS * (_I2 - 1j * _sig(1)), np.conj(_EPS) * (_I2 - 1j * _sig(1))),
    "tomo_3": (_I2, _I2, _I2, _I2),
    "tomo_4": (_I2, _I2, _I2, -1j * _sig(2)),
    "tomo_5": (-1j * _I2, _sig(1), _I2, 1j * _sig(1)),
}


def _st(phase: str, alpha: str, beta: str, gamma: str) -> StationConfig:
    """Station from angles given as multiples of π (``"1/4"`` means π/4)."""
    pi = lambda x: float(Fraction(x)) * math.pi  # noqa: E731
    return StationConfig(phase=pi(phase), alpha=pi(alpha), beta=pi(beta), gamma=pi(gamma))


# Station realizations of the polarization operators above.
_ST = {
    "1": _st("0", "0", "1/2", "0"),
    "-1": _st("0", "0", "0", "0"),
    "i": _st("-1/2", "0", "0", "0"),
    "-i": _st("1/2", "0", "0", "0"),
    "s1": _st("1/2", "0", "1/4", "0"),  # σ1 = i·HWP(π/4)
    "-s1": _st("-1/2", "0", "1/4", "0"),
    "is1": _st("0", "0", "-1/4", "0"),  # HWP(−π/4)
    "-is1": _st("0", "0", "1/4", "0"),  # HWP(π/4)
    "s3": _st("1/2", "0", "0", "1/2"),  # σ3 = i·HWP(0)
    "-s3": _st("-1/2", "0", "0", "1/2"),
    "-is2": _st("0", "1/4", "0", "-1/4"),
    "wh_r": _st("-1/4", "-1/4", "1/8", "0"),  # −i e^{iπ/4} HWP(π/8)
    "wh_l": _st("1/4", "-1/4", "-3/8", "0"),  # −i e^{−iπ/4} HWP(π/8)
    "t2_r": _st("1/4", "0", "3/8", "0"),
    "t2_l": _st("-1/4", "0", "3/8", "0"),
    "qwp+": _st("0", "0", "3/8", "0"),  # QWP(π/4)
    "qwp-": _st("0", "0", "-3/8", "0"),  # QWP(−π/4)
    "vaa_r": _st("-1/4", "1/4", "-1/4", "0"),  # e^{−iπ/4} QWP(0) QWP(−π/4)
    "vaa_l": _st("0", "0", "3/8", "-1/4"),  # QWP(π/4) QWP(0) QWP(−π/4)
}


def _setup(v1: str, v2: str, vr: str, vl: str) -> SetupConfig:
    return SetupConfig(entry=_ST[v1], exit=_ST[v2], arm_r=_ST[vr], arm_l=_ST[vl])


_PUBLISHED_SETTINGS = {
    "cnot_tau_sigma": _setup("s1", "1", "s1", "s1"),
    "cnot_sigma_tau": _setup("-i", "i", "1", "s3"),
    "swap": _setup("-is1", "is1", "1", "-s3"),
    "walsh_hadamard": _setup("1", "-1", "wh_r", "wh_l"),
    "bell": _setup("1", "1", "qwp+", "qwp-"),
    "grover_sg": _setup("-i", "i", "-s1", "1"),
    "vaa": _setup("is1", "1", "vaa_r", "vaa_l"),
    "tomo_1": _setup("1", "-1", "wh_r", "wh_l"),
    "tomo_2": _setup("i", "-i", "t2_r", "t2_l"),
    "tomo_3": _setup("1", "1", "1", "1"),
    "tomo_4": _setup("1", "1", "1", "-is2"),
    "tomo_5": _setup("-i", "s1", "1", "is1"),
}

# Grover S_G settings exactly as printed: iV1 = −iV2 = −V_L = 1, V_R = σ1.
# They assemble to −S_G, not S_G; the sign does not change detection statistics.
PUBLISHED_GROVER_SG_LITERAL = _setup("-i", "i", "s1", "-1")


def _grover(k: int) -> np.ndarray:
    e = basis_vector(k - 1)
    return _ONE - 2.0 * np.outer(e, e)


def _matrix(name: str) -> np.ndarray:
    if name == "cnot_tau_sigma":
        return np.kron(PROJ_R, _I2) + np.kron(PROJ_L, _sig(1))
    if name == "cnot_sigma_tau":
        return np.kron(np.eye(2), _PROJ_V) + np.kron(_sig(1), _PROJ_H)
    if name == "swap":
        return 0.5 * (_ONE + _tp(1, 1) + _tp(2, 2) + _tp(3, 3))
    if name in ("walsh_hadamard", "tomo_1"):
        return 0.5 * (_t(1) + _t(3)) @ (_s(1) + _s(3))
    if name == "bell":
        return (_ONE - 1j * _tp(2, 1)) / math.sqrt(2)
    if name.startswith("grover_g"):
        return _grover(int(name[-1]))
    if name == "grover_sg":
        return 0.5 * (_ONE - _t(1) - _s(1) - _tp(1, 1))
    if name == "vaa":
        # the gate is published only through its settings
        return assemble_from_vs(*_PUBLISHED_VS["vaa"])
    if name == "tomo_2":
        return 0.5 * (_ONE - 1j * _t(1)) @ (_ONE - 1j * _s(1))
    if name == "tomo_3":
        return _ONE.copy()
    if name == "tomo_4":
        return 0.5 * (_ONE + _t(2) - 1j * _s(2) + 1j * _tp(2, 2))
    if name == "tomo_5":
        return 0.5 * (_ONE - 1j * _t(2) - 1j * _tp(1, 1) - 1j * _tp(3, 1))
    raise UnknownGateError(f"unknown gate {name!r}")  # pragma: no cover


def gate(name: str) -> np.ndarray:
    """Matrix of a named gate in (Rv, Rh, Lv, Lh) order."""
    return _matrix(canonical_name(name))


def has_settings(name: str) -> bool:
    return canonical_name(name) in _PUBLISHED_SETTINGS


def settings(name: str) -> SetupConfig:
    """Published optical settings of a named gate."""
    key = canonical_name(name)
    try:
        return _PUBLISHED_SETTINGS[key]
    except KeyError:
        raise SettingsUnavailable(f"no published settings for {name!r}") from None


def published_vs(name: str) -> tuple[np.ndarray, ...]:
    """Published ``(V1, V2, V_R, V_L)`` as matrices."""
    key = canonical_name(name)
    if key not in _PUBLISHED_VS:
        raise SettingsUnavailable(f"no published settings for {name!r}")
    return tuple(m.copy() for m in _PUBLISHED_VS[key])


# -- bases -----------------------------------------------------------------------

_R2 = 1.0 / math.sqrt(2.0)


def _bell_states() -> np.ndarray:
    e = np.eye(4, dtype=complex)
    return np.array(
        [
            _R2 * (e[0] - e[3]),
            _R2 * (e[1] - e[2]),
            _R2 * (e[1] + e[2]),
            _R2 * (e[0] + e[3]),
        ]
    )


# Rows are the VAA bras in terms of the Bell bras.
VAA_BELL_COEFFS = 0.5 * np.array(
    [
        [1, -1j, 1, 1],
        [1, 1j, -1, 1],
        [-1, 1j, 1, 1],
        [-1, -1j, -1, 1],
    ]
)


def basis(name: str) -> np.ndarray:
    """Rows are the four states of the ``standard``, ``bell`` or ``vaa`` basis."""
    key = name.strip().lower()
    if key == "standard":
        return np.eye(4, dtype=complex)
    if key == "bell":
        return _bell_states()
    if key == "vaa":
        # <f_j| = Σ_k M_jk <B_k|, hence |f_j> = Σ_k conj(M_jk) |B_k>
        return np.conj(VAA_BELL_COEFFS) @ _bell_states()
    raise ValueError(f"unknown basis {name!r}")


# -- observables -----------------------------------------------------------------


@dataclass(frozen=True)
class ObservablePair:
    """Two commuting ±1-valued observables whose joint eigenbasis is measured."""

    a: np.ndarray
    b: np.ndarray

    @property
    def ab(self) -> np.ndarray:
        return self.a @ self.b


# (A, B) as (τ_j, σ_k) index pairs
TOMOGRAPHY_PAIRS = (
    ((1, 0), (0, 1)),
    ((2, 0), (0, 2)),
    ((3, 0), (0, 3)),
    ((1, 2), (2, 3)),
    ((2, 1), (3, 2)),
)


def observable_pair(k: int) -> ObservablePair:
    """The k-th (1..5) pair of the minimal complete tomography set."""
    if k not in range(1, 6):
        raise IndexError(f"observable pair index must be 1..5, got {k!r}")
    (ja, ka), (jb, kb) = TOMOGRAPHY_PAIRS[k - 1]
    return ObservablePair(a=_tp(ja, ka), b=_tp(jb, kb))


def vaa_observables() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(A, B, AB)`` whose joint eigenbasis is the VAA basis."""
    a = 0.5 * (_t(3) + _s(3) + _tp(1, 2) - _tp(2, 1))
    b = 0.5 * (_t(1) + _s(1) - _tp(2, 3) + _tp(3, 2))
    ab = 0.5 * (-_t(2) + _s(2) + _tp(1, 3) + _tp(3, 1))
    return a, b, ab


def tomography_gate(k: int) -> np.ndarray:
    return gate(f"tomo_{k}")
