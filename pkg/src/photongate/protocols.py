"""Scripted experiments: four-item Grover search and the VAA retrodiction game."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .assembly import StationConfig
from .gates import basis, gate
from .numkernel import STANDARD_LABELS, basis_vector
from .synth import compile_polarization

ZERO_TOL = 1e-9
VAA_DETECTORS = ("f1", "f2", "f3", "f4")


# -- Grover ----------------------------------------------------------------------


def grover_probabilities(k: int) -> np.ndarray:
    """Detector probabilities for oracle ``G_k`` (k = 1..4), input |Rv>."""
    if k not in (1, 2, 3, 4):
        raise ValueError(f"oracle index must be 1..4, got {k!r}")
    out = gate("grover_sg") @ gate(f"grover_g{k}") @ gate("walsh_hadamard") @ basis_vector(0)
    return np.abs(out) ** 2


def grover_run(k: int) -> str:
    """Name of the detector that clicks when oracle ``G_k`` is in place."""
    p = grover_probabilities(k)
    i = int(np.argmax(p))
    if abs(p[i] - 1.0) > 1e-12:  # pragma: no cover - guards the gate constants
        raise RuntimeError(f"Grover run for G{k} is not deterministic: {p}")
    return STANDARD_LABELS[i]


# -- VAA -------------------------------------------------------------------------


@dataclass(frozen=True)
class VaaMeasurement:
    which: int  # 1, 2, 3 for σ1, σ2, σ3
    outcome: int  # +1 or -1

    def __post_init__(self):
        if self.which not in (1, 2, 3):
            raise ValueError(f"measurement must be 1, 2 or 3, got {self.which!r}")
        if self.outcome not in (1, -1):
            raise ValueError(f"outcome must be +1 or -1, got {self.outcome!r}")


@dataclass(frozen=True)
class VaaTranscript:
    measurement: VaaMeasurement
    prepared_state: np.ndarray
    detector: int  # 1..4
    inferred_outcome: int
    seed: int | None = None

    @property
    def consistent(self) -> bool:
        return self.inferred_outcome == self.measurement.outcome

    def to_json(self) -> dict:
        return {
            "measurement": f"sigma{self.measurement.which}",
            "outcome": self.measurement.outcome,
            "detector": VAA_DETECTORS[self.detector - 1],
            "inferred": self.inferred_outcome,
            "consistent": self.consistent,
            "seed": self.seed,
        }


# column order of the probability table
VAA_PREPARATIONS = tuple(VaaMeasurement(w, o) for w in (1, 2, 3) for o in (1, -1))


def vaa_prepare(m: VaaMeasurement) -> np.ndarray:
    """Photon-1 state after the measurer found σ_w with the given outcome and rewrote v."""
    e = np.eye(4, dtype=complex)
    s = m.outcome
    if m.which == 1:
        v = 0.5 * (e[0] + s * e[1] + s * e[2] + e[3])
    elif m.which == 2:
        v = 0.5 * (e[0] + s * 1j * e[1] - s * 1j * e[2] + e[3])
    else:
        v = e[0] if s == 1 else e[3]
    return v


def detected_polarization(m: VaaMeasurement) -> np.ndarray:
    """Eigenvector of σ_w for the recorded outcome, in (v, h) components."""
    r = 1.0 / np.sqrt(2.0)
    if m.which == 1:
        return np.array([r, m.outcome * r], dtype=complex)
    if m.which == 2:
        return np.array([r, m.outcome * 1j * r], dtype=complex)
    return np.array([1.0, 0.0], dtype=complex) if m.outcome == 1 else np.array([0.0, 1.0], dtype=complex)


def rewrite_unitary(m: VaaMeasurement) -> np.ndarray:
    """A polarization unitary taking |v> to the detected polarization."""
    e = detected_polarization(m)
    return np.column_stack([e, [-np.conj(e[1]), np.conj(e[0])]])


def rewrite_station(m: VaaMeasurement) -> StationConfig:
    """Wave-plate settings recording the measured result on photon 1."""
    return compile_polarization(rewrite_unitary(m))


def vaa_probabilities(state) -> np.ndarray:
    """Probabilities of the four VAA basis outcomes for ``state``."""
    f = basis("vaa")
    return np.abs(np.conj(f) @ np.asarray(state, dtype=complex)) ** 2


@lru_cache(maxsize=1)
def _table() -> np.ndarray:
    return np.column_stack([vaa_probabilities(vaa_prepare(m)) for m in VAA_PREPARATIONS])


def vaa_table() -> np.ndarray:
    """4x6 table: rows are f1..f4, columns 1+, 1−, 2+, 2−, 3+, 3−."""
    return _table().copy()


def vaa_infer(detector: int, which: int) -> int:
    """Measured outcome implied by the VAA detector and the announced measurement.

    The rule is read off the zero pattern of :func:`vaa_table`.
    """
    if detector not in (1, 2, 3, 4) or which not in (1, 2, 3):
        raise ValueError(f"invalid detector/measurement {detector!r}/{which!r}")
    row = _table()[detector - 1]
    col_plus = VAA_PREPARATIONS.index(VaaMeasurement(which, 1))
    col_minus = VAA_PREPARATIONS.index(VaaMeasurement(which, -1))
    plus, minus = row[col_plus] > ZERO_TOL, row[col_minus] > ZERO_TOL
    if plus == minus:  # pragma: no cover - would mean the basis is wrong
        raise RuntimeError(f"detector f{detector} does not decide σ{which}")
    return 1 if plus else -1


def _sample_index(p, u: float) -> int:
    cdf = np.cumsum(p)
    cdf[-1] = 1.0
    return int(min(np.searchsorted(cdf, u, side="right"), len(p) - 1))


def vaa_run(m: VaaMeasurement, seed: int) -> VaaTranscript:
    """Stages 2b and 3 for a given measurement record: prepare, detect, infer."""
    if int(seed) < 0:
        raise ValueError("seed must be non-negative")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    state = vaa_prepare(m)
    detector = _sample_index(_table()[:, VAA_PREPARATIONS.index(m)], rng.random()) + 1
    return VaaTranscript(m, state, detector, vaa_infer(detector, m.which), seed=int(seed))


def vaa_full_run(seed: int) -> VaaTranscript:
    """All three stages with the measurement choice and outcome drawn from ``seed``.

    The outcome is ±1 with probability ½ for every σ_w because the
    prepared two-photon state is maximally entangled.
    """
    if int(seed) < 0:
        raise ValueError("seed must be non-negative")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    u_which, u_outcome, u_detector = rng.random(3)
    m = VaaMeasurement(which=1 + min(int(3 * u_which), 2), outcome=1 if u_outcome < 0.5 else -1)
    state = vaa_prepare(m)
    detector = _sample_index(_table()[:, VAA_PREPARATIONS.index(m)], u_detector) + 1
    return VaaTranscript(m, state, detector, vaa_infer(detector, m.which), seed=int(seed))


def vaa_detector_name(j: int) -> str:
    return VAA_DETECTORS[j - 1]

