"""Simulate and compile single-photon two-qubit optical gates.

One photon carries two qubits: its path through a Mach-Zehnder interferometer
(R/L) and its polarization (v/h).  Phase shifters and wave plates inside the
interferometer realize any unitary on the pair.
"""

from .assembly import (
    MZConfig,
    SetupConfig,
    StationConfig,
    assemble_from_vs,
    assemble_mz,
    assemble_two_qubit,
    blocks,
    station_unitary,
)
from .gates import basis, gate, observable_pair, settings, vaa_observables
from .measure import detection_probabilities, sample_counts, tomography_pipeline
from .protocols import grover_run, vaa_full_run
from .synth import compile_polarization, compile_spatial, compile_two_qubit, decompose_vs

__version__ = "0.1.0"
