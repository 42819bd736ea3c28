"""Shot-based estimate of one qubit's entanglement.

One circuit per axis: prepare the graph state, rotate qubit ``k`` so the
wanted Pauli becomes ``Z``, measure in the computational basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import EntanglementEstimate, Source, entanglement_from_bloch
from .graph import GraphStateSpec
from .statevector import (
    ShotCounts,
    apply_single,
    prepare_state,
    rx,
    ry,
    sample_marginal,
)

__all__ = [
    "AxisRotation",
    "MeanEstimate",
    "basis_rotation",
    "estimate_mean",
    "axis_seed",
    "estimate_axes",
    "estimate_entanglement",
    "NORM_FLOOR",
]

NORM_FLOOR = 1e-9
_AXES = ("x", "y", "z")


@dataclass(frozen=True)
class AxisRotation:
    axis: str
    gate: str  # "RY(-pi/2)", "RX(pi/2)" or "I"

    def matrix(self) -> np.ndarray:
        if self.gate == "RY(-pi/2)":
            return ry(-math.pi / 2)
        if self.gate == "RX(pi/2)":
            return rx(math.pi / 2)
        return np.eye(2, dtype=complex)


@dataclass(frozen=True)
class MeanEstimate:
    mean: float
    stderr: float
    shots: int


def basis_rotation(axis: str) -> AxisRotation:
    gates = {"x": "RY(-pi/2)", "y": "RX(pi/2)", "z": "I"}
    if axis not in gates:
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    return AxisRotation(axis, gates[axis])


def estimate_mean(counts: ShotCounts) -> MeanEstimate:
    shots = counts.shots
    if shots < 1:
        raise ValueError("shots must be >= 1")
    mean = (counts.n0 - counts.n1) / shots
    return MeanEstimate(mean, math.sqrt(max(1.0 - mean * mean, 0.0) / shots), shots)


def axis_seed(seed: int, axis: str) -> int:
    """Independent 64-bit seed for one axis, derived from the master seed."""
    ss = np.random.SeedSequence([seed, _AXES.index(axis)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def estimate_axes(spec: GraphStateSpec, k: int, shots: int,
                  seed: int) -> dict[str, MeanEstimate]:
    """Run the three single-axis circuits, each on a freshly prepared state."""
    spec.check_vertex(k)
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    out = {}
    for axis in _AXES:
        state = prepare_state(spec)
        rot = basis_rotation(axis)
        if rot.gate != "I":
            state = apply_single(state, k, rot.matrix())
        counts = sample_marginal(state, k, shots, axis_seed(seed, axis))
        out[axis] = estimate_mean(counts)
    return out


def estimate_entanglement(spec: GraphStateSpec, k: int, shots: int,
                          seed: int) -> EntanglementEstimate:
    means = estimate_axes(spec, k, shots, seed)
    m = np.array([means[a].mean for a in _AXES])
    se = np.array([means[a].stderr for a in _AXES])
    norm = float(np.sqrt(m @ m))
    stderr = 0.5 * float(np.sqrt(np.sum((m * se) ** 2))) / max(norm, NORM_FLOOR)
    # |m| indistinguishable from 0: first-order propagation is meaningless there
    reliable = norm > 3.0 * float(np.sqrt(se @ se))
    return EntanglementEstimate(
        entanglement_from_bloch(norm), Source.SHOTS, stderr, reliable
    )
