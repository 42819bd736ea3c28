"""Dense statevector engine used as the brute-force oracle.

Qubit ``k`` is bit ``k`` of the basis index (qubit 0 is the least
significant bit). Global phases are dropped throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import BlochVector, EntanglementEstimate, Source, entanglement_from_bloch
from .graph import GraphStateSpec

__all__ = [
    "MAX_QUBITS",
    "StateVector",
    "ShotCounts",
    "rx",
    "ry",
    "rz",
    "zero_state",
    "prepare_state",
    "apply_single",
    "apply_rxx",
    "expect_pauli",
    "reduced_bloch",
    "entanglement_exact",
    "marginal_p0",
    "sample_marginal",
]

MAX_QUBITS = 24


def rx(beta: float) -> np.ndarray:
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(beta: float) -> np.ndarray:
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(beta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * beta), np.exp(0.5j * beta)])


@dataclass(frozen=True, eq=False)
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise ValueError(
                f"num_qubits must be in [1, {MAX_QUBITS}], got {self.num_qubits}"
            )
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise ValueError("amplitude array has wrong length")

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def _check(self, k: int) -> None:
        if not 0 <= k < self.num_qubits:
            raise IndexError(
                f"qubit {k} out of range for {self.num_qubits} qubits"
            )


@dataclass(frozen=True)
class ShotCounts:
    n0: int
    n1: int
    seed: int

    @property
    def shots(self) -> int:
        return self.n0 + self.n1


def zero_state(num_qubits: int) -> StateVector:
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}]")
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _apply_matrix(amps: np.ndarray, n: int, k: int, gate: np.ndarray) -> np.ndarray:
    view = amps.reshape(1 << (n - k - 1), 2, 1 << k)
    return np.einsum("ij,ajb->aib", gate, view).reshape(-1)


def apply_single(state: StateVector, k: int, gate: np.ndarray) -> StateVector:
    """Apply a 2x2 unitary (e.g. ``rx(beta)``) to qubit ``k``."""
    state._check(k)
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (2, 2):
        raise ValueError("single-qubit gate must be 2x2")
    return StateVector(
        state.num_qubits, _apply_matrix(state.amplitudes, state.num_qubits, k, gate)
    )


def _rxx_amps(amps: np.ndarray, i: int, j: int, phi: float) -> np.ndarray:
    flip = np.arange(amps.size) ^ ((1 << i) | (1 << j))
    return math.cos(phi / 2) * amps - 1j * math.sin(phi / 2) * amps[flip]


def apply_rxx(state: StateVector, i: int, j: int, phi: float) -> StateVector:
    """Apply ``exp(-i phi X_i X_j / 2)``."""
    if i == j:
        raise ValueError("RXX needs two distinct qubits")
    state._check(i)
    state._check(j)
    return StateVector(state.num_qubits, _rxx_amps(state.amplitudes, i, j, phi))


def prepare_state(spec: GraphStateSpec) -> StateVector:
    n = spec.num_qubits
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit guard")
    amps = zero_state(n).amplitudes
    for k, p in enumerate(spec.preps):
        amps = _apply_matrix(amps, n, k, rz(p.alpha) @ ry(p.theta))
    for arc in spec.arcs:
        amps = _rxx_amps(amps, arc.source, arc.target, arc.weight)
    return StateVector(n, amps)


def marginal_p0(state: StateVector, k: int) -> float:
    """Exact probability of reading 0 on qubit ``k``."""
    state._check(k)
    probs = np.abs(state.amplitudes.reshape(-1, 2, 1 << k)) ** 2
    return float(probs[:, 0, :].sum())


_PRE_ROTATION = {"x": ry(-math.pi / 2), "y": rx(math.pi / 2)}


def expect_pauli(state: StateVector, k: int, axis: str) -> float:
    state._check(k)
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    if axis != "z":
        state = apply_single(state, k, _PRE_ROTATION[axis])
    return 2.0 * marginal_p0(state, k) - state.norm()


def reduced_bloch(state: StateVector, k: int) -> BlochVector:
    return BlochVector(*(expect_pauli(state, k, a) for a in "xyz"))


def entanglement_exact(spec: GraphStateSpec, k: int) -> EntanglementEstimate:
    spec.check_vertex(k)
    b = reduced_bloch(prepare_state(spec), k)
    return EntanglementEstimate(entanglement_from_bloch(b.norm), Source.EXACT)


def sample_marginal(state: StateVector, k: int, shots: int, seed: int) -> ShotCounts:
    """Measure qubit ``k`` ``shots`` times in the computational basis.

    Outcomes are drawn from the exact marginal with a PCG64 generator
    (128-bit state) seeded by ``seed``; same seed, same counts.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p0 = min(max(marginal_p0(state, k), 0.0), 1.0)
    rng = np.random.Generator(np.random.PCG64(seed))
    n0 = int(rng.binomial(shots, p0))
    return ShotCounts(n0, shots - n0, seed)
