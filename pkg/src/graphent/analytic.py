"""Closed-form single-qubit Bloch vectors and geometric entanglement.

Nothing here builds a state vector. The mean spin of qubit ``k`` follows
from the graph alone: ``<sx>`` only sees the qubit's own preparation, while
``<sy>`` and ``<sz>`` are the real and imaginary parts of ``2 z`` where ``z``
is a product of one factor per neighbor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .graph import GraphStateSpec, QubitPrep, classify_neighbors

__all__ = [
    "BlochVector",
    "Source",
    "EntanglementEstimate",
    "entanglement_from_bloch",
    "mean_sigma_x",
    "complex_z",
    "bloch_vector_analytic",
    "entanglement_analytic",
    "entanglement_uniform",
    "entanglement_undirected",
    "entanglement_basis_zero",
]


@dataclass(frozen=True)
class BlochVector:
    sx: float
    sy: float
    sz: float

    @property
    def norm(self) -> float:
        return math.sqrt(self.sx**2 + self.sy**2 + self.sz**2)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.sx, self.sy, self.sz)


class Source(str, Enum):
    ANALYTIC = "analytic"
    EXACT = "exact-sim"
    SHOTS = "shots"


@dataclass(frozen=True)
class EntanglementEstimate:
    value: float
    source: Source
    stderr: float | None = None
    # False when first-order error propagation breaks down (mean spin ~ 0).
    reliable: bool = True


def _clamp(e: float) -> float:
    return min(max(e, 0.0), 0.5)


def entanglement_from_bloch(norm: float) -> float:
    """Geometric measure ``(1 - |<sigma>|) / 2``, clamped into ``[0, 1/2]``."""
    return _clamp(0.5 * (1.0 - norm))


def mean_sigma_x(prep: QubitPrep) -> float:
    return math.cos(prep.alpha) * math.sin(prep.theta)


def _factor(phi: float, prep: QubitPrep) -> complex:
    return complex(math.cos(phi), math.sin(phi) * mean_sigma_x(prep))


def complex_z(spec: GraphStateSpec, k: int) -> complex:
    nb = classify_neighbors(spec, k)
    p = spec.preps[k]
    z = 0.5 * complex(
        math.sin(p.alpha) * math.sin(p.theta), math.cos(p.theta)
    )
    for m, phi in nb.ingoing:
        z *= _factor(phi, spec.preps[m])
    for n, phi in nb.outgoing:
        z *= _factor(phi, spec.preps[n])
    # an antiparallel pair acts as one coupling with the summed angle
    for l, phi_in, phi_out in nb.bidirected:
        z *= _factor(phi_in + phi_out, spec.preps[l])
    return z


def bloch_vector_analytic(spec: GraphStateSpec, k: int) -> BlochVector:
    z = complex_z(spec, k)
    return BlochVector(mean_sigma_x(spec.preps[k]), 2 * z.real, 2 * z.imag)


def entanglement_analytic(spec: GraphStateSpec, k: int) -> EntanglementEstimate:
    b = bloch_vector_analytic(spec, k)
    return EntanglementEstimate(entanglement_from_bloch(b.norm), Source.ANALYTIC)


def _coupling_sq(phi: float, alpha: float, theta: float) -> float:
    # |cos phi + i sin phi cos(alpha) sin(theta)|^2
    x = math.cos(alpha) * math.sin(theta)
    return math.cos(phi) ** 2 + math.sin(phi) ** 2 * x**2


def entanglement_uniform(phi_in: float, phi_out: float, n_in: int, n_out: int,
                         alpha: float, theta: float) -> float:
    """Entanglement of a vertex whose ingoing arcs share one weight and
    outgoing arcs share another, with no antiparallel pairs and all qubits
    prepared with the same ``(alpha, theta)``.

    Depends on the graph only through the indegree ``n_in`` and outdegree
    ``n_out``.
    """
    if n_in < 0 or n_out < 0:
        raise ValueError("degrees must be nonnegative")
    ca, sa = math.cos(alpha), math.sin(alpha)
    ct, st = math.cos(theta), math.sin(theta)
    bracket = ca**2 * st**2 + (ct**2 + sa**2 * st**2) * (
        _coupling_sq(phi_in, alpha, theta) ** n_in
        * _coupling_sq(phi_out, alpha, theta) ** n_out
    )
    return _clamp(0.5 - 0.5 * math.sqrt(bracket))


def entanglement_undirected(phi: float, degree: int, alpha: float,
                            theta: float) -> float:
    """Entanglement of a vertex of the given degree in an unweighted,
    undirected graph (every edge one arc of weight ``phi``)."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    ca, sa = math.cos(alpha), math.sin(alpha)
    ct, st = math.cos(theta), math.sin(theta)
    bracket = ca**2 * st**2 + (ct**2 + sa**2 * st**2) * (
        _coupling_sq(phi, alpha, theta) ** degree
    )
    return _clamp(0.5 - 0.5 * math.sqrt(bracket))


def entanglement_basis_zero(phi: float, degree: int) -> float:
    """Undirected case with every qubit starting in ``|0>``."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return _clamp(0.5 * (1.0 - abs(math.cos(phi) ** degree)))

