"""Geometric entanglement of qubits in RXX graph states of directed networks."""
from .analytic import (
    BlochVector,
    EntanglementEstimate,
    Source,
    bloch_vector_analytic,
    complex_z,
    entanglement_analytic,
    entanglement_basis_zero,
    entanglement_undirected,
    entanglement_uniform,
    mean_sigma_x,
)
from .graph import (
    Arc,
    GraphParseError,
    GraphStateSpec,
    NeighborClassification,
    QubitPrep,
    classify_neighbors,
    degrees,
    parse_graph,
    serialize_graph,
)
from .protocol import estimate_entanglement
from .statevector import entanglement_exact, prepare_state, reduced_bloch

__version__ = "0.1.0"
