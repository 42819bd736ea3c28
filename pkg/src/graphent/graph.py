"""Directed weighted graphs carrying per-qubit preparation angles.

Graph file format (line oriented, ``#`` starts a comment)::

    qubits <V>
    prep <k> <alpha> <theta>
    arc <i> <j> <phi>

Angles are radians. Besides decimal floats the tokens ``pi``, ``pi/2``,
``3pi/4``, ``-pi/16``, ``3*pi/8`` are accepted.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

__all__ = [
    "Arc",
    "QubitPrep",
    "GraphStateSpec",
    "NeighborClassification",
    "GraphParseError",
    "parse_angle",
    "parse_graph",
    "serialize_graph",
    "classify_neighbors",
    "degrees",
]


class GraphParseError(ValueError):
    """Raised for malformed graph documents; carries the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


_PI_RE = re.compile(
    r"^(?P<sign>[+-]?)(?P<num>\d+(?:\.\d*)?)?\*?pi(?:/(?P<den>\d+(?:\.\d*)?))?$"
)


def parse_angle(token: str) -> float:
    """Parse a radian angle given as a float or a ``pi`` fraction."""
    tok = token.strip().lower()
    m = _PI_RE.match(tok)
    if m:
        value = math.pi
        if m.group("num"):
            value *= float(m.group("num"))
        if m.group("den"):
            den = float(m.group("den"))
            if den == 0:
                raise ValueError(f"zero denominator in angle {token!r}")
            value /= den
        return -value if m.group("sign") == "-" else value
    try:
        value = float(tok)
    except ValueError:
        raise ValueError(f"not an angle: {token!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite: {token!r}")
    return value


@dataclass(frozen=True)
class Arc:
    source: int
    target: int
    weight: float

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError(f"self-loop at vertex {self.source}")
        if not math.isfinite(self.weight):
            raise ValueError("arc weight must be finite")


@dataclass(frozen=True)
class QubitPrep:
    alpha: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.theta)):
            raise ValueError("preparation angles must be finite")


@dataclass(frozen=True)
class GraphStateSpec:
    """A directed network plus the product state the couplings act on.

    Arcs are normalized on construction: parallel arcs with the same
    direction are merged by summing their weights and the result is sorted
    by ``(source, target)``. Antiparallel pairs are kept as two arcs.
    """

    num_qubits: int
    arcs: tuple[Arc, ...] = ()
    preps: tuple[QubitPrep, ...] = field(default=())

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        preps = tuple(self.preps) or (QubitPrep(),) * self.num_qubits
        if len(preps) != self.num_qubits:
            raise ValueError(
                f"expected {self.num_qubits} preps, got {len(preps)}"
            )
        merged: dict[tuple[int, int], float] = {}
        for arc in self.arcs:
            for v in (arc.source, arc.target):
                if not 0 <= v < self.num_qubits:
                    raise ValueError(
                        f"vertex {v} out of range for {self.num_qubits} qubits"
                    )
            key = (arc.source, arc.target)
            merged[key] = merged.get(key, 0.0) + arc.weight
        arcs = tuple(Arc(i, j, w) for (i, j), w in sorted(merged.items()))
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "preps", preps)

    def weight(self, i: int, j: int) -> float | None:
        for arc in self.arcs:
            if arc.source == i and arc.target == j:
                return arc.weight
        return None

    def with_arc_weight(self, i: int, j: int, weight: float) -> GraphStateSpec:
        """Return a copy where arc ``i -> j`` has the given weight (added if absent)."""
        arcs = [a for a in self.arcs if (a.source, a.target) != (i, j)]
        arcs.append(Arc(i, j, weight))
        return GraphStateSpec(self.num_qubits, tuple(arcs), self.preps)

    def with_prep(self, k: int, alpha: float | None = None,
                  theta: float | None = None) -> GraphStateSpec:
        preps = list(self.preps)
        old = preps[k]
        preps[k] = QubitPrep(
            old.alpha if alpha is None else alpha,
            old.theta if theta is None else theta,
        )
        return GraphStateSpec(self.num_qubits, self.arcs, tuple(preps))

    def check_vertex(self, k: int) -> None:
        if not 0 <= k < self.num_qubits:
            raise IndexError(
                f"qubit {k} out of range for {self.num_qubits} qubits"
            )


@dataclass(frozen=True)
class NeighborClassification:
    """Neighbors of one vertex split by arc direction.

    ``ingoing`` holds ``(m, phi_mk)`` for vertices with only an arc into k,
    ``outgoing`` holds ``(n, phi_kn)`` for vertices with only an arc out of
    k, and ``bidirected`` holds ``(l, phi_lk, phi_kl)`` for vertices joined
    to k in both directions.
    """

    vertex: int
    ingoing: tuple[tuple[int, float], ...]
    outgoing: tuple[tuple[int, float], ...]
    bidirected: tuple[tuple[int, float, float], ...]


def parse_graph(text: str) -> GraphStateSpec:
    num_qubits = None
    arcs: list[tuple[int, int, float, int]] = []
    preps: dict[int, tuple[float, float, int]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0].lower(), parts[1:]
        try:
            if key == "qubits":
                if len(args) != 1:
                    raise ValueError("usage: qubits <V>")
                if num_qubits is not None:
                    raise ValueError("duplicate qubits header")
                num_qubits = int(args[0])
                if num_qubits < 1:
                    raise ValueError("qubit count must be positive")
            elif key == "arc":
                if len(args) != 3:
                    raise ValueError("usage: arc <i> <j> <phi>")
                i, j = int(args[0]), int(args[1])
                if i == j:
                    raise ValueError(f"self-loop at vertex {i}")
                arcs.append((i, j, parse_angle(args[2]), lineno))
            elif key == "prep":
                if len(args) != 3:
                    raise ValueError("usage: prep <k> <alpha> <theta>")
                k = int(args[0])
                if k in preps:
                    raise ValueError(f"duplicate prep for qubit {k}")
                preps[k] = (parse_angle(args[1]), parse_angle(args[2]), lineno)
            else:
                raise ValueError(f"unknown directive {parts[0]!r}")
        except ValueError as exc:
            raise GraphParseError(str(exc), lineno) from None

    if num_qubits is None:
        raise GraphParseError("missing 'qubits' header")
    for i, j, _, lineno in arcs:
        for v in (i, j):
            if not 0 <= v < num_qubits:
                raise GraphParseError(
                    f"vertex {v} out of range for {num_qubits} qubits", lineno
                )
    for k, (_, _, lineno) in preps.items():
        if not 0 <= k < num_qubits:
            raise GraphParseError(
                f"qubit {k} out of range for {num_qubits} qubits", lineno
            )

    prep_list = tuple(
        QubitPrep(*preps[k][:2]) if k in preps else QubitPrep()
        for k in range(num_qubits)
    )
    return GraphStateSpec(
        num_qubits, tuple(Arc(i, j, w) for i, j, w, _ in arcs), prep_list
    )


def serialize_graph(spec: GraphStateSpec) -> str:
    lines = [f"qubits {spec.num_qubits}"]
    for k, p in enumerate(spec.preps):
        if p.alpha != 0.0 or p.theta != 0.0:
            lines.append(f"prep {k} {p.alpha!r} {p.theta!r}")
    for a in spec.arcs:
        lines.append(f"arc {a.source} {a.target} {a.weight!r}")
    return "\n".join(lines) + "\n"


def classify_neighbors(spec: GraphStateSpec, k: int) -> NeighborClassification:
    spec.check_vertex(k)
    into = {a.source: a.weight for a in spec.arcs if a.target == k}
    out = {a.target: a.weight for a in spec.arcs if a.source == k}
    both = sorted(into.keys() & out.keys())
    return NeighborClassification(
        vertex=k,
        ingoing=tuple((m, w) for m, w in sorted(into.items()) if m not in out),
        outgoing=tuple((n, w) for n, w in sorted(out.items()) if n not in into),
        bidirected=tuple((l, into[l], out[l]) for l in both),
    )


def degrees(spec: GraphStateSpec, k: int) -> tuple[int, int]:
    """Return ``(indegree, outdegree)`` of vertex ``k``."""
    spec.check_vertex(k)
    n_in = sum(1 for a in spec.arcs if a.target == k)
    n_out = sum(1 for a in spec.arcs if a.source == k)
    return n_in, n_out
