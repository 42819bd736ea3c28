"""Parameter sweeps and triple-path comparison behind the CLI."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .analytic import EntanglementEstimate, entanglement_analytic
from .graph import GraphStateSpec, parse_angle
from .protocol import estimate_entanglement
from .statevector import entanglement_exact

__all__ = [
    "AGREEMENT_TOL",
    "AgreementError",
    "SweepTarget",
    "SweepSpec",
    "SweepRow",
    "parse_target",
    "grid_values",
    "apply_target",
    "run_sweep",
    "write_csv",
    "CompareResult",
    "compare",
]

AGREEMENT_TOL = 1e-10
SHOT_SIGMAS = 5.0


class AgreementError(RuntimeError):
    """Closed form and statevector oracle disagree."""


@dataclass(frozen=True)
class SweepTarget:
    kind: str  # "arc", "alpha" or "theta"
    i: int | None = None  # None for alpha:* / theta:*
    j: int | None = None

    def __str__(self):
        if self.kind == "arc":
            return f"arc:{self.i}:{self.j}"
        return f"{self.kind}:{'*' if self.i is None else self.i}"


def parse_target(token: str) -> SweepTarget:
    parts = token.strip().split(":")
    try:
        if parts[0] == "arc" and len(parts) == 3:
            i, j = int(parts[1]), int(parts[2])
            if i == j:
                raise ValueError
            return SweepTarget("arc", i, j)
        if parts[0] in ("alpha", "theta") and len(parts) == 2:
            return SweepTarget(parts[0], None if parts[1] == "*" else int(parts[1]))
    except ValueError:
        pass
    raise ValueError(
        f"bad sweep target {token!r}; expected arc:i:j, alpha:k, theta:k, "
        "alpha:* or theta:*"
    )


@dataclass(frozen=True)
class SweepSpec:
    targets: tuple[SweepTarget, ...]
    start: float = 0.0
    stop: float = math.pi
    step: float = math.pi / 16

    def __post_init__(self):
        if not 1 <= len(self.targets) <= 2:
            raise ValueError("a sweep takes one or two targets")
        if not self.step > 0:
            raise ValueError("step must be positive")
        if self.start > self.stop:
            raise ValueError("from must not exceed to")

    @classmethod
    def from_tokens(cls, targets: Sequence[str], start="0", stop="pi",
                    step="pi/16") -> SweepSpec:
        return cls(
            tuple(parse_target(t) for t in targets),
            parse_angle(start), parse_angle(stop), parse_angle(step),
        )


@dataclass(frozen=True)
class SweepRow:
    params: tuple[float, ...]
    e_analytic: float
    e_exact: float
    e_shots: float | None = None
    stderr: float | None = None
    reliable: bool | None = None


def grid_values(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive grid ``start, start+step, ..., stop``."""
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def apply_target(spec: GraphStateSpec, target: SweepTarget,
                 value: float) -> GraphStateSpec:
    if target.kind == "arc":
        return spec.with_arc_weight(target.i, target.j, value)
    qubits = range(spec.num_qubits) if target.i is None else [target.i]
    for k in qubits:
        spec = spec.with_prep(k, **{target.kind: value})
    return spec


def _point_seed(seed: int, index: int) -> int:
    ss = np.random.SeedSequence([seed, index])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def run_sweep(spec: GraphStateSpec, k: int, sweep: SweepSpec,
              shots: int | None = None, seed: int = 0) -> list[SweepRow]:
    """Evaluate every grid point; rows come out in grid order.

    Raises ``AgreementError`` if the analytic and statevector values ever
    disagree beyond ``AGREEMENT_TOL``.
    """
    spec.check_vertex(k)
    for t in sweep.targets:
        for v in (t.i, t.j):
            if v is not None:
                spec.check_vertex(v)
    axes = [grid_values(sweep.start, sweep.stop, sweep.step)] * len(sweep.targets)
    rows = []
    for index, point in enumerate(np.stack(np.meshgrid(*axes, indexing="ij"),
                                           -1).reshape(-1, len(axes))):
        s = spec
        for target, value in zip(sweep.targets, point):
            s = apply_target(s, target, float(value))
        e_an = entanglement_analytic(s, k).value
        e_ex = entanglement_exact(s, k).value
        if abs(e_an - e_ex) > AGREEMENT_TOL:
            raise AgreementError(
                f"analytic/exact mismatch at {tuple(point)}: {e_an!r} vs {e_ex!r}"
            )
        e_sh = se = reliable = None
        if shots is not None:
            est = estimate_entanglement(s, k, shots, _point_seed(seed, index))
            e_sh, se, reliable = est.value, est.stderr, est.reliable
        rows.append(SweepRow(tuple(float(v) for v in point), e_an, e_ex,
                             e_sh, se, reliable))
    return rows


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_csv(rows: Sequence[SweepRow], out, with_shots: bool) -> None:
    """Write rows to a path or text stream with LF endings."""
    if not rows:
        raise ValueError("no rows to write")
    nparams = len(rows[0].params)
    header = [f"param{i + 1}" for i in range(nparams)] + ["E_analytic", "E_exact"]
    if with_shots:
        header += ["E_shots", "stderr"]
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        fields = [_fmt(p) for p in r.params] + [_fmt(r.e_analytic), _fmt(r.e_exact)]
        if with_shots:
            fields += [_fmt(r.e_shots), _fmt(r.stderr)]
        buf.write(",".join(fields) + "\n")
    if hasattr(out, "write"):
        out.write(buf.getvalue())
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(buf.getvalue())


@dataclass(frozen=True)
class CompareResult:
    analytic: EntanglementEstimate
    exact: EntanglementEstimate
    shots: EntanglementEstimate
    analytic_ok: bool
    shots_ok: bool

    @property
    def ok(self) -> bool:
        return self.analytic_ok and self.shots_ok


def compare(spec: GraphStateSpec, k: int, shots: int, seed: int,
            analytic: Callable[[GraphStateSpec, int], EntanglementEstimate]
            = entanglement_analytic) -> CompareResult:
    """Run all three paths. ``analytic`` is swappable so tests can corrupt it."""
    e_an = analytic(spec, k)
    e_ex = entanglement_exact(spec, k)
    e_sh = estimate_entanglement(spec, k, shots, seed)
    return CompareResult(
        e_an, e_ex, e_sh,
        analytic_ok=abs(e_an.value - e_ex.value) <= AGREEMENT_TOL,
        shots_ok=abs(e_sh.value - e_ex.value) <= SHOT_SIGMAS * e_sh.stderr,
    )
