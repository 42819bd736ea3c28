"""Command line entry point: ``graphent {analytic,simulate,sweep,compare}``."""
from __future__ import annotations

import argparse
import sys

from .analytic import bloch_vector_analytic, entanglement_analytic
from .graph import GraphParseError, classify_neighbors, degrees, parse_graph
from .protocol import estimate_entanglement
from .report import AgreementError, SweepSpec, compare, run_sweep, write_csv
from .statevector import entanglement_exact

DEFAULT_SHOTS = 1024
DEFAULT_SEED = 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _f(x: float) -> str:
    return f"{x:.12g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphent",
        description="Single-qubit geometric entanglement of RXX graph states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, shots_default):
        p.add_argument("--graph", required=True, help="graph file")
        p.add_argument("--qubit", type=int, required=True, help="qubit k")
        if shots_default is not False:
            p.add_argument("--shots", type=_positive_int, default=shots_default)
            p.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED)

    common(sub.add_parser("analytic", help="closed-form E_k and Bloch vector"), False)
    common(sub.add_parser("simulate", help="shot protocol vs exact vs analytic"),
           DEFAULT_SHOTS)
    common(sub.add_parser("compare", help="exit 0 iff all three paths agree"),
           DEFAULT_SHOTS)

    sw = sub.add_parser("sweep", help="write a 1-D or 2-D parameter sweep as CSV")
    common(sw, None)
    sw.add_argument("--vary", action="append", required=True,
                    help="arc:i:j | alpha:k | theta:k | alpha:* | theta:* "
                         "(give once or twice)")
    sw.add_argument("--from", dest="start", default="0")
    sw.add_argument("--to", dest="stop", default="pi")
    sw.add_argument("--step", default="pi/16")
    sw.add_argument("--out", required=True, help="CSV path, '-' for stdout")
    return parser


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def cmd_analytic(args, out) -> int:
    spec = _load(args.graph)
    k = args.qubit
    b = bloch_vector_analytic(spec, k)
    nb = classify_neighbors(spec, k)
    n_in, n_out = degrees(spec, k)
    print(f"qubit {k}", file=out)
    print(f"E = {_f(entanglement_analytic(spec, k).value)}", file=out)
    print(f"bloch = ({_f(b.sx)}, {_f(b.sy)}, {_f(b.sz)})", file=out)
    print(f"indegree = {n_in}, outdegree = {n_out}", file=out)
    print("ingoing: " + ", ".join(f"{m}({_f(w)})" for m, w in nb.ingoing), file=out)
    print("outgoing: " + ", ".join(f"{n}({_f(w)})" for n, w in nb.outgoing), file=out)
    print("bidirected: " + ", ".join(
        f"{l}({_f(a)},{_f(b_)})" for l, a, b_ in nb.bidirected), file=out)
    return 0


def cmd_simulate(args, out) -> int:
    spec = _load(args.graph)
    k = args.qubit
    est = estimate_entanglement(spec, k, args.shots, args.seed)
    note = "" if est.reliable else "  (stderr unreliable near maximal entanglement)"
    print(f"E_shots    = {_f(est.value)} +- {_f(est.stderr)}{note}", file=out)
    print(f"E_exact    = {_f(entanglement_exact(spec, k).value)}", file=out)
    print(f"E_analytic = {_f(entanglement_analytic(spec, k).value)}", file=out)
    print(f"shots = {args.shots}, seed = {args.seed}", file=out)
    return 0


def cmd_sweep(args, out) -> int:
    spec = _load(args.graph)
    sweep = SweepSpec.from_tokens(args.vary, args.start, args.stop, args.step)
    rows = run_sweep(spec, args.qubit, sweep, args.shots, args.seed)
    write_csv(rows, out if args.out == "-" else args.out, args.shots is not None)
    if args.out != "-":
        print(f"wrote {len(rows)} rows to {args.out}", file=out)
    return 0


def cmd_compare(args, out, analytic=None) -> int:
    spec = _load(args.graph)
    kwargs = {} if analytic is None else {"analytic": analytic}
    res = compare(spec, args.qubit, args.shots, args.seed, **kwargs)
    print(f"{'path':<10} {'E':>16} {'stderr':>16}  check", file=out)
    print(f"{'analytic':<10} {_f(res.analytic.value):>16} {'':>16}  "
          f"{'ok' if res.analytic_ok else 'FAIL'}", file=out)
    print(f"{'exact':<10} {_f(res.exact.value):>16} {'':>16}  reference", file=out)
    print(f"{'shots':<10} {_f(res.shots.value):>16} {_f(res.shots.stderr):>16}  "
          f"{'ok' if res.shots_ok else 'FAIL'}", file=out)
    if not res.ok:
        print("compare: paths disagree", file=sys.stderr)
        return 1
    return 0


COMMANDS = {
    "analytic": cmd_analytic,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except GraphParseError as exc:
        print(f"graphent: {args.graph}: {exc}", file=sys.stderr)
    except AgreementError as exc:
        print(f"graphent: {exc}", file=sys.stderr)
    except (OSError, ValueError, IndexError) as exc:
        print(f"graphent: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
