"""Command-line front end.

Every subcommand prints JSON by default and CSV with ``--format csv``.
Exit status is 0 on success, 1 when a verification fails and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .errors import DomainError
from .report import Report, jsonable

SUITE_NAMES = ("coherence", "kerov", "ivanov", "thm27", "thm42", "thm51", "prop68", "sl2", "spectrum")
THREADS_ENV = "SCHURWALK_THREADS"
PLANCHEREL_SUITES = {"coherence", "kerov", "ivanov"}


class UsageError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _pos_int(text: str) -> int:
    v = _nonneg_int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _alpha(text: str):
    from .measures import parse_alpha

    try:
        return parse_alpha(text)
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _partition(text: str) -> tuple[int, ...]:
    from .diagrams import StrictPartition

    try:
        parts = [int(t) for t in text.replace("[", "").replace("]", "").replace(",", " ").split()]
        return tuple(StrictPartition(parts))
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(f"not a strict partition: {text!r} ({exc})") from None


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json", help="output format (default json)")
    common.add_argument(
        "--threads",
        type=_pos_int,
        default=None,
        help=f"worker processes (default ${THREADS_ENV} or 1)",
    )

    parser = argparse.ArgumentParser(
        prog="schurwalk",
        description="Strict partitions, multiplicative measures and up/down chains.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("enumerate", parents=[common], help="list strict partitions of n")
    p.add_argument("--n", type=_nonneg_int, required=True)

    p = sub.add_parser("measure", parents=[common], help="multiplicative measure on level n")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--alpha", type=_alpha, default=Fraction(2))
    p.add_argument("--plancherel", action="store_true", help="use the Plancherel measure (alpha = inf)")

    p = sub.add_parser("matrix", parents=[common], help="exact transition matrix of the n-th chain")
    p.add_argument("--n", type=_pos_int, required=True)
    p.add_argument("--alpha", type=_alpha, default=Fraction(2))

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of the n-th chain")
    p.add_argument("--n", type=_pos_int, required=True)
    p.add_argument("--alpha", type=_alpha, default=Fraction(2))

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITE_NAMES + ("all",), required=True)
    p.add_argument("--max-weight", type=_pos_int, default=8)
    p.add_argument("--alpha", type=_alpha, default=Fraction(2))
    p.add_argument("--details", action="store_true", help="include every check in the output")

    p = sub.add_parser("simulate", parents=[common], help="run the chain, one state per line")
    p.add_argument("--n", type=_pos_int, required=True)
    p.add_argument("--alpha", type=_alpha, default=Fraction(2))
    p.add_argument("--steps", type=_nonneg_int, required=True)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--moments", type=_pos_int, default=None, metavar="K", help="emit q2..q_2K instead of states")
    p.add_argument("--start", type=_partition, default=None, help='initial state, e.g. "5,2,1"')
    p.add_argument("--replicas", type=_pos_int, default=1)

    p = sub.add_parser("moments", parents=[common], help="expected moments q2, q4, ... at level n")
    p.add_argument("--n", type=_pos_int, required=True)
    p.add_argument("--alpha", type=_alpha, default=Fraction(2))
    p.add_argument("--exact", action="store_true", help="exact rational expectations")
    p.add_argument("--K", type=_pos_int, default=1, help="number of moments (default 1)")
    p.add_argument("--steps", type=_pos_int, default=100_000)
    p.add_argument("--burn-in", type=_nonneg_int, default=1_000)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    return parser


# output helpers


def _emit_json(value, out: TextIO) -> None:
    out.write(json.dumps(jsonable(value), separators=(",", ":")) + "\n")


def _emit_csv(rows: Iterable[Sequence], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    for row in rows:
        writer.writerow([jsonable(v) if not isinstance(v, (list, tuple)) else " ".join(map(str, v)) for v in row])


def _label(lam: Sequence[int]) -> str:
    return "[" + ",".join(map(str, lam)) + "]"


# subcommands


def _cmd_enumerate(args, out: TextIO) -> int:
    from .diagrams import enumerate_strict

    parts = enumerate_strict(args.n)
    if args.format == "csv":
        _emit_csv([["partition"]] + [[_label(lam)] for lam in parts], out)
    else:
        _emit_json([list(lam) for lam in parts], out)
    return 0


def _cmd_measure(args, out: TextIO) -> int:
    from .measures import PLANCHEREL, multiplicative_measure

    measure = multiplicative_measure(args.n, PLANCHEREL if args.plancherel else args.alpha)
    if args.format == "csv":
        _emit_csv([["partition", "weight"]] + [[_label(lam), w] for lam, w in measure.items()], out)
    else:
        _emit_json(measure, out)
    return 0


def _finite(alpha) -> Fraction:
    if not isinstance(alpha, Fraction):
        raise UsageError("this subcommand needs a finite --alpha")
    return alpha


def _cmd_matrix(args, out: TextIO) -> int:
    from .chains import transition_matrix

    tm = transition_matrix(args.n, _finite(args.alpha))
    if args.format == "csv":
        _emit_csv(tm.to_csv_rows(), out)
    else:
        _emit_json(tm, out)
    return 0


def _cmd_spectrum(args, out: TextIO) -> int:
    from .chains import spectrum

    result = spectrum(args.n, _finite(args.alpha))
    data = result.to_json()
    if args.format == "csv":
        _emit_csv([["eigenvalue", "multiplicity"]] + list(zip(data["eigenvalues"], data["multiplicities"])), out)
    else:
        _emit_json(data, out)
    return 0


def _run_suite(job: tuple[str, object, int]) -> Report:
    from .verify import run_suite

    name, alpha, max_weight = job
    return run_suite(name, alpha, max_weight)


def _map(fn, jobs: list, threads: int) -> list:
    if threads <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
        return list(pool.map(fn, jobs))


def _cmd_verify(args, out: TextIO) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    if not isinstance(args.alpha, Fraction) and set(names) - PLANCHEREL_SUITES:
        raise UsageError("this suite needs a finite --alpha")
    reports = _map(_run_suite, [(name, args.alpha, args.max_weight) for name in names], args.threads)
    if args.format == "csv":
        rows: list[list] = [["suite", "input", "expected", "got", "pass"]]
        for name, rep in zip(names, reports):
            checks = rep.checks if args.details else rep.failures
            for c in checks:
                rows.append([name, _dump(c.input), _dump(c.expected), _dump(c.got), c.passed])
            rows.append([name, "summary", len(rep.checks), len(rep.checks) - len(rep.failures), rep.ok])
        _emit_csv(rows, out)
    else:
        for name, rep in zip(names, reports):
            data = rep.to_json()
            data["suite"] = name
            data["checks_run"] = len(rep.checks)
            data["failures"] = [jsonable(c.__dict__) for c in rep.failures]
            if not args.details:
                data.pop("checks")
            _emit_json(data, out)
    return 0 if all(r.ok for r in reports) else 1


def _dump(value) -> str:
    return json.dumps(jsonable(value), separators=(",", ":"))


def _simulate_replica(job: tuple) -> list[str]:
    from .chains import walk

    n, alpha, steps, seed, start, moments, fmt, replica, replicas = job
    lines = []
    tag = replicas > 1
    for i, lam in enumerate(walk(n, alpha, steps, seed, start)):
        lines.append(_state_line(i, lam, n, moments, fmt, replica if tag else None))
    return lines


def _state_line(i: int, lam, n: int, moments: int | None, fmt: str, replica: int | None) -> str:
    if moments:
        qs = [sum((v / n) ** (2 * k + 1) for v in lam) for k in range(1, moments + 1)]
        if fmt == "csv":
            row = ([replica] if replica is not None else []) + [i, i / n**2] + qs
            return ",".join(repr(v) if isinstance(v, float) else str(v) for v in row)
        obj = {"step": i, "scaled_time": i / n**2}
        obj.update({f"q{2 * k}": q for k, q in enumerate(qs, 1)})
    else:
        if fmt == "csv":
            row = ([replica] if replica is not None else []) + [i, '"' + _label(lam) + '"']
            return ",".join(map(str, row))
        obj = {"step": i, "state": list(lam)}
    if replica is not None:
        obj = {"replica": replica, **obj}
    return json.dumps(obj, separators=(",", ":"))


def _cmd_simulate(args, out: TextIO) -> int:
    import numpy as np

    from .chains import walk

    alpha = _finite(args.alpha)
    if args.start is not None and sum(args.start) != args.n:
        raise UsageError(f"--start {list(args.start)} does not have weight {args.n}")
    if args.format == "csv":
        head = (["replica"] if args.replicas > 1 else []) + ["step"]
        if args.moments:
            head += ["scaled_time"] + [f"q{2 * k}" for k in range(1, args.moments + 1)]
        else:
            head += ["state"]
        out.write(",".join(head) + "\n")
    if args.replicas == 1:
        # stream states as they are produced
        for i, lam in enumerate(walk(args.n, alpha, args.steps, args.seed, args.start)):
            out.write(_state_line(i, lam, args.n, args.moments, args.format, None) + "\n")
        return 0
    seeds = np.random.SeedSequence(args.seed).spawn(args.replicas)
    jobs = [
        (args.n, alpha, args.steps, s, args.start, args.moments, args.format, r, args.replicas)
        for r, s in enumerate(seeds)
    ]
    for lines in _map(_simulate_replica, jobs, args.threads):
        out.write("\n".join(lines) + "\n")
    return 0


def _cmd_moments(args, out: TextIO) -> int:
    alpha = _finite(args.alpha)
    if args.exact:
        from .limit import exact_q_moment

        values = {f"q{2 * k}": exact_q_moment(args.n, alpha, k) for k in range(1, args.K + 1)}
        if args.format == "csv":
            _emit_csv([["n", "alpha", "moment", "value"]] + [[args.n, alpha, k, v] for k, v in values.items()], out)
        else:
            _emit_json({"n": args.n, "alpha": alpha, **values}, out)
        return 0
    from .limit import stationary_moment_mc

    estimates = [
        stationary_moment_mc(args.n, alpha, k, args.steps, args.burn_in, args.seed) for k in range(1, args.K + 1)
    ]
    if args.format == "csv":
        rows: list[list] = [["moment", "mean", "stderr", "n", "alpha", "steps"]]
        for k, e in enumerate(estimates, 1):
            rows.append([f"q{2 * k}", repr(e.mean), repr(e.stderr), e.n, e.alpha, e.steps])
        _emit_csv(rows, out)
    else:
        for k, e in enumerate(estimates, 1):
            _emit_json({"moment": f"q{2 * k}", **e.to_json()}, out)
    return 0


COMMANDS = {
    "enumerate": _cmd_enumerate,
    "measure": _cmd_measure,
    "matrix": _cmd_matrix,
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
    "simulate": _cmd_simulate,
    "moments": _cmd_moments,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Parse ``argv``, run the subcommand and return the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.threads is None:
        args.threads = _default_threads()
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, DomainError) as exc:
        err.write(f"schurwalk {args.command}: error: {exc}\n")
        return 2
    except BrokenPipeError:
        return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
