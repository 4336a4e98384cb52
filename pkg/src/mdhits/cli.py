"""Command line entry point: ``mdhits <subcommand> ...``.

Subcommands: rank, hits, check-alpha, compare, synth, convergence.
Summaries go to stdout; errors are a single ``mdhits: error: kind=... ``
line on stderr with a nonzero exit code.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import dataio, metrics, solver, spectral
from .errors import InfeasibleAlphaError, MDHitsError

EXIT_ERROR = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _alpha_arg(text: str) -> np.ndarray:
    try:
        vals = [float(Fraction(tok.strip())) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad exponent list {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty exponent list")
    return np.array(vals)


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return v


def _sweep_arg(text):
    try:
        lo, hi, step = (float(Fraction(t)) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}") from None
    if not step > 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad sweep {text!r}")
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def _default_threads() -> int:
    env = os.environ.get("MDHITS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", "-i", type=Path)
    common.add_argument("--format", "-f", choices=sorted(dataio.FORMATS), default=None,
                        help="edge-list format (default coo5; coo2 for hits)")
    common.add_argument("--delimiter", default="default",
                        help="column separator; 'whitespace' splits on blanks")
    common.add_argument("--header", action="store_true")
    common.add_argument("--alpha", type=_alpha_arg)
    common.add_argument("--tol", type=_positive_float, default=1e-6)
    common.add_argument("--max-iter", type=_positive_int, default=1000)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--init", choices=["ones", "random"], default="ones")
    common.add_argument("--output", "-o", type=Path)
    common.add_argument("--output-format", choices=["json", "csv"], default="json")
    common.add_argument("--threads", type=_positive_int, default=None)

    p = _Parser(prog="mdhits", description="Multi-dimensional HITS centrality")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("rank", parents=[common], help="compute the five centrality vectors")
    h = sub.add_parser("hits", parents=[common], help="monolayer nonlinear or classical HITS")
    h.add_argument("--classical", action="store_true")
    sub.add_parser("check-alpha", parents=[common], help="feasibility of an exponent vector")
    c = sub.add_parser("compare", parents=[common], help="compare two solution files")
    c.add_argument("solutions", nargs=2, type=Path)
    c.add_argument("--k", type=_positive_int, default=100)
    c.add_argument("--metric", choices=["isim", "kendall"], default="isim")
    s = sub.add_parser("synth", parents=[common], help="write a random synthetic tensor")
    s.add_argument("--n-v", type=_positive_int, required=True)
    s.add_argument("--weights", choices=["unit", "lognormal"], default="unit")
    cv = sub.add_parser("convergence", parents=[common],
                        help="per-iteration step versus the theoretical bound")
    cv.add_argument("--alpha-sweep", type=_sweep_arg)
    return p


def _solver_config(args) -> solver.SolverConfig:
    return solver.SolverConfig(
        tol=args.tol,
        max_iter=args.max_iter,
        init=args.init,
        seed=args.seed,
        threads=args.threads or _default_threads(),
    )


def _load(args):
    if args.input is None:
        raise _UsageError("--input is required")
    delim = args.delimiter
    if delim == "whitespace":
        delim = None
    tag = args.format or ("coo2" if args.command == "hits" else "coo5")
    fmt = dataio.EdgeFormat(tag, delimiter=delim, header=args.header)
    return dataio.load_tensor(args.input, fmt)


def _config_for(tensor, alpha):
    if alpha is None:
        alpha = np.full(tensor.order, 0.2)
    if alpha.size != tensor.order:
        raise MDHitsError(f"--alpha has {alpha.size} values, tensor order is {tensor.order}")
    config = spectral.make_config(alpha)
    if not config.feasible:
        raise InfeasibleAlphaError(
            f"rho(M_alpha) = {config.rho:.17g} is not below 1", rho=config.rho
        )
    return config


def _emit(text: str, output):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def run_rank(args) -> int:
    tensor = _load(args)
    config = _config_for(tensor, args.alpha)
    sol = solver.solve(tensor, config, _solver_config(args))
    if args.output is not None:
        dataio.write_solution(sol, args.output, args.output_format)
    print(
        f"iterations={sol.iterations} rho={sol.config.rho:.17g} "
        f"sigma={sol.sigma:.17g} converged={str(sol.converged).lower()}"
    )
    return 0


def run_hits(args) -> int:
    tensor = _load(args)
    if tensor.order != 2:
        raise MDHitsError(f"hits needs a monolayer (coo2) input, got order {tensor.order}")
    cfg = _solver_config(args)
    if args.classical:
        res = solver.classical_hits(tensor, cfg)
        data = {
            "hub": res.hub.tolist(),
            "authority": res.authority.tolist(),
            "eigenvalue": res.eigenvalue,
            "iterations": res.iterations,
            "converged": res.converged,
        }
        print(f"iterations={res.iterations} eigenvalue={res.eigenvalue:.17g} "
              f"converged={str(res.converged).lower()}")
        if args.output is not None:
            args.output.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
        return 0
    alpha = args.alpha if args.alpha is not None else np.array([1 / 3, 1 / 3])
    config = _config_for(tensor, alpha)
    sol = solver.solve(tensor, config, cfg)
    if args.output is not None:
        dataio.write_solution(sol, args.output, args.output_format)
    print(
        f"iterations={sol.iterations} rho={sol.config.rho:.17g} "
        f"sigma={sol.sigma:.17g} converged={str(sol.converged).lower()}"
    )
    return 0


def run_check_alpha(args) -> int:
    if args.alpha is None:
        raise _UsageError("--alpha is required")
    rep = spectral.check_feasible(args.alpha)
    _, beta = spectral.perron(args.alpha)
    print(
        f"verdict={rep.verdict.value} rho={rep.rho:.17g} "
        f"gershgorin={str(rep.gershgorin_ok).lower()} "
        f"beta={','.join(f'{b:.17g}' for b in beta)}"
    )
    return 0


def run_compare(args) -> int:
    first, second = (dataio.read_solution(p) for p in args.solutions)
    names = [n for n in ("hub", "authority", "broadcast", "receive", "time") if n in first]
    if not names or any(n not in second for n in names):
        raise MDHitsError("solution files hold different score vectors")
    for name in names:
        x, y = first[name], second[name]
        if x.size != y.size:
            raise MDHitsError(f"{name}: id universes differ ({x.size} vs {y.size})")
        if args.metric == "kendall":
            tau = metrics.kendall_tau(x, y)
            print(f"vector={name} kendall_tau={tau:.17g}")
        else:
            k = min(args.k, x.size)
            isim = metrics.intersection_similarity(metrics.ranked(x), metrics.ranked(y), k)
            print(f"vector={name} K={k} isim={isim:.17g} I_K={1.0 - isim:.17g}")
    return 0


def run_synth(args) -> int:
    if args.output is None:
        raise _UsageError("--output is required")
    spec = dataio.SynthSpec(args.n_v, seed=args.seed or 0, weights=args.weights)
    tensor = dataio.generate_random(spec)
    dataio.write_edge_list(tensor, args.output, "coo5")
    print(f"shape={','.join(map(str, tensor.shape))} nnz={tensor.nnz}")
    return 0


def run_convergence(args) -> int:
    tensor = _load(args)
    cfg = _solver_config(args)
    rows = []
    if args.alpha_sweep is not None:
        header = ["alpha", "rho", "iterations"]
        for a in args.alpha_sweep:
            config = _config_for(tensor, np.full(tensor.order, a))
            sol = solver.solve(tensor, config, cfg)
            rows.append([repr(float(a)), repr(config.rho), sol.iterations])
    else:
        header = ["k", "step", "bound"]
        sol = solver.solve(tensor, _config_for(tensor, args.alpha), cfg)
        rows = [[r.k, repr(r.step), repr(r.bound)] for r in sol.trace]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _emit(buf.getvalue(), args.output)
    return 0


COMMANDS = {
    "rank": run_rank,
    "hits": run_hits,
    "check-alpha": run_check_alpha,
    "compare": run_compare,
    "synth": run_synth,
    "convergence": run_convergence,
}


def _fail(kind, message, code, **extra) -> int:
    fields = " ".join(f"{k}={v}" for k, v in extra.items())
    message = " ".join(str(message).split())
    line = f"mdhits: error: kind={kind} {fields + ' ' if fields else ''}message={message}"
    print(line, file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except InfeasibleAlphaError as exc:
        return _fail(exc.kind, exc, EXIT_ERROR, rho=f"{exc.rho:.17g}")
    except MDHitsError as exc:
        return _fail(exc.kind, exc, EXIT_ERROR)
    except OSError as exc:
        return _fail("io", exc, EXIT_ERROR)


if __name__ == "__main__":
    sys.exit(main())
