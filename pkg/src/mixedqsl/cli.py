"""Command-line front end.

Exit codes: 0 success, 1 error (diagnostic on stderr), 2 partial result
(``bounds`` on a pair with different spectra: only the Bures part is reported).
"""
from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import __version__, numerics
from .dynamics import DEFAULT_GRID_POINTS, DENOMINATOR_MIN, DENOMINATOR_STD, HamiltonianSchedule, bounds
from .errors import QSLError
from .matrix_io import load_matrix, load_schedule_pieces, matrix_to_json
from .runner import EXPERIMENTS, RunConfig, config_from_sidecar, run_experiment
from .sampling import (RngStream, haar_unitary, random_hamiltonian, random_state_fixed_spectrum,
                       random_state_hs)
from .states import DensityMatrix, Spectrum

EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2
SAMPLE_KINDS = ("unitary", "state-hs", "state-spectrum", "hamiltonian")


def parse_dims(text: str) -> list[int]:
    """``"3"``, ``"3..6"``, ``"4..40:4"`` or ``"4,8,12"`` to a list of ints."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\.\.(\d+)(?::(\d+))?", text)
    if m:
        lo, hi, step = int(m[1]), int(m[2]), int(m[3] or 1)
        if lo > hi or step < 1:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1, step))
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read dimensions from {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mixedqsl", description="Quantum speed limits for mixed states.")
    p.add_argument("--version", action="version", version=f"mixedqsl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="all speed limits for one (rho, sigma, H) instance")
    b.add_argument("--rho", required=True, help="initial state, JSON matrix file")
    b.add_argument("--sigma", required=True, help="target state, JSON matrix file")
    b.add_argument("--hamiltonian", required=True, help="Hamiltonian matrix or segment schedule file")
    b.add_argument("--T", "--time", dest="time", type=float, default=None,
                   help="evolution time for a constant Hamiltonian")
    b.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS,
                   help="quadrature points per segment (default: %(default)s)")
    b.add_argument("--denominator", choices=(DENOMINATOR_STD, DENOMINATOR_MIN), default=DENOMINATOR_STD,
                   help="Bures bound energy scale: std = Delta E, min = min(E, Delta E) (default: %(default)s)")
    b.add_argument("--tol", type=float, default=None, help="iso-spectrality tolerance (default 1e-8)")

    e = sub.add_parser("experiment", help="run one of the reproduction studies")
    e.add_argument("name", choices=EXPERIMENTS)
    e.add_argument("--seed", type=int, default=0, help="master seed (default: %(default)s)")
    e.add_argument("--threads", type=int, default=1, help="worker processes (default: %(default)s)")
    e.add_argument("--out", default="results", help="output directory (default: %(default)s)")
    e.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)
    e.add_argument("--tol", type=float, default=None, help="iso-spectrality tolerance")
    e.add_argument("--plot", action="store_true", help="also write an SVG figure")
    e.add_argument("--n", type=parse_dims, default=None,
                   help="dimension(s): 3, 3..6, 4..40:4 or 4,8,12 (default depends on the experiment)")
    e.add_argument("--samples", type=int, default=10000, help="samples per dimension (default: %(default)s)")
    e.add_argument("--lambdas", type=int, default=19, help="qubit eigenvalue grid size (default: %(default)s)")
    e.add_argument("--thetas", type=int, default=16, help="qubit angle grid size (default: %(default)s)")
    e.add_argument("--phase", type=float, default=0.0, help="qubit Hamiltonian phase (default: %(default)s)")
    e.add_argument("--resolution", type=int, default=30, help="qutrit simplex grid resolution (default: %(default)s)")
    e.add_argument("--reps", type=int, default=50, help="calls per timing batch (default: %(default)s)")
    e.add_argument("--hamiltonian", default=None, help="qutrit Hamiltonian matrix file")
    e.add_argument("--frame", default=None, help="qutrit eigenvector frame matrix file")

    s = sub.add_parser("sample", help="write random matrices as JSON lines")
    s.add_argument("kind", choices=SAMPLE_KINDS)
    s.add_argument("--n", type=int, default=None, help="dimension")
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--spectrum", type=_floats, default=None, help="state-spectrum eigenvalues, e.g. 0.5,0.3,0.2")
    s.add_argument("--norm", type=float, default=None, help="hamiltonian operator norm")
    s.add_argument("--out", default="-", help="output file (default: stdout)")

    r = sub.add_parser("replay", help="re-run an experiment from its JSON sidecar")
    r.add_argument("sidecar")
    r.add_argument("--out", default=None, help="output directory (default: the sidecar's directory)")
    r.add_argument("--threads", type=int, default=1)
    r.add_argument("--plot", action="store_true")
    return p


def _load_state(path, what):
    try:
        return DensityMatrix(load_matrix(path))
    except QSLError as exc:
        raise type(exc)(f"{what} ({path}): {exc}") from exc


def cmd_bounds(args) -> int:
    rho = _load_state(args.rho, "rho")
    sigma = _load_state(args.sigma, "sigma")
    sched = HamiltonianSchedule.piecewise(load_schedule_pieces(args.hamiltonian, args.time))
    ctx = numerics.override(isospectral_tol=args.tol) if args.tol else numerics.override()
    with ctx:
        rep = bounds(rho, sigma, sched, args.grid_points, denominator=args.denominator,
                     require_isospectral=False)
    print(json.dumps(rep.to_dict(), indent=2))
    if not rep.isospectral:
        print("mixedqsl: warning: NotIsoSpectral: rho and sigma have different spectra; "
              "only the Bures bound is reported", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _print_summary(res) -> None:
    from .runner import _clean, _json_default
    print(json.dumps({"files": res.files, "summary": _clean(res.summary)}, indent=2, default=_json_default))


def cmd_experiment(args) -> int:
    cfg = RunConfig(
        experiment=args.name, seed=args.seed, grid_points=args.grid_points, samples=args.samples,
        n=args.n, lambdas=args.lambdas, thetas=args.thetas, phase=args.phase,
        resolution=args.resolution, reps=args.reps, hamiltonian=args.hamiltonian, frame=args.frame,
        tol=args.tol, threads=args.threads, out=args.out, plot=args.plot,
    )
    _print_summary(run_experiment(cfg))
    return EXIT_OK


def sample_matrices(kind: str, n: int | None, count: int, seed: int, spectrum=None, norm=None):
    rng = RngStream(seed, 0)
    if kind == "state-spectrum":
        if spectrum is None:
            raise ValueError("state-spectrum needs --spectrum")
        target = Spectrum(tuple(spectrum))
        if n is not None and n != target.dim:
            raise ValueError(f"--n {n} does not match a spectrum of length {target.dim}")
        return [random_state_fixed_spectrum(target, rng).mat for _ in range(count)]
    if n is None:
        raise ValueError(f"{kind} needs --n")
    if kind == "unitary":
        return [haar_unitary(n, rng) for _ in range(count)]
    if kind == "state-hs":
        return [random_state_hs(n, rng).mat for _ in range(count)]
    if kind == "hamiltonian":
        return [random_hamiltonian(n, rng, norm) for _ in range(count)]
    raise ValueError(f"unknown sample kind {kind!r}")


def cmd_sample(args) -> int:
    if args.count < 0:
        raise ValueError("--count must be non-negative")
    mats = sample_matrices(args.kind, args.n, args.count, args.seed, args.spectrum, args.norm)
    lines = "".join(json.dumps(matrix_to_json(np.asarray(m))) + "\n" for m in mats)
    if args.out == "-":
        sys.stdout.write(lines)
    else:
        with open(args.out, "w") as fh:
            fh.write(lines)
    return EXIT_OK


def cmd_replay(args) -> int:
    cfg = config_from_sidecar(args.sidecar, args.out)
    cfg.threads, cfg.plot = args.threads, args.plot
    _print_summary(run_experiment(cfg))
    return EXIT_OK


COMMANDS = {"bounds": cmd_bounds, "experiment": cmd_experiment, "sample": cmd_sample, "replay": cmd_replay}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except QSLError as exc:
        print(f"mixedqsl: error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"mixedqsl: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
