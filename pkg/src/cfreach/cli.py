"""Command-line front end.

Subcommands write CSV to stdout (or ``--out``):

    coeffs  Chen-Fliess coefficients of one output
    reach   interval envelope of the output reachable set
    mm      mixed-monotone embedding box
    mc      Monte-Carlo min/max of simulated outputs
    check   reach + mm + mc with containment checks

Exit codes: 0 ok, 1 malformed system description, 2 numerical divergence,
3 containment violation (``check`` only).
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from .chenfliess import evaluate_series
from .mmreach import DivergenceError, integrate_embedding
from .oracle import run_samples
from .polylie import generate_coefficients
from .reachia import bound_coefficients, reach_envelope
from .systems import SpecError, SystemSpec, fixture, load_spec
from .words import count_letter

EXIT_OK, EXIT_SPEC, EXIT_DIVERGED, EXIT_VIOLATION = 0, 1, 2, 3


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _write_rows(header, rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([r if isinstance(r, str) else _fmt(r) for r in row])


def _paired_header(prefixes, n_outputs):
    lo, hi = prefixes
    cols = ["t"]
    for j in range(1, n_outputs + 1):
        cols += [f"{lo}_{j}", f"{hi}_{j}"]
    return cols


def _paired_rows(t, lower, upper):
    for k in range(t.size):
        row = [t[k]]
        for j in range(lower.shape[0]):
            row += [lower[j, k], upper[j, k]]
        yield row


def _output_grid(T: float, points: int) -> np.ndarray:
    return np.linspace(0.0, T, points)


def _fine_steps(points: int, target: int) -> int:
    """Smallest multiple of (points - 1) that is >= target."""
    per = points - 1
    return per * max(1, math.ceil(target / per))


def _load(args) -> SystemSpec:
    if args.fixture:
        return fixture(args.fixture)
    return load_spec(args.system)


def _series(spec: SystemSpec, order: int):
    return [generate_coefficients(spec.system, j, order) for j in range(spec.system.n_outputs)]


def _envelope(spec, order, t, tail):
    growth = None
    if tail:
        if spec.growth is None:
            raise SpecError("growth", "--tail needs 'growth' {K, M} in the system description")
        growth = spec.growth
    return reach_envelope(_series(spec, order), spec.box, t, growth=growth)


def cmd_coeffs(args, spec, out):
    j = args.output - 1
    if not 0 <= j < spec.system.n_outputs:
        raise SpecError("h", f"--output {args.output} out of range 1..{spec.system.n_outputs}")
    c = generate_coefficients(spec.system, j, args.order)
    rows = ([str(w), str(len(w)), str(count_letter(w, 0)), c[w]] for w in c)
    _write_rows(["word", "length", "x0_count", "coefficient"], rows, out)
    return EXIT_OK


def cmd_reach(args, spec, out):
    t = _output_grid(args.t_final, args.points)
    env = _envelope(spec, args.order, t, args.tail)
    _write_rows(_paired_header(("lower", "upper"), env.n_outputs), _paired_rows(t, env.lower, env.upper), out)
    return EXIT_OK


def _mm_box(spec, T, points, dt, grid):
    steps = _fine_steps(points, math.ceil(T / dt))
    t_fine = np.linspace(0.0, T, steps + 1)
    s = spec.system
    traj = integrate_embedding(s, s.z0, s.z0, np.full(s.m, spec.box.a), np.full(s.m, spec.box.b),
                               t_fine, grid)
    lo, hi = traj.output_box(s)
    stride = steps // (points - 1)
    return lo[:, ::stride], hi[:, ::stride]


def cmd_mm(args, spec, out):
    t = _output_grid(args.t_final, args.points)
    lo, hi = _mm_box(spec, args.t_final, args.points, args.dt, args.grid)
    _write_rows(_paired_header(("lo", "hi"), lo.shape[0]), _paired_rows(t, lo, hi), out)
    return EXIT_OK


def _mc_run(spec, args):
    steps = _fine_steps(args.points, args.steps)
    run = run_samples(spec.system, spec.box, args.segments, args.samples, args.seed, args.t_final, steps)
    return run, steps // (args.points - 1)


def cmd_mc(args, spec, out):
    t = _output_grid(args.t_final, args.points)
    run, stride = _mc_run(spec, args)
    traj = run.trajectories[:, :, ::stride]
    _write_rows(_paired_header(("emp_min", "emp_max"), traj.shape[1]),
                _paired_rows(t, traj.min(axis=0), traj.max(axis=0)), out)
    if args.dump_trajectories:
        folder = Path(args.dump_trajectories)
        folder.mkdir(parents=True, exist_ok=True)
        header = ["t"] + [f"y_{j}" for j in range(1, traj.shape[1] + 1)]
        for i in range(traj.shape[0]):
            with open(folder / f"sample_{i:05d}.csv", "w", newline="") as fh:
                _write_rows(header, ([t[k], *traj[i, :, k]] for k in range(t.size)), fh)
    return EXIT_OK


def _quadrature_eps(series, box, dt):
    scale = 1.0
    for c in series:
        c_lo, c_hi = bound_coefficients(c, box)
        scale += sum(abs(v) for _, v in c_lo.items()) + sum(abs(v) for _, v in c_hi.items())
    return 10.0 * dt * dt * scale


def cmd_check(args, spec, out):
    s = spec.system
    t = _output_grid(args.t_final, args.points)
    series = _series(spec, args.order)
    env = reach_envelope(series, spec.box, t)
    run, stride = _mc_run(spec, args)
    dt = float(run.t_grid[1] - run.t_grid[0])
    eps = _quadrature_eps(series, spec.box, dt)

    results = []

    # truncated series under sampled inputs vs the envelope at the same order
    worst = 0.0
    for u in run.inputs:
        y_n = np.array([evaluate_series(c, u)[::stride] for c in series])
        worst = max(worst, float(np.max(np.maximum(env.lower - y_n, y_n - env.upper))))
    results.append(("cfia_truncated", eps, worst))

    y_full = run.trajectories[:, :, ::stride]
    if args.tail:
        tail_env = _envelope(spec, args.order, t, True)
        w = float(np.max(np.maximum(tail_env.lower - y_full, y_full - tail_env.upper)))
        results.append(("cfia_tail", 1e-6, w))

    lo, hi = _mm_box(spec, args.t_final, args.points, args.dt, args.grid)
    w = float(np.max(np.maximum(lo - y_full, y_full - hi)))
    results.append(("mm_box", 1e-6, w))

    rows = [[name, _fmt(tol), _fmt(max(v, 0.0)), "ok" if v <= tol else "violated"]
            for name, tol, v in results]
    _write_rows(["check", "tolerance", "max_excess", "status"], rows, out)
    failed = [r[0] for r in rows if r[3] != "ok"]
    if failed:
        print(f"containment violated: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfreach", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--system", help="JSON system description")
        src.add_argument("--fixture", choices=sorted(["ferfera", "lotka-volterra"]))
        p.add_argument("--out", help="write CSV here instead of stdout")

    def grid(p):
        p.add_argument("--t-final", type=float, default=1.0)
        p.add_argument("--points", type=int, default=101, help="output grid points")

    def mm_opts(p):
        p.add_argument("--dt", type=float, default=1e-3, help="RK4 step for the embedding system")
        p.add_argument("--grid", type=int, default=33, help="grid points per free dimension")

    def mc_opts(p):
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--segments", type=int, default=10)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--steps", type=int, default=1000, help="integration steps over [0, T]")

    p = sub.add_parser("coeffs", help="Chen-Fliess coefficients")
    common(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--output", type=int, default=1, help="output channel, 1-based")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("reach", help="interval reach envelope")
    common(p)
    p.add_argument("--order", type=int, required=True)
    grid(p)
    p.add_argument("--tail", action="store_true", help="widen by the truncation tail bound")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("mm", help="mixed-monotone embedding box")
    common(p)
    grid(p)
    mm_opts(p)
    p.set_defaults(func=cmd_mm)

    p = sub.add_parser("mc", help="Monte-Carlo empirical reach")
    common(p)
    grid(p)
    mc_opts(p)
    p.add_argument("--dump-trajectories", metavar="DIR", help="also write one CSV per sample")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("check", help="containment checks across methods")
    common(p)
    p.add_argument("--order", type=int, default=3)
    grid(p)
    mm_opts(p)
    mc_opts(p)
    p.add_argument("--tail", action="store_true")
    p.set_defaults(func=cmd_check)
    return parser


def _validate(args):
    if getattr(args, "order", 0) < 0:
        raise SpecError("--order", "must be >= 0")
    if getattr(args, "points", 2) < 2:
        raise SpecError("--points", "must be >= 2")
    if getattr(args, "t_final", 1.0) <= 0:
        raise SpecError("--t-final", "must be positive")
    if getattr(args, "dt", 1.0) <= 0:
        raise SpecError("--dt", "must be positive")
    if getattr(args, "grid", 2) < 1:
        raise SpecError("--grid", "must be >= 1")
    for name in ("samples", "segments", "steps"):
        if getattr(args, name, 1) < 1:
            raise SpecError(f"--{name}", "must be >= 1")


def run(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    stdout = stdout if stdout is not None else sys.stdout
    buf = io.StringIO()
    try:
        _validate(args)
        spec = _load(args)
        code = args.func(args, spec, buf)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        stdout.write(buf.getvalue())
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
