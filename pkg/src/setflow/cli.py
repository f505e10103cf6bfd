"""Command-line front end: scenario runs, the built-in demo, and diagnostics."""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import formats, svg
from .dynamics import (
    RhsField,
    existence_horizon,
    integrate,
    lipschitz_estimate,
    osl_check,
    relax_to,
    relaxation_closed_form,
    subtangent_feasible,
)
from .errors import (
    ConfigError,
    Contained,
    DegenerateDistance,
    DegenerateField,
    SetflowError,
)
from .hukuhara import (
    SetCurve,
    classify_curve,
    difference_quotients,
    quotient_gap,
    second_type_differential,
)
from .sampling import random_cone_sample, random_rectangle
from .support import (
    ConvexPolygon,
    DirectionGrid,
    SupportSample,
    hausdorff_exact,
    hausdorff_grid,
    is_in_cone,
    reconstruct_polygon,
    support_of_polygon,
)

EXAMPLE_RECTS = {
    1: ((2.0, 3.0), (1.0, 2.0)),
    2: ((0.0, 3.5), (-1.5, 2.5)),
    3: ((-1.5, 3.5), (-0.5, 0.0)),
}
EXAMPLE_TARGET = ((-1.0, 1.0), (-1.0, 1.0))
FRAME_SPACING = 0.25


def _error(code: str, message: str) -> None:
    print(json.dumps({"error": code, "message": message}), file=sys.stderr)


def _frame_indices(times: np.ndarray, spacing: float) -> list[int]:
    wanted = np.arange(0.0, times[-1] + spacing / 2, spacing)
    return sorted({int(np.argmin(np.abs(times - t))) for t in wanted})


def cmd_integrate(args) -> int:
    try:
        cfg = formats.load_scenario(args.config)
        if cfg.initial is None:
            raise ConfigError("missing_key", "integrate needs an 'initial' set")
        field = formats.build_field(cfg)
    except ConfigError as exc:
        _error(exc.code, str(exc))
        return 2
    grid = cfg.grid
    sigma0 = support_of_polygon(cfg.initial, grid)
    try:
        traj = integrate(field, sigma0, cfg.T, cfg.h, cfg.method, cfg.policy)
    except SetflowError as exc:
        _error("integration", str(exc))
        return 3
    out = cfg.output
    traj_path = out.get("trajectory", "trajectory.csv")
    formats.write_trajectory_csv(traj, traj_path)
    print(f"wrote {traj_path} ({len(traj)} steps, method={cfg.method})")
    frames = _frame_indices(traj.times, out.get("frame_spacing", FRAME_SPACING))
    if "filmstrip" in out:
        polys = [(traj.times[k], reconstruct_polygon(traj.sample(k))) for k in frames]
        svg.polygon_filmstrip(polys, out["filmstrip"], title=f"{field.name}: sets")
        print(f"wrote {out['filmstrip']}")
    if "support" in out:
        vals = [(traj.times[k], traj.states[k]) for k in frames]
        svg.support_profiles(
            vals, grid.angles, out["support"], title=f"{field.name}: support values"
        )
        print(f"wrote {out['support']}")
    if not traj.completed:
        _error("integration", traj.failure or "trajectory truncated")
        return 3
    return 0


def _example_one(k: int, outdir: Path, grid: DirectionGrid, h: float, method: str):
    a0 = ConvexPolygon.box(*EXAMPLE_RECTS[k])
    q = ConvexPolygon.box(*EXAMPLE_TARGET)
    target = support_of_polygon(q, grid)
    field = relax_to(target)
    sigma0 = support_of_polygon(a0, grid)
    traj = integrate(field, sigma0, 4.0, h, method=method)
    closed = np.array(
        [relaxation_closed_form(a0, q, t, grid).values for t in traj.times]
    )
    max_err = float(np.max(np.abs(traj.states - closed)))
    formats.write_trajectory_csv(traj, outdir / f"curve{k}_trajectory.csv")

    frames = _frame_indices(traj.times, FRAME_SPACING)
    frame_curve = SetCurve(
        traj.times[frames], tuple(traj.sample(i) for i in frames)
    )
    whole, steps = classify_curve(frame_curve)

    with open(outdir / f"curve{k}_classification.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["step", "t", "class", "quotient_gap"])
        for j, cls in enumerate(steps, start=1):
            gap = quotient_gap(frame_curve, j)
            w.writerow([j, "%.17g" % frame_curve.times[j], str(cls), "%.17g" % gap])

    interior = range(1, len(frame_curve) - 1)
    deltas = []
    for j in interior:
        fwd, bwd = difference_quotients(frame_curve, j)
        deltas.append(0.5 * (fwd + bwd))
    inner_times = frame_curve.times[1:-1]
    formats.write_values_csv(inner_times, deltas, outdir / f"curve{k}_frechet_delta.csv")

    hukuhara_rows = [
        (t, d) for t, d in zip(inner_times, deltas) if is_in_cone(d.values, grid)
    ]
    if hukuhara_rows:
        formats.write_values_csv(
            [t for t, _ in hukuhara_rows],
            [d for _, d in hukuhara_rows],
            outdir / f"curve{k}_hukuhara_differentials.csv",
        )
    second_rows = []
    for t, d in zip(inner_times, deltas):
        s = second_type_differential(d)
        if s is not None:
            second_rows.append((t, s))
    if second_rows:
        formats.write_values_csv(
            [t for t, _ in second_rows],
            [s for _, s in second_rows],
            outdir / f"curve{k}_second_type_differentials.csv",
        )

    set_frames = [
        (frame_curve.times[j], reconstruct_polygon(frame_curve.samples[j]))
        for j in range(len(frame_curve))
    ]
    svg.polygon_filmstrip(
        set_frames, outdir / f"curve{k}_sets.svg", title=f"curve {k}: states"
    )
    svg.support_profiles(
        [(frame_curve.times[j], frame_curve.samples[j]) for j in range(len(frame_curve))],
        grid.angles,
        outdir / f"curve{k}_support.svg",
        title=f"curve {k}: support values",
    )
    svg.support_profiles(
        list(zip(inner_times, deltas)),
        grid.angles,
        outdir / f"curve{k}_delta_support.svg",
        title=f"curve {k}: derivative values",
    )
    diff_frames = [(t, reconstruct_polygon(SupportSample(grid, d.values)))
                   for t, d in hukuhara_rows]
    diff_frames += [(t, reconstruct_polygon(s)) for t, s in second_rows]
    if diff_frames:
        svg.polygon_filmstrip(
            diff_frames,
            outdir / f"curve{k}_differentials.svg",
            title=f"curve {k}: differentials",
        )
    return whole, max_err


def cmd_example(args) -> int:
    outdir = Path(args.outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        _error("filesystem", str(exc))
        return 4
    grid = DirectionGrid(args.grid_n)
    try:
        results = {
            k: _example_one(k, outdir, grid, args.h, args.method)
            for k in (1, 2, 3)
        }
    except OSError as exc:
        _error("filesystem", str(exc))
        return 4
    for k, (whole, _) in results.items():
        print(f"curve {k}: {whole}")
    for k, (_, err) in results.items():
        print(f"curve {k} max |numeric - closed form| = {err:.3e}")
    return 0


def _check_subtangent(cfg, field: RhsField, rng) -> int:
    grid = cfg.grid
    points = []
    if cfg.initial is not None:
        points.append(support_of_polygon(cfg.initial, grid))
    while len(points) < cfg.samples:
        points.append(random_cone_sample(grid, rng))
    witnesses = []
    intervals = []
    for sigma in points:
        t = float(rng.uniform(0.0, cfg.T))
        res = subtangent_feasible(field(t, sigma), sigma)
        intervals.append(res)
        if not res.feasible:
            witnesses.append((t, sigma))
    feasible = [r for r in intervals if r.feasible]
    if feasible:
        lam_lo = max(r.lam_min for r in feasible)
        lam_hi = min(r.lam_max for r in feasible)
        hi_txt = "inf" if math.isinf(lam_hi) else f"{lam_hi:.6g}"
        print(
            f"subtangent: {len(feasible)}/{len(intervals)} feasible; "
            f"common lambda interval [{lam_lo:.6g}, {hi_txt}]"
        )
    if witnesses:
        print(f"subtangent: {len(witnesses)} infeasible points witnessed")
        return 1
    return 0


def _check_osl(cfg, field: RhsField, rng) -> int:
    omega = formats.build_omega(cfg)
    rows = []
    violated = 0
    checked = 0
    while checked < cfg.samples:
        a = random_rectangle(rng)
        b = random_rectangle(rng)
        t = float(rng.uniform(0.0, cfg.T))
        try:
            rep = osl_check(field, a, b, t, omega)
        except (DegenerateDistance, Contained):
            continue
        checked += 1
        if not rep.satisfied:
            violated += 1
            w = rep.witness
            rows.append(
                [t, w.a[0], w.a[1], w.b[0], w.b[1], w.direction_index, w.lhs, w.bound]
            )
    print(f"osl: {checked - violated}/{checked} pairs satisfied")
    if rows and "witnesses" in cfg.output:
        with open(cfg.output["witnesses"], "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "ax", "ay", "bx", "by", "direction_index", "lhs", "bound"])
            w.writerows(rows)
        print(f"wrote {cfg.output['witnesses']}")
    if violated:
        first = rows[0]
        print(
            f"osl witness: a=({first[1]:.4g},{first[2]:.4g}) "
            f"b=({first[3]:.4g},{first[4]:.4g}) index={first[5]} "
            f"lhs={first[6]:.6g} bound={first[7]:.6g}"
        )
        return 1
    return 0


def _check_lipschitz(cfg, field: RhsField, rng) -> int:
    est = lipschitz_estimate(field, budget=cfg.samples, seed=int(rng.integers(2**31)))
    declared = field.lipschitz
    extra = f" (declared {declared:g})" if declared is not None else ""
    print(f"lipschitz estimate: {est:.9g}{extra}")
    return 0


def _check_horizon(cfg, field: RhsField, rng) -> int:
    if cfg.initial is None:
        raise ConfigError("missing_key", "horizon check needs an 'initial' set")
    sigma0 = support_of_polygon(cfg.initial, cfg.grid)
    try:
        c, b = existence_horizon(
            field, sigma0, cfg.r, cfg.T, budget=cfg.samples,
            seed=int(rng.integers(2**31)),
        )
    except DegenerateField as exc:
        print(f"horizon: field degenerate (c = 0), b = {exc.horizon:g}")
        return 0
    print(f"horizon: c = {c:.9g}, b = min(T, r/c) = {b:.9g}")
    return 0


def cmd_check(args) -> int:
    try:
        cfg = formats.load_scenario(args.config)
        field = formats.build_field(cfg)
        rng = np.random.default_rng(formats.resolve_seed(cfg))
        runner = {
            "subtangent": _check_subtangent,
            "osl": _check_osl,
            "lipschitz": _check_lipschitz,
            "horizon": _check_horizon,
        }[args.diagnostic]
        return runner(cfg, field, rng)
    except ConfigError as exc:
        _error(exc.code, str(exc))
        return 2


def cmd_hausdorff(args) -> int:
    try:
        a = formats.load_set(args.set_a)
        b = formats.load_set(args.set_b)
    except ConfigError as exc:
        _error(exc.code, str(exc))
        return 2
    grid = DirectionGrid(args.n)
    est = hausdorff_grid(support_of_polygon(a, grid), support_of_polygon(b, grid))
    exact = hausdorff_exact(a, b)
    print(f"grid estimate (n={args.n}): {est:.12g}")
    print(f"exact: {exact:.12g}")
    print(f"gap: {exact - est:.3e}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="setflow",
        description="Set-valued dynamics via support functions on a direction grid",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("integrate", help="run a scenario config")
    p_int.add_argument("config")
    p_int.set_defaults(fn=cmd_integrate)

    p_ex = sub.add_parser("example", help="run the three-rectangle relaxation demo")
    p_ex.add_argument("outdir")
    p_ex.add_argument("--h", type=float, default=0.01)
    p_ex.add_argument("--method", choices=("euler", "rk4"), default="rk4")
    p_ex.add_argument("--grid-n", type=int, default=64, dest="grid_n")
    p_ex.set_defaults(fn=cmd_example)

    p_chk = sub.add_parser("check", help="run a diagnostic over a scenario")
    p_chk.add_argument(
        "diagnostic", choices=("subtangent", "osl", "lipschitz", "horizon")
    )
    p_chk.add_argument("config")
    p_chk.set_defaults(fn=cmd_check)

    p_hd = sub.add_parser("hausdorff", help="compare two sets")
    p_hd.add_argument("set_a")
    p_hd.add_argument("set_b")
    p_hd.add_argument("--n", type=int, default=256)
    p_hd.set_defaults(fn=cmd_hausdorff)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
