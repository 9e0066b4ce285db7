"""Command-line front end: run experiments, order studies and drift reports.

    ligi integrate --problem frb_s2 --scheme rkmk4 --h 0.05 --steps 200
    ligi order     --problem frb_s2 --scheme lie_euler --h-list 0.1,0.05,0.025
    ligi drift     --preset heavytop-theta05

Trajectories are written as CSV (full precision, deterministic for a given
config and seed); order and drift reports are printed as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields

import numpy as np

from .actions import QUAT_LEFT, FrozenFieldProblem
from .discrete_gradient import body_momentum, dg_step, free_rigid_body_quat
from .errors import FixedPointDivergence
from .problems import (
    DuffingParams,
    StiefelFlowProblem,
    duffing_problem,
    free_rigid_body_s2,
    pca_gradient_problem,
    random_orthonormal,
    torus_descent_problem,
    torus_state,
)
from .steppers import (
    KUTTA4,
    Trajectory,
    cf4_step,
    convergence_study,
    heun_step,
    integrate,
    lie_euler_step,
    rkmk4_step,
    rkmk_step,
)
from .symplectic import HeavyTopParams, heavy_top, integrate_cotangent


@dataclass
class RunConfig:
    """Everything a run needs; unset fields fall back to preset/config values."""

    command: str = "integrate"
    problem: str = None
    scheme: str = None
    h: float = None
    steps: int = None
    theta: float = 0.5
    tdd: str = "gonzalez"
    series_order: int = 4
    seed: int = 0
    out: str = None
    h_list: tuple = None
    T: float = 2.0

    def validate(self):
        if self.problem not in PROBLEMS:
            raise ConfigError(f"unknown problem {self.problem!r}; known: {sorted(PROBLEMS)}")
        if self.scheme is None:
            raise ConfigError("a scheme is required")
        if self.command in ("integrate", "drift"):
            if self.h is None or self.h <= 0.0:
                raise ConfigError("h must be positive")
            if self.steps is None or self.steps < 1:
                raise ConfigError("steps must be >= 1")
        if self.command == "order":
            if self.h_list is None or len(self.h_list) < 3:
                raise ConfigError("order needs at least 3 step sizes (--h-list)")


class ConfigError(ValueError):
    pass


PRESETS = {
    "heavytop-theta0": dict(problem="heavytop", scheme="symplectic_theta",
                            theta=0.0, h=0.05, steps=10000),
    "heavytop-theta05": dict(problem="heavytop", scheme="symplectic_theta",
                             theta=0.5, h=0.05, steps=10000),
    "heavytop-rkmk-theta0": dict(problem="heavytop", scheme="rkmk_theta",
                                 theta=0.0, h=0.05, steps=10000),
    "heavytop-rkmk-theta05": dict(problem="heavytop", scheme="rkmk_theta",
                                  theta=0.5, h=0.05, steps=10000),
    "frb-s3-dg": dict(problem="frb_s3", scheme="dg", h=1.0 / 64.0, steps=10000),
    "frb-s3-heun": dict(problem="frb_s3", scheme="heun_rkmk", h=1.0 / 64.0,
                        steps=10000),
    "frb-s2-rkmk4": dict(problem="frb_s2", scheme="rkmk4", h=0.05, steps=1000),
    "duffing-sl2-lie-euler": dict(problem="duffing_sl2", scheme="lie_euler",
                                  h=0.01, steps=2000),
    "torus-descent": dict(problem="torus", scheme="lie_euler", h=0.02, steps=2000),
    "stiefel-pca": dict(problem="stiefel_pca", scheme="cf4", h=0.05, steps=600),
}

ACTION_STEPS = {
    "lie_euler": (lie_euler_step, {}),
    "heun_rkmk": (heun_step, {"variant": "rkmk"}),
    "heun_cg_left": (heun_step, {"variant": "cg_left"}),
    "heun_cg_right": (heun_step, {"variant": "cg_right"}),
    "rkmk": (rkmk_step, {"tableau": KUTTA4}),
    "rkmk4": (rkmk4_step, {}),
    "cf4": (cf4_step, {}),
}

COTANGENT_SCHEMES = ("symplectic_theta", "rkmk_theta")
DG_SCHEMES = ("dg", "dg_avf")


def _frb_s3_setup():
    inertia = np.array([1.0, 5.0, 60.0])
    m0 = np.array([1.0, 0.5, -1.0]) / inertia  # body momentum with I*m0 = (1, 1/2, -1)
    system = free_rigid_body_quat(inertia, m0)
    invariants = (
        ("energy", system.energy),
        ("norm", lambda q: float(np.linalg.norm(q))),
        ("momentum_norm", lambda q: float(np.linalg.norm(body_momentum(q, m0)))),
    )
    state0 = np.array([1.0, 0.0, 0.0, 0.0])
    return system, invariants, state0


def _problem_duffing(frame):
    def build(config):
        problem = duffing_problem(DuffingParams(1.0, 1.0), frame)
        return dict(kind="action", problem=problem,
                    state0=np.array([0.75, 0.75]), labels=["x", "y"])
    return build


def _problem_frb_s2(config):
    problem = free_rigid_body_s2(1.0, 5.0, 60.0)
    state0 = np.array([np.cos(1.1), 0.0, np.sin(1.1)])
    return dict(kind="action", problem=problem, state0=state0,
                labels=["m1", "m2", "m3"])


def _problem_torus(config):
    return dict(kind="action", problem=torus_descent_problem(),
                state0=torus_state(0.3, 1.2), labels=["u1", "u2", "v1", "v2"])


def _problem_stiefel(config):
    flow = StiefelFlowProblem(np.diag([5.0, 4.0, 3.0, 2.0, 1.0]), k=2)
    problem = pca_gradient_problem(flow)
    q0 = random_orthonormal(flow.n, flow.k, config.seed)
    labels = [f"q{i + 1}{j + 1}" for i in range(flow.n) for j in range(flow.k)]
    return dict(kind="action", problem=problem, state0=q0, labels=labels)


def _problem_heavytop(config):
    params = HeavyTopParams.benchmark()
    return dict(kind="cotangent", system=heavy_top(params), state0=params.state0,
                labels=[f"g{i + 1}{j + 1}" for i in range(3) for j in range(3)]
                       + ["mu1", "mu2", "mu3"])


def _problem_frb_s3(config):
    system, invariants, state0 = _frb_s3_setup()
    return dict(kind="dg", system=system, invariants=invariants, state0=state0,
                labels=["q0", "q1", "q2", "q3"])


PROBLEMS = {
    "duffing_r2": _problem_duffing("r2"),
    "duffing_sl2": _problem_duffing("sl2"),
    "duffing_se2": _problem_duffing("se2"),
    "frb_s2": _problem_frb_s2,
    "torus": _problem_torus,
    "stiefel_pca": _problem_stiefel,
    "heavytop": _problem_heavytop,
    "frb_s3": _problem_frb_s3,
}


def _flatten_state(state):
    if isinstance(state, tuple):
        return np.concatenate([np.ravel(np.asarray(part, float)) for part in state])
    return np.ravel(np.asarray(state, float))


def run_trajectory(config: RunConfig) -> tuple[Trajectory, list]:
    """Execute the configured run; returns the trajectory and state labels."""
    setup = PROBLEMS[config.problem](config)
    scheme = config.scheme

    if setup["kind"] == "action":
        if scheme not in ACTION_STEPS:
            raise ConfigError(
                f"scheme {scheme!r} not available for {config.problem!r};"
                f" choose from {sorted(ACTION_STEPS)}")
        step, kwargs = ACTION_STEPS[scheme]
        if scheme == "rkmk":
            kwargs = {**kwargs, "series_order": config.series_order}
        traj = integrate(setup["problem"], step, setup["state0"], config.h,
                         config.steps, **kwargs)
        return traj, setup["labels"]

    if setup["kind"] == "cotangent":
        if scheme not in COTANGENT_SCHEMES:
            raise ConfigError(f"heavytop needs a scheme in {COTANGENT_SCHEMES}")
        traj = integrate_cotangent(setup["system"], scheme, setup["state0"],
                                   config.h, config.steps, theta=config.theta)
        return traj, setup["labels"]

    if setup["kind"] == "dg":
        system, invariants = setup["system"], setup["invariants"]
        if scheme in DG_SCHEMES:
            tdd = "avf" if scheme == "dg_avf" else config.tdd
            def step_fn(y, h):
                return dg_step(system, y, h, tdd=tdd)
        elif scheme in ACTION_STEPS:
            problem = FrozenFieldProblem(action=QUAT_LEFT,
                                         coefficient_map=system.field,
                                         invariants=invariants)
            base, kwargs = ACTION_STEPS[scheme]
            def step_fn(y, h):
                return base(problem, y, h, **kwargs)
        else:
            raise ConfigError(f"scheme {scheme!r} not available for frb_s3")
        times = np.arange(config.steps + 1) * config.h
        states = [setup["state0"]]
        values = {name: [fn(states[0])] for name, fn in invariants}
        y = states[0]
        for _ in range(config.steps):
            y = step_fn(y, config.h)
            states.append(y)
            for name, fn in invariants:
                values[name].append(fn(y))
        traj = Trajectory(times, states,
                          {name: np.asarray(vals) for name, vals in values.items()})
        return traj, setup["labels"]

    raise ConfigError(f"unhandled problem kind {setup['kind']!r}")


def write_csv(traj: Trajectory, labels, stream):
    names = list(traj.invariants)
    header = ["t"] + list(labels) + names
    stream.write(",".join(header) + "\n")
    for i, t in enumerate(traj.times):
        row = [t] + list(_flatten_state(traj.states[i])) \
            + [traj.invariants[name][i] for name in names]
        stream.write(",".join(f"{v:.17g}" for v in row) + "\n")


def cmd_integrate(config: RunConfig) -> int:
    traj, labels = run_trajectory(config)
    if config.out:
        with open(config.out, "w") as fh:
            write_csv(traj, labels, fh)
    else:
        write_csv(traj, labels, sys.stdout)
    return 0


DRIFT_THRESHOLD = 1e-3


def drift_report(traj: Trajectory):
    """Per-invariant deviation statistics and a drift classification.

    An invariant drifts when |slope| * T / |value_0| exceeds 1e-3, with the
    slope from a least-squares linear fit over the whole run.
    """
    report = {}
    T = float(traj.times[-1])
    for name, values in traj.invariants.items():
        v0 = float(values[0])
        scale = max(abs(v0), np.finfo(float).tiny)
        slope = float(np.polyfit(traj.times, values, 1)[0])
        rate = abs(slope) * T / scale
        report[name] = {
            "value0": v0,
            "max_rel_deviation": float(np.max(np.abs(values - v0)) / scale),
            "slope": slope,
            "rel_drift_rate": rate,
            "classification": "drift" if rate > DRIFT_THRESHOLD else "no-drift",
        }
    return report


def cmd_drift(config: RunConfig) -> int:
    traj, _ = run_trajectory(config)
    if not traj.invariants:
        raise ConfigError("drift needs a problem exposing at least one invariant")
    out = {
        "problem": config.problem,
        "scheme": config.scheme,
        "T": float(traj.times[-1]),
        "invariants": drift_report(traj),
    }
    text = json.dumps(out, indent=2)
    print(text)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text + "\n")
    return 0


def cmd_order(config: RunConfig) -> int:
    setup = PROBLEMS[config.problem](config)
    if setup["kind"] != "action":
        raise ConfigError("order studies are provided for group-action problems")
    if config.scheme not in ACTION_STEPS:
        raise ConfigError(f"scheme {config.scheme!r} unknown")
    step, kwargs = ACTION_STEPS[config.scheme]
    slope, errors = convergence_study(setup["problem"], step, setup["state0"],
                                      config.T, list(config.h_list), **kwargs)
    out = {
        "problem": config.problem,
        "scheme": config.scheme,
        "slope": slope,
        "h_list": list(config.h_list),
        "errors": errors,
    }
    text = json.dumps(out, indent=2)
    print(text)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ligi",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="presets: " + ", ".join(sorted(PRESETS)),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("integrate", "order", "drift"):
        p = sub.add_parser(name)
        p.add_argument("--problem", help=f"one of {sorted(PROBLEMS)}")
        p.add_argument("--scheme")
        p.add_argument("--h", type=float)
        p.add_argument("--steps", type=int)
        p.add_argument("--theta", type=float)
        p.add_argument("--tdd", choices=["gonzalez", "avf"])
        p.add_argument("--series-order", dest="series_order", type=int)
        p.add_argument("--preset", choices=sorted(PRESETS))
        p.add_argument("--config", help="JSON file with config values")
        p.add_argument("--out", help="output path (CSV or JSON)")
        p.add_argument("--seed", type=int)
        if name == "order":
            p.add_argument("--h-list", dest="h_list",
                           help="comma-separated decreasing step sizes")
            p.add_argument("--T", type=float)
    return parser


def _assemble_config(args) -> RunConfig:
    values = {}
    if args.preset:
        values.update(PRESETS[args.preset])
    if args.config:
        with open(args.config) as fh:
            values.update(json.load(fh))
    for name in ("problem", "scheme", "h", "steps", "theta", "tdd",
                 "series_order", "seed", "out", "T"):
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    if getattr(args, "h_list", None) is not None:
        values["h_list"] = tuple(float(x) for x in args.h_list.split(","))
    elif "h_list" in values and values["h_list"] is not None:
        values["h_list"] = tuple(float(x) for x in values["h_list"])
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    config = RunConfig(command=args.command, **values)
    config.validate()
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _assemble_config(args)
        if args.command == "integrate":
            return cmd_integrate(config)
        if args.command == "order":
            return cmd_order(config)
        return cmd_drift(config)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FixedPointDivergence as exc:
        print(f"solver divergence: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
