"""Empirical convergence orders of every scheme on the free rigid body."""

import argparse

import numpy as np

from ligi.problems import free_rigid_body_s2
from ligi.steppers import (
    KUTTA4,
    cf4_step,
    convergence_study,
    heun_step,
    lie_euler_step,
    rkmk4_step,
    rkmk_step,
)

SCHEMES = [
    ("lie_euler", lie_euler_step, {}),
    ("heun_rkmk", heun_step, {"variant": "rkmk"}),
    ("heun_cg_left", heun_step, {"variant": "cg_left"}),
    ("heun_cg_right", heun_step, {"variant": "cg_right"}),
    ("rkmk(kutta4)", rkmk_step, {"tableau": KUTTA4}),
    ("rkmk4", rkmk4_step, {}),
    ("cf4", cf4_step, {}),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--T", type=float, default=2.0)
    parser.add_argument("--levels", type=int, default=6)
    args = parser.parse_args()

    problem = free_rigid_body_s2(1.0, 5.0, 60.0)
    y0 = np.array([np.cos(1.1), 0.0, np.sin(1.1)])
    hs = [0.1 * 2.0 ** -j for j in range(args.levels)]

    print(f"free rigid body, T={args.T}, h in {hs}")
    print(f"{'scheme':14s} {'slope':>6s}   errors")
    for name, step, kwargs in SCHEMES:
        slope, errors = convergence_study(problem, step, y0, args.T, hs, **kwargs)
        err_text = " ".join(f"{e:.2e}" for e in errors)
        print(f"{name:14s} {slope:6.3f}   {err_text}")


if __name__ == "__main__":
    main()
