"""Scan lambda over (0, 1): AGM periods, tau, j, and the closed-form j.

Emits JSON lines suitable for piping into a plotting tool.
"""

import argparse
import json

import numpy as np

from moduli_kit.cli import to_jsonable
from moduli_kit.config import LambdaScanConfig
from moduli_kit.periods import j_from_lambda, j_legendre_formula, legendre_periods


def scan(cfg: LambdaScanConfig):
    points = list(np.linspace(cfg.start, cfg.stop, cfg.steps))
    if cfg.include_best_effort:
        points += list(cfg.best_effort_points)
    for lam in points:
        p = legendre_periods(lam, warn=False)
        j = j_from_lambda(lam, warn=False)
        ref = j_legendre_formula(lam)
        yield {
            "lambda": float(lam),
            "tau": p.tau,
            "j": j,
            "j_closed_form": ref,
            "rel_err": abs(j - ref) / max(1.0, abs(ref)),
            "mode": "guaranteed" if p.guaranteed else "best-effort",
        }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=LambdaScanConfig.steps)
    ap.add_argument("--best-effort", action="store_true")
    args = ap.parse_args()
    cfg = LambdaScanConfig(steps=args.steps, include_best_effort=args.best_effort)
    worst = 0.0
    for rec in scan(cfg):
        worst = max(worst, rec["rel_err"])
        print(json.dumps(to_jsonable(rec)))
    print(json.dumps({"summary": "max relative error vs closed form", "value": worst}))


if __name__ == "__main__":
    main()
