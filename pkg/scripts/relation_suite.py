"""Random braid and conjugation trials plus the fixed relation identities."""

import argparse
import json
import time

import numpy as np

from moduli_kit import mcg
from moduli_kit.config import RelationSuiteConfig


def run(cfg: RelationSuiteConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    t = time.perf_counter()
    braid_ok = braid_n = 0
    counterexamples = 0
    while braid_n < cfg.braid_pairs:
        g = int(rng.integers(1, cfg.max_genus + 1))
        a, b = rng.integers(-cfg.entry_bound, cfg.entry_bound + 1, size=(2, 2 * g))
        p = abs(mcg.pairing(a, b))
        if p == 2 and not mcg.braid_holds(a, b):
            counterexamples += 1
        if p != 1:
            continue
        braid_n += 1
        braid_ok += mcg.verify_braid(a, b)
    conj_ok = 0
    for _ in range(cfg.conjugation_trials):
        g = int(rng.integers(1, cfg.max_genus + 1))
        phi = mcg.random_symplectic(g, rng)
        a = rng.integers(-3, 4, size=2 * g)
        if not a.any():
            a[0] = 1
        conj_ok += mcg.dehn_conjugation_check(a, phi)
    return {
        "braid": [braid_ok, braid_n],
        "pairing_two_failures_seen": counterexamples,
        "conjugation": [conj_ok, cfg.conjugation_trials],
        "chain1": mcg.verify_chain_one_boundary(),
        "chain2": mcg.verify_chain_two_boundary(),
        "lantern": mcg.verify_lantern(),
        "h1": {g: mcg.h1_mapping_class_group(g).group for g in (1, 2, 3)},
        "seconds": round(time.perf_counter() - t, 3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=RelationSuiteConfig.braid_pairs)
    args = ap.parse_args()
    print(json.dumps(run(RelationSuiteConfig(seed=args.seed, braid_pairs=args.pairs))))


if __name__ == "__main__":
    main()
