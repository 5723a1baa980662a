"""Table of |SL2(Z/l)|, cover degrees, surjectivity and torsion searches."""

import argparse
import json

from moduli_kit import levels
from moduli_kit.config import LevelTableConfig


def rows(cfg: LevelTableConfig):
    for l in cfg.moduli:
        enum = levels.sl2_mod_order(l, "enumerate")
        rec = {"l": l, "order": enum, "formula": levels.sl2_order_formula(l)}
        if l > 2:
            rec["degree"] = levels.level_cover_degree(l)
        if l <= levels.MAX_CLOSURE_MODULUS:
            rec["surjective"] = levels.reduction_surjectivity_check(l)
        yield rec
    for g, l in cfg.sp_cases:
        yield {"g": g, "l": l, "order": levels.sp_mod_order(g, l)}
    for l in cfg.torsion_moduli:
        found = levels.torsion_search(l, cfg.torsion_bound, cfg.threads)
        yield {"l": l, "bound": cfg.torsion_bound, "torsion": [list(m) for m in found]}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=LevelTableConfig.torsion_bound)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()
    for rec in rows(LevelTableConfig(torsion_bound=args.bound, threads=args.threads)):
        print(json.dumps(rec))


if __name__ == "__main__":
    main()
