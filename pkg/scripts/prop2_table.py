"""Compare (4 / (a b)) det(rho(gamma(w))) with the wedge coefficient of CYB(w)
for the quaternionic algebra [a, b] over seeded random skew tensors w.

    python scripts/prop2_table.py --samples 20 --seed 7
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from bialg.cli import prop2_samples
from bialg.decide import prop2_verify

PAIRS = [(-1, -1), (1, 1), (2, 3), (-2, 5), (Fraction(1, 2), -3)]


@dataclass
class Config:
    samples: int = 20
    seed: int = 7
    show: int = 5


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--show", type=int, default=Config.show, help="sample rows printed per pair")
    ns = p.parse_args()
    cfg = Config(ns.samples, ns.seed, ns.show)

    for a, b in PAIRS:
        rep = prop2_verify(a, b, prop2_samples(cfg.samples, cfg.seed))
        agree = sum(s["equal"] for s in rep.samples)
        print(f"[{a},{b}]: {agree}/{len(rep.samples)} samples agree")
        for s in rep.samples[: cfg.show]:
            print(f"    w = {s['w']}  lhs = {s['lhs']}  rhs = {s['rhs']}")


if __name__ == "__main__":
    main()
