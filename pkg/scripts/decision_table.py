"""Decide triangular / quasi-triangular / coboundary existence for the preset
corpus, then stress the witness search on seeded random algebras.

    python scripts/decision_table.py --random 200 --seed 0
"""

import argparse
import collections
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from algebras import PRESETS, random_algebra  # noqa: E402
from bialg import lie  # noqa: E402
from bialg.decide import decide  # noqa: E402
from bialg.tensors import tensor_to_json  # noqa: E402


@dataclass
class Config:
    random: int = 100
    seed: int = 0
    max_dim: int = 5


def witness_text(v):
    if v.witness is None:
        return "-"
    return " ".join(f"{k}:{c}" for k, c in tensor_to_json(v.witness, 2).items())


def preset_table():
    print(f"{'algebra':<16}{'T':<6}{'QT':<6}{'C':<6}{'stage':<16}witness")
    for name in PRESETS:
        rep = decide(lie.preset(name))
        v = rep.triangular if rep.triangular.witness is not None else rep.coboundary
        print(f"{name:<16}{rep.triangular.status:<6}{rep.quasi_triangular.status:<6}"
              f"{rep.coboundary.status:<6}{str(v.stage or '-'):<16}{witness_text(v)}")


def random_stress(cfg: Config):
    rng = random.Random(cfg.seed)
    stages = collections.Counter()
    misses = 0
    start = time.perf_counter()
    for _ in range(cfg.random):
        g = random_algebra(rng, cfg.max_dim)
        rep = decide(g)
        if rep.triangular.status == "yes_no_witness_found":
            misses += 1
        stages[rep.triangular.stage or rep.triangular.status] += 1
    elapsed = time.perf_counter() - start
    print(f"\n{cfg.random} random algebras (dim <= {cfg.max_dim}, seed {cfg.seed}) in {elapsed:.1f}s")
    for key, count in sorted(stages.items()):
        print(f"  {key:<24}{count}")
    print(f"  witness search misses: {misses}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--random", type=int, default=Config.random)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--max-dim", type=int, default=Config.max_dim)
    ns = p.parse_args()
    cfg = Config(ns.random, ns.seed, ns.max_dim)
    preset_table()
    random_stress(cfg)


if __name__ == "__main__":
    main()
