"""Splitness of the quaternionic Lie algebras [a, b] for squarefree |a|, |b| <= N,
with the local symbols and the least norm-form witness found by search.

    python scripts/split_table.py --limit 12 --bound 1000
"""

import argparse
from dataclasses import dataclass

from bialg.quadforms import hilbert_symbol, isotropic_vector, norm_form, quaternion_is_split, relevant_places


@dataclass
class Config:
    limit: int = 10
    bound: int = 1000


def squarefree(n):
    return n != 0 and all(n % (p * p) for p in range(2, int(abs(n) ** 0.5) + 1))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--limit", type=int, default=Config.limit)
    p.add_argument("--bound", type=int, default=Config.bound)
    ns = p.parse_args()
    cfg = Config(ns.limit, ns.bound)

    values = [v for v in range(-cfg.limit, cfg.limit + 1) if squarefree(v)]
    split_count = 0
    print(f"{'a':>4}{'b':>4}  split  symbols (place:value)          witness / obstruction")
    for a in values:
        for b in values:
            split = quaternion_is_split(a, b)
            split_count += split
            symbols = " ".join(f"{v}:{hilbert_symbol(-a, -b, v):+d}" for v in relevant_places(-a, -b))
            res = isotropic_vector(norm_form(a, b), cfg.bound)
            detail = str(res.witness) if res.isotropic else f"{res.status} at {res.obstruction}"
            print(f"{a:>4}{b:>4}  {str(split):<6} {symbols:<30} {detail}")
    print(f"\n{split_count} of {len(values) ** 2} pairs split")


if __name__ == "__main__":
    main()
