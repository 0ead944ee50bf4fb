"""Compare both solvers with the brute-force oracle on random small instances.

    python3 scripts/oracle_sweep.py --count 5000 --tie-prob 0.3 --seed 1
"""

from __future__ import annotations

import argparse
import random
import time

from popmatch.core import NoPopularMatching
from popmatch.generate import GenParams, generate
from popmatch.oracle import all_popular, is_popular
from popmatch.strict import solve_strict
from popmatch.ties import solve_ties, solve_ties_max_cardinality


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--max-applicants", type=int, default=5)
    ap.add_argument("--max-jobs", type=int, default=5)
    ap.add_argument("--max-categories", type=int, default=3)
    ap.add_argument("--tie-prob", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    stats = dict(instances=0, negative=0, disagree=0, max_card_wrong=0)
    start = time.perf_counter()
    for _ in range(args.count):
        k = rng.randint(1, args.max_categories)
        params = GenParams(rng.randint(1, args.max_applicants), rng.randint(1, args.max_jobs),
                           args.max_jobs, args.tie_prob, k, rng.randrange(2**31),
                           tuple(sorted(rng.sample(range(1, 13), k))), min_list_len=0)
        inst = generate(params)
        popular = all_popular(inst)
        engines = [solve_ties] + ([solve_strict] if inst.is_strict else [])
        stats["instances"] += 1
        stats["negative"] += not popular
        for solve in engines:
            result = solve(inst)
            if isinstance(result, NoPopularMatching) != (not popular) or (
                    popular and not is_popular(result, inst).popular):
                stats["disagree"] += 1
                print("disagreement:", solve.__name__, params)
        if popular:
            best = min(m.last_resort_count for m in popular)
            result = solve_ties_max_cardinality(inst)
            stats["max_card_wrong"] += result.last_resort_count != best
    stats["seconds"] = round(time.perf_counter() - start, 1)
    print(" ".join(f"{k}={v}" for k, v in stats.items()))


if __name__ == "__main__":
    main()
