"""Runtime of both engines on planted instances of growing size.

Prints the bench CSV plus the time ratio between consecutive sizes, which
should stay near the size ratio for a linear-time pipeline.

    python3 scripts/scaling.py --sizes 25000,50000,100000,200000 --repeats 5
"""

from __future__ import annotations

import argparse

from popmatch.bench import run_bench


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="25000,50000,100000,200000")
    ap.add_argument("--list-len", type=int, default=5)
    ap.add_argument("--categories", type=int, default=3)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    last: dict[str, float] = {}
    print("n,m,engine,millis,ratio_to_previous")
    for row in run_bench(sizes, args.seed, args.list_len, args.categories,
                         repeats=args.repeats):
        prev = last.get(row.engine)
        ratio = "" if prev is None else f"{row.millis / prev:.2f}"
        last[row.engine] = row.millis
        print(f"{row.csv()},{ratio}", flush=True)


if __name__ == "__main__":
    main()
