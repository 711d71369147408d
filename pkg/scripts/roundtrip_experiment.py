"""Round-trip random parameterizations through the plane and back.

For each sample: reconstruct a polyline, simplify it, extract again and
compare.  Reports mismatches, the final radius and timing per size.
"""

import argparse
import time
from collections import defaultdict

from tautknot.paramcode import extract, reconstruct
from tautknot.sampling import make_rng, random_sequence
from tautknot.tauten import simplify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", "--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--n-max", type=int, default=6)
    args = ap.parse_args()

    rng = make_rng(args.seed)
    stats = defaultdict(lambda: [0, 0, 0.0, 1.0])  # count, mismatches, seconds, smallest eps
    for _ in range(args.samples):
        seq = random_sequence(rng, n_max=args.n_max)
        t = time.perf_counter()
        simple = simplify(reconstruct(seq))
        got = extract(simple)
        row = stats[seq.n]
        row[0] += 1
        row[1] += got != seq
        row[2] += time.perf_counter() - t
        row[3] = min(row[3], simple.epsilon_final)
        if got != seq:
            print(f"mismatch: {seq} -> {got}")

    print(f"{'n':>3} {'count':>6} {'bad':>4} {'ms/each':>8} {'min eps':>9}")
    for n in sorted(stats):
        count, bad, secs, eps = stats[n]
        print(f"{n:>3} {count:>6} {bad:>4} {1000 * secs / count:>8.1f} {eps:>9.3g}")


if __name__ == "__main__":
    main()
