"""Time band certification and disjointness decisions by dimension.

    python scripts/bench_certificates.py --per-dim 10 --probes 64
"""

import argparse
import statistics
import time

from ordercone.band import certify_projection_band
from ordercone.genlab import derive_seed, gen_direct_sum, gen_positive_vector
from ordercone.order import is_disjoint


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dims", default="2,3,4,5,6")
    ap.add_argument("--per-dim", type=int, default=10)
    ap.add_argument("--probes", type=int, default=64)
    args = ap.parse_args()
    print(f"{'dim':>3} {'cert mean s':>12} {'cert max s':>11} {'disjoint ms':>12} {'valid':>6}")
    for n in map(int, args.dims.split(",")):
        cert_times, dis_times, valid = [], [], 0
        for i in range(args.per_dim):
            seed = derive_seed("bench", n, i)
            n1 = 1 + seed % (n - 1)
            inst = gen_direct_sum(n1, n - n1, seed)
            t0 = time.perf_counter()
            cert = certify_projection_band(inst.cone, inst.projection, probes=args.probes, seed=seed)
            cert_times.append(time.perf_counter() - t0)
            valid += cert.valid
            x, y = gen_positive_vector(inst.cone, seed + 1), gen_positive_vector(inst.cone, seed + 2)
            t0 = time.perf_counter()
            is_disjoint(inst.cone, x, y)
            dis_times.append(1000 * (time.perf_counter() - t0))
        print(f"{n:>3} {statistics.mean(cert_times):>12.3f} {max(cert_times):>11.3f} "
              f"{statistics.mean(dis_times):>12.2f} {valid:>3}/{args.per_dim}")


if __name__ == "__main__":
    main()
