"""How deep the stream sign detector must read before it decides, over
random finite-support streams."""

import argparse
import random
from collections import Counter

from semigrid.digits import LaurentDigits
from semigrid.omega import Decided, OmegaStream, omega_sign, omega_spec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", type=int, default=2)
    ap.add_argument("-n", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    spec = omega_spec(args.b)
    rng = random.Random(args.seed)
    B = spec.operand_bound
    extra = Counter()
    for _ in range(args.n):
        lo = rng.randint(-8, 0)
        p = LaurentDigits({k: rng.randint(-B, B) for k in range(lo, rng.randint(lo, 8) + 1)})
        v = omega_sign(spec, OmegaStream.of(p, depth=-100), exhaust=True)
        assert isinstance(v, Decided)
        extra[max(0, (p.lo if p else 0) - v.position)] += 1
    print(f"b={spec.b} d={spec.d} e={spec.e}")
    print("zeros read past the support : streams")
    for k in sorted(extra):
        print(f"{k:5d} : {extra[k]}")


if __name__ == "__main__":
    main()
