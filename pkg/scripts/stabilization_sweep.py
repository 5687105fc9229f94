"""Smallest n at which the cleared finite-n identity matches its n -> oo form.

For each qmax, scan n upward and report the first n from which every larger
n up to the predicted threshold also agrees, next to the predicted n0.
"""
import argparse
import sys
from dataclasses import dataclass, field
from typing import List

from quintuple.identities import k_cut, stabilization_n0, verify


@dataclass
class SweepConfig:
    orders: List[int] = field(default_factory=lambda: list(range(0, 13, 2)))
    z_window: int = 12


def sweep(cfg: SweepConfig):
    for qmax in cfg.orders:
        n0 = stabilization_n0(qmax)
        status = [verify("stabilization", {"n": n, "z_window": cfg.z_window}, qmax).passed
                  for n in range(n0 + 1)]
        first = next(n for n in range(n0 + 1) if all(status[n:]))
        yield qmax, k_cut(qmax), n0, first


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--orders", type=int, nargs="+", default=SweepConfig().orders)
    p.add_argument("--z-window", type=int, dest="z_window", default=12)
    cfg = SweepConfig(**vars(p.parse_args(argv)))
    print("qmax  k_cut  predicted_n0  observed_first_n")
    ok = True
    for qmax, kc, n0, first in sweep(cfg):
        ok &= first <= n0
        print(f"{qmax:4d}  {kc:5d}  {n0:12d}  {first:16d}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
