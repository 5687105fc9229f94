"""Run the whole catalog at several orders and record timings as JSON lines."""
import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import List

from quintuple.identities import verify_all


@dataclass
class CatalogConfig:
    orders: List[int] = field(default_factory=lambda: [8, 16, 24])
    jobs: int = 1
    output: str = "-"


def run(cfg: CatalogConfig):
    rows = []
    for order in cfg.orders:
        start = time.perf_counter()
        reports = verify_all(order, jobs=cfg.jobs)
        rows.append({"order": order, "seconds": round(time.perf_counter() - start, 3),
                     "passed": sum(r.passed for r in reports), "total": len(reports),
                     "failures": [r.to_dict() for r in reports if not r.passed]})
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--orders", type=int, nargs="+", default=CatalogConfig().orders)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default="-")
    cfg = CatalogConfig(**vars(p.parse_args(argv)))
    rows = run(cfg)
    out = sys.stdout if cfg.output == "-" else open(cfg.output, "w")
    out.write(json.dumps({"config": asdict(cfg)}) + "\n")
    for row in rows:
        out.write(json.dumps(row) + "\n")
    return 0 if all(r["passed"] == r["total"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
