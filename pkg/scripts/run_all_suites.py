"""Run every verification suite and write one JSON report per suite plus a summary line each."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from ponderation import verification


@dataclass
class Config:
    seed: int = 1
    workers: int = 1
    out_dir: Path = Path("results/suites")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--workers", type=int, default=Config.workers)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    cfg = Config(**vars(ap.parse_args()))
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    reports = verification.run_all(cfg.seed, workers=cfg.workers)
    for rep in reports:
        data = rep.to_json()
        data.pop("wall_time")
        (cfg.out_dir / f"{rep.name}.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        status = {True: "PASS", False: "FAIL", None: "REPORT"}[rep.passed]
        print(f"{status:6s} {rep.name:28s} cases={rep.cases:4d} failures={len(rep.failures)} "
              f"time={rep.wall_time:.2f}s")
    return 1 if any(r.passed is False for r in reports) else 0


if __name__ == "__main__":
    raise SystemExit(main())
