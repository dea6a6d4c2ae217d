"""Werner states under random global unitaries.

Runs the prediction checks over several seeds and tabulates the violation
threshold C_p, writing ``results/werner_unitary.json``.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from bellconc.cli import werner_unitary_report
from bellconc.werner import violation_threshold_c


@dataclass
class SweepConfig:
    trials: int = 200
    seeds: list[int] = field(default_factory=lambda: [7, 8, 9])
    threshold_points: int = 11
    out_dir: Path = Path("results")


def run(cfg: SweepConfig) -> dict:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    reports = [werner_unitary_report(cfg.trials, s, identity=False) for s in cfg.seeds]
    ps = np.linspace(1 / np.sqrt(2) + 1e-3, 1.0, cfg.threshold_points)
    out = {
        "config": {**asdict(cfg), "out_dir": str(cfg.out_dir)},
        "reports": reports,
        "threshold": [{"p": float(p), "c_p": violation_threshold_c(float(p))} for p in ps],
    }
    (cfg.out_dir / "werner_unitary.json").write_text(json.dumps(out, indent=2) + "\n")
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=SweepConfig.trials)
    ap.add_argument("--seeds", type=lambda s: [int(x) for x in s.split(",")], default=[7, 8, 9])
    ap.add_argument("--out-dir", type=Path, default=SweepConfig.out_dir)
    args = ap.parse_args()
    out = run(SweepConfig(args.trials, args.seeds, out_dir=args.out_dir))
    for rep in out["reports"]:
        worst = max(rep["max_deviation"].items(), key=lambda kv: kv[1])
        print(f"seed {rep['seed']}: {'PASS' if rep['passed'] else 'FAIL'}, worst {worst[0]} = {worst[1]:.2e}")
    for row in out["threshold"][:: max(1, len(out["threshold"]) // 4)]:
        print(f"p = {row['p']:.3f}: C_p = {row['c_p']:.4f}")


if __name__ == "__main__":
    main()
