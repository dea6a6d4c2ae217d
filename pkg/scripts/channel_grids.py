"""Phase- and amplitude-damped Werner grids, closed form against direct evolution.

For each channel a (p, eps) grid is written to ``results/<kind>_grid.csv``; the
worst closed-form mismatch and the amplitude-damping boundary check go to
``results/channel_summary.json``.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass
from pathlib import Path

from bellconc.channels import ad_diagonal_boundary_excess
from bellconc.cli import CHANNEL_COLUMNS, channel_rows, fmt


@dataclass
class ChannelGridConfig:
    p_steps: int = 41
    eps_steps: int = 41
    boundary_steps: int = 201
    out_dir: Path = Path("results")


def run(cfg: ChannelGridConfig) -> dict:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    summary = {"config": {**asdict(cfg), "out_dir": str(cfg.out_dir)}}
    for kind in ("pd", "ad"):
        lines, worst = [",".join(CHANNEL_COLUMNS)], 0.0
        for p, eps, c_cl, n_cl, c_d, n_d in channel_rows(kind, cfg.p_steps, cfg.eps_steps):
            worst = max(worst, abs(c_cl - c_d), abs(n_cl - n_d))
            lines.append(",".join(fmt(v) for v in (p, eps, c_cl, n_cl, c_d, n_d)))
        (cfg.out_dir / f"{kind}_grid.csv").write_text("\n".join(lines) + "\n")
        summary[f"{kind}_max_closed_vs_direct"] = worst

    # does the p = eps slice bound the AD region from above?
    excess, p, eps = ad_diagonal_boundary_excess(steps=cfg.boundary_steps)
    summary["ad_boundary"] = {"max_excess_over_p_eq_eps": excess, "at_p": p, "at_eps": eps}
    (cfg.out_dir / "channel_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-steps", type=int, default=ChannelGridConfig.p_steps)
    ap.add_argument("--eps-steps", type=int, default=ChannelGridConfig.eps_steps)
    ap.add_argument("--boundary-steps", type=int, default=ChannelGridConfig.boundary_steps)
    ap.add_argument("--out-dir", type=Path, default=ChannelGridConfig.out_dir)
    args = ap.parse_args()
    s = run(ChannelGridConfig(args.p_steps, args.eps_steps, args.boundary_steps, args.out_dir))
    print(f"pd max |closed - direct| = {s['pd_max_closed_vs_direct']:.2e}")
    print(f"ad max |closed - direct| = {s['ad_max_closed_vs_direct']:.2e}")
    b = s["ad_boundary"]
    print(f"ad excess over p = eps curve: {b['max_excess_over_p_eq_eps']:.3f} at p = {b['at_p']:.3f}, eps = {b['at_eps']:.3f}")


if __name__ == "__main__":
    main()
