"""Replay S0..S5 and write the JSON report next to a printed table.

    python scripts/replay_chain.py [--out chain.json] [--tol-4d 1e-7]
"""
import argparse
from pathlib import Path

from ahmedquad import cli

parser = argparse.ArgumentParser()
parser.add_argument("--out", type=Path, default=None)
parser.add_argument("--tol-4d", type=float, default=None)
args = parser.parse_args()

report = cli.cmd_chain(args.tol_4d)
print(cli.render_text(report))
if args.out:
    args.out.write_text(cli.dumps(report) + "\n")
    print(f"wrote {args.out}")
