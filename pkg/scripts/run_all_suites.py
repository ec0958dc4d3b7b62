"""Run every suite on the default configuration and print a one-line summary per suite.

    python scripts/run_all_suites.py [--config scripts/default_config.json] [--out report.json]
"""
import argparse
import json
from pathlib import Path

from appellsys.cli import load_config, run_suites
from appellsys.suites import SUITES

ap = argparse.ArgumentParser()
ap.add_argument("--config", default=str(Path(__file__).with_name("default_config.json")))
ap.add_argument("--out", default=None)
args = ap.parse_args()

report = run_suites(load_config(args.config), list(SUITES), timings=True)
for s in report["suites"]:
    worst = max(s["cases"], key=lambda c: c["residual"] / c["tolerance"] if c["tolerance"] else 0.0)
    print(f"{s['suite']:<18} {'ok  ' if s['pass'] else 'FAIL'} {len(s['cases']):3d} cases  {s['seconds']:6.2f}s"
          f"  tightest: {worst['name']} {worst['residual']:.1e}/{worst['tolerance']:.0e}")
if args.out:
    Path(args.out).write_text(json.dumps(report, indent=2) + "\n")
raise SystemExit(0 if report["pass"] else 1)
