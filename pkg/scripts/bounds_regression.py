#!/usr/bin/env python3
"""Run the bound displays over the whole harmonic catalog and tally rows.

Each catalog entry is paired with the least K for which it is
K-quasiregular (dilatation sups worked out from the coefficients), so any
violated row signals a defect in the displays, not in the data.  Reports
are driven through the CLI so this exercises the same path users hit.

    python3 scripts/bounds_regression.py [--n-max 8] [--keep DIR]
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

from diskmaps import cli

# (label, cli fragment, least K): conformal entries have K = 1; for
# z + 0.3 zbar^2 the dilatation sup is 0.6 so K = 1.6/0.4; for
# z + 0.1 z^3 + 0.25 zbar^2 it is (0.5)/(0.7) at z = +-i so K = 6;
# constant mu = 0.5 gives K = 1.5/0.5.
CASES = [
    ("identity", ["--catalog", "identity"], 1.0),
    ("scale(1.5)", ["--catalog", "scale", "--param", "c=1.5"], 1.0),
    ("moebius(0.5)", ["--catalog", "moebius", "--param", "a=0.5"], 1.0),
    ("moebius(0.3+0.2i, t=0.7)",
     ["--catalog", "moebius", "--param", "a=0.3+0.2j", "--param", "t=0.7"], 1.0),
    ("z + 0.3 zbar^2",
     ["--catalog", "polyharmonic", "--param", "a=0,1", "--param", "b=0,0,0.3"], 4.0),
    ("z + 0.1 z^3 + 0.25 zbar^2",
     ["--catalog", "polyharmonic", "--param", "a=0,1,0,0.1",
      "--param", "b=0,0,0.25"], 6.0),
    ("kalaj(R=1, mu=0)",
     ["--catalog", "kalaj_extremal", "--param", "R=1.0", "--param", "mu=0.0",
      "--param", "series_degree=12"], 1.0),
    ("kalaj(R=1, mu=0.5)",
     ["--catalog", "kalaj_extremal", "--param", "R=1.0", "--param", "mu=0.5",
      "--param", "series_degree=24"], 3.0),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--keep", help="directory to keep the per-map JSON reports")
    args = ap.parse_args()

    out_dir = Path(args.keep) if args.keep else Path(tempfile.mkdtemp())
    out_dir.mkdir(parents=True, exist_ok=True)

    total_violated = 0
    print(f"{'map':<28} {'exit':>4} {'holds':>6} {'indet':>6} "
          f"{'violated':>8}  worst margin")
    for label, fragment, K in CASES:
        out = out_dir / (label.replace(" ", "_").replace("/", "-") + ".json")
        code = cli.main(["bounds", *fragment, "--K", repr(K),
                         "--n-max", str(args.n_max), "--out", str(out)])
        doc = json.loads(out.read_text())
        counts = {"holds": 0, "indeterminate": 0, "violated": 0}
        for row in doc["reports"]:
            counts[row["status"]] += 1
        total_violated += counts["violated"] + (code != 0)
        worst = doc["summary"]["worst_margin"]
        print(f"{label:<28} {code:>4} {counts['holds']:>6} "
              f"{counts['indeterminate']:>6} {counts['violated']:>8}  {worst!r}")

    if args.keep:
        print(f"reports kept in {out_dir}")
    if total_violated:
        print(f"{total_violated} violation(s)", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
