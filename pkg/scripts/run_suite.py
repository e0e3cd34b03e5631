"""Run the theorem suite and write its CSV report plus a JSON summary.

    python3 scripts/run_suite.py --out results/ --threads 4
"""

import argparse
import json
from pathlib import Path

from cayley_sidorenko.cli import main as cli_main
from cayley_sidorenko.suite import run_suite, summarize


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--out", default="results")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--trees", action="store_true")
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    name = "suite_trees" if args.trees else "suite"
    argv = ["suite", "--threads", str(args.threads), "--output", str((out / f"{name}.csv").resolve())]
    code = cli_main(argv + (["--trees"] if args.trees else []))
    summary = summarize(run_suite(trees=args.trees, threads=args.threads))
    (out / f"{name}_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(json.dumps(summary))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
