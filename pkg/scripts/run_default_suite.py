"""Run every configured check and write one JSON report per check.

    python scripts/run_default_suite.py [--config configs/default.json] [--out results/] [--jobs N]
"""

import argparse
import json
import pathlib
import time

from siegelcong.checks import default_config, exit_code, load_config, run_suite
from siegelcong.report import to_text


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--config")
    ap.add_argument("--out", default="results")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--cache")
    args = ap.parse_args()

    config = load_config(args.config) if args.config else default_config()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    start = time.perf_counter()
    reports = run_suite(config, jobs=args.jobs, cache_dir=args.cache)
    for i, report in enumerate(reports):
        print(to_text(report))
        suffix = "-".join(f"{k}{v}" for k, v in sorted(report.params.items())
                          if not isinstance(v, list))
        (out / f"{i:02d}-{report.check}-{suffix}.json").write_text(
            json.dumps(report.to_dict(), indent=2) + "\n")
    print(f"{len(reports)} reports in {time.perf_counter() - start:.1f}s, written to {out}/")
    raise SystemExit(exit_code(reports))


if __name__ == "__main__":
    main()
