"""Run every property suite over the instance pool and write a JSON report."""
import argparse
import json
import sys
import time

from tanglekit.lab import run_suite, suite_ids


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--select", default="all", help="instance selector")
    ap.add_argument("--only", help="comma-separated suite ids or id prefixes")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", help="write all reports to this JSON file")
    args = ap.parse_args()

    ids = suite_ids()
    if args.only:
        prefixes = args.only.split(",")
        ids = [s for s in ids if s.startswith(tuple(prefixes))]
    reports, t0 = [], time.perf_counter()
    for sid in ids:
        rep = run_suite(sid, args.select, threads=args.threads)
        print(rep.summary(), flush=True)
        reports.append(rep.to_json())
    bad = [r["suite"] for r in reports if not r["ok"]]
    print(f"{len(ids)} suites in {time.perf_counter() - t0:.0f}s; failing: {', '.join(bad) or 'none'}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=1)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
