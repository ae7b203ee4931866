#!/usr/bin/env python3
"""
Run every SuperWeight job spec (*.json) in a folder and write one JSON result
per spec.

The command is picked from the spec: "queries" or "weight" runs `char`,
"order_ideal" runs `coeffs`, anything else runs `degree`.

Usage:
  python batch_char_tables.py <job_folder> [result_folder] [--workers 4] [--no-cache] [--overwrite]

Examples:
  python batch_char_tables.py jobs
  python batch_char_tables.py jobs results --workers 4 --overwrite
"""

import argparse
import json
import sys
from pathlib import Path

from SuperWeight import cli


def command_for(job_file: Path) -> list:
    """Subcommand and flags for one job spec."""
    try:
        data = json.loads(job_file.read_text())
    except (OSError, json.JSONDecodeError):
        return ["degree"]
    if "queries" in data or "weight" in data:
        return ["char"]
    if "order_ideal" in data:
        return ["coeffs"]
    return ["degree"]


# ---------------------------------------------------------------------------
# batch
# ---------------------------------------------------------------------------

def run_folder(
    job_folder: Path,
    result_folder: Path,
    workers: int = 1,
    use_cache: bool = True,
    overwrite: bool = False,
) -> dict:
    """Run each job in *job_folder*; returns {job name: exit code} for the jobs that ran."""
    jobs = sorted(job_folder.glob("*.json"))
    if not jobs:
        print(f"No job specs found in: {job_folder}")
        return {}

    result_folder.mkdir(parents=True, exist_ok=True)
    codes = {}
    success, skipped, failed = 0, 0, 0

    for job in jobs:
        out = result_folder / (job.stem + ".result.json")
        if out.exists() and not overwrite:
            print(f"  [skip]    {job.name}  →  result already exists")
            skipped += 1
            continue

        argv = command_for(job) + ["--spec", str(job), "--out", str(out)]
        if argv[0] == "char":
            argv += ["--workers", str(workers)]
        if not use_cache:
            argv.append("--no-cache")

        print(f"  [{argv[0]}]  {job.name}  →  {out.name} ...", flush=True)
        code = cli.run(argv)
        codes[job.name] = code
        if code == 0:
            success += 1
        else:
            failed += 1

    print(f"\nJobs: {success} done, {skipped} skipped, {failed} failed.")
    return codes


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def main():
    parser = argparse.ArgumentParser(description="Run a folder of SuperWeight job specs.")
    parser.add_argument("job_folder", type=Path, help="Folder containing *.json job specs.")
    parser.add_argument(
        "result_folder",
        nargs="?",
        type=Path,
        default=None,
        help="Output folder for results (default: <job_folder>/results).",
    )
    parser.add_argument("--workers", type=int, default=1, help="Threads per char job (default: 1).")
    parser.add_argument("--no-cache", action="store_true", help="Bypass the result cache.")
    parser.add_argument(
        "--overwrite",
        action="store_true",
        help="Recompute results even if they already exist.",
    )
    args = parser.parse_args()

    job_folder = args.job_folder.resolve()
    if not job_folder.is_dir():
        sys.exit(f"Input path is not a directory: {job_folder}")
    result_folder = (args.result_folder or job_folder / "results").resolve()

    print(f"Jobs    : {job_folder}")
    print(f"Results : {result_folder}")
    print()

    codes = run_folder(job_folder, result_folder, args.workers, not args.no_cache, args.overwrite)
    sys.exit(1 if any(codes.values()) else 0)


if __name__ == "__main__":
    main()
