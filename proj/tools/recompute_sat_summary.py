#!/usr/bin/env python3
"""Recompute sat_summary.csv from sat_trials.csv and compare."""

import csv
import statistics
import sys
from collections import OrderedDict


def recompute(trials_path, max_steps):
    per_agent = OrderedDict()
    with open(trials_path, newline="") as fh:
        for row in csv.DictReader(fh):
            inst = per_agent.setdefault(row["agent"], OrderedDict())
            inst.setdefault(row["instance_id"], []).append(int(row["steps"]))
    out = {}
    for agent, instances in per_agent.items():
        steps = [s for runs in instances.values() for s in runs]
        medians = [statistics.median(runs) for runs in instances.values()]
        solved = sum(1 for m in medians if m < max_steps)
        out[agent] = {
            "instances": len(instances),
            "trials": len(steps),
            "mean_steps": sum(steps) / len(steps),
            "median_of_medians": statistics.median(medians),
            "percent_solved": 100.0 * solved / len(instances),
        }
    return out


def main(argv):
    if len(argv) != 4:
        print("usage: recompute_sat_summary.py TRIALS_CSV SUMMARY_CSV MAX_STEPS", file=sys.stderr)
        return 1
    expected = recompute(argv[1], int(argv[3]))
    failures = 0
    seen = set()
    with open(argv[2], newline="") as fh:
        for row in csv.DictReader(fh):
            agent = row["agent"]
            seen.add(agent)
            want = expected.get(agent)
            if want is None:
                print(f"{agent}: not present in trials")
                failures += 1
                continue
            for key, value in want.items():
                got = float(row[key])
                if abs(got - value) > 1e-9 * max(1.0, abs(value)):
                    print(f"{agent}.{key}: summary {got} != recomputed {value}")
                    failures += 1
    for agent in expected:
        if agent not in seen:
            print(f"{agent}: missing from summary")
            failures += 1
    print("recompute:", "ok" if failures == 0 else f"{failures} mismatches")
    return 0 if failures == 0 else 2


if __name__ == "__main__":
    sys.exit(main(sys.argv))
