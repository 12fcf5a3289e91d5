#!/usr/bin/env python3
"""Drive the command line interface end to end from Python.

Writes two subspace files, runs validate, connect, distance, and sample as
subprocesses, and reads back the JSON and CSV artifacts. Every command is
deterministic: running the pipeline twice produces identical bytes.
"""

import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

SEED_ANGLE = 0.6


def run(argv):
    proc = subprocess.run([sys.executable, "-m", "lagrass.cli"] + argv,
                          capture_output=True, text=True)
    if proc.returncode != 0:
        raise SystemExit(f"command failed ({proc.returncode}): {proc.stderr}")
    return proc.stdout


def line_payload(theta):
    c = math.cos(2.0 * theta)
    s = math.sin(2.0 * theta)
    return {"dim": 2, "subspace": {"symmetry": [[c, s], [s, -c]]}}


with tempfile.TemporaryDirectory() as tmp:
    root = Path(tmp)
    first = root / "first.json"
    second = root / "second.json"
    first.write_text(json.dumps(line_payload(0.0)))
    second.write_text(json.dumps(line_payload(SEED_ANGLE)))

    print("validate the first input:")
    report = json.loads(run(["validate", str(first)]))
    print("  lagrangian:", report["lagrangian"],
          " subspace dimension:", report["subspace_dim"])

    print()
    print("connect the pair:")
    payload = json.loads(run(["connect", str(first), str(second)]))
    print("  generator:", payload["z"])
    print("  operator norm:", payload["norm_op"],
          " (the tilt angle", SEED_ANGLE, "returns)")

    print()
    print("distance and the sine identity:")
    dist = json.loads(run(["distance", str(first), str(second)]))
    print("  distance:", dist["distance"])
    print("  projection gap:", dist["projection_gap"])
    print("  sine residual:", dist["sin_norm_residual"])

    print()
    print("sample the curve to CSV:")
    out = json.loads(run(["sample", str(first), str(second),
                          "--grid", "9", "--out-prefix", str(root / "walk")]))
    for name in out["files"]:
        lines = Path(name).read_text().splitlines()
        print(f"  {Path(name).name}: {len(lines)} lines, header: {lines[1]}")

    print()
    print("rerunning connect gives byte-identical output:",
          run(["connect", str(first), str(second)])
          == run(["connect", str(first), str(second)]))
