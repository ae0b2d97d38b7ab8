"""Runs every bscroll subcommand and validates its JSON output against the
shipped schema. Also checks that reruns are byte-identical and that the CSV
curve file is well formed.

usage: validate_reports.py BSCROLL SCHEMA
"""

import csv
import json
import pathlib
import subprocess
import sys

import jsonschema

RUNS = [
    ["surface", "--grid", "4x3", "--out", "schema_mesh"],
    ["surface", "--grid", "4x3", "--target", "nil3", "--out", "schema_mesh_nil3"],
    ["singular", "--h", "s + s^3", "--out", "schema_cubic"],
    ["singular", "--h", "tanh(s)", "--s-range", "-1:1"],
    ["singular", "--h", "s"],
    ["verify"],
    ["verify", "--h", "cot(exp(s)/2)", "--H", "-1"],
    ["verify", "--fd-tol", "1e-16"],
    ["frame", "--h", "s + s^3", "--grid", "5x2"],
    ["frame", "--kappa2", "sin(s)", "--s-range", "0:6.283185307179586", "--grid", "9x2"],
    ["frame", "--kappa1", "cos(s)", "--kappa2", "1", "--grid", "5x2"],
    ["family", "--h", "s + s^3", "--boost", "0.4"],
    ["family", "--h", "tanh(s)", "--find-notce", "--s", "0"],
]


def run(cli, args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode not in (0, 1):
        sys.exit(f"{args}: exit {proc.returncode}\n{proc.stderr}")
    return proc.stdout


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    for args in RUNS:
        out = run(cli, args)
        doc = json.loads(out)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            sys.exit(f"{args}: {errors[0].message}")
        if run(cli, args) != out:
            sys.exit(f"{args}: output is not deterministic")
        print("ok", " ".join(args))

    # the file written next to the CSV is the same report
    saved = json.loads(pathlib.Path("schema_cubic.json").read_text())
    validator.validate(saved)
    with open(saved["curve_csv_path"], newline="") as fh:
        rows = list(csv.reader(fh))
    if rows[0] != ["s", "t"] or len(rows) < 3:
        sys.exit("curve CSV header or length")
    for s, t in rows[1:]:
        float(s)
        if t:
            float(t)
    print("ok curve csv", len(rows) - 1, "rows")


if __name__ == "__main__":
    main()
