"""Runs the sumsetlab binary on a fixed set of invocations.

--mode schema       every report validates against schemas/report.schema.json
                    and the exit code matches the expected one
--mode determinism  each invocation run twice, and once through replay, gives
                    the same report apart from manifest.timestamp
"""

import argparse
import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def invocations(tmp):
    a = os.path.join(tmp, "A.json")
    b = os.path.join(tmp, "B.json")
    with open(a, "w") as f:
        json.dump([x for x in range(1, 101) if (x * 37) % 11 < 6], f)
    with open(b, "w") as f:
        json.dump([x for x in range(1, 101) if (x * 53) % 7 < 4], f)
    ff = os.path.join(tmp, "ff.json")
    with open(ff, "w") as f:
        json.dump({"group": "vec:2^3", "support": list(range(8))}, f)
    spec = os.path.join(tmp, "spec.json")
    with open(spec, "w") as f:
        json.dump({"pipeline": "almost-periods", "trials": 6, "seed": 5,
                   "generator": {"kind": "group", "group": "zN:61", "density": 0.5},
                   "params": {"eps": 0.4}}, f)
    small = "[1,2,3,4,5,6,7,8,9,10]"
    cyc = "[1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,30,40,50,60]"
    plot = os.path.join(tmp, "plot.svg")
    return [
        (["oracle", "longest-ap", "--set", "[1,3,5,7]"], 0),
        (["oracle", "longest-ap", "--group", "zN:10", "--set", "[0,3,6,9]"], 0),
        (["bounds", "--alpha", "0.5", "--beta", "0.5", "--N", "1e20", "--c", "1"], 0),
        (["bounds", "--alpha", "0.1", "0.3", "--beta", "0.2", "--N", "1e50", "1e100", "--K_A", "3"], 0),
        (["fourier", "--group", "zN:12", "--A", "[0,1,5]", "--B", "[2,3]"], 0),
        (["fourier", "--group", "vec:2^3", "--values", "[1,0,0,2,0,0,1,0]"], 0),
        (["bohr", "--group", "zN:97", "--freqs", "[3,10]", "--delta", "0.8"], 0),
        (["bohr", "--group", "vec:2^5", "--freqs", "[[1,0,0,0,0]]", "--delta", "0.5"], 0),
        (["--seed", "3", "sample", "--group", "zN:64", "--A", "[1,2,3,9,20]", "--eps", "0.25"], 0),
        (["sample", "--trials", "20", "--group", "zN:64", "--A", "[1,2,3]", "--B", "[0,5]",
          "--mode", "physical", "--p", "4", "--eps", "0.4"], 0),
        (["embed", "--A", "[0,3,4,9]", "--B", "[1,2,8]"], 0),
        (["--seed", "7", "find-ap", "dense", "--N", "100", "--A", a, "--B", b], 0),
        (["find-ap", "doubling", "--A", small, "--B", small], 0),
        (["find-ap", "ff", "--A", ff, "--B", ff], 0),
        (["almost-periods", "--group", "zN:101", "--A", cyc, "--B", cyc, "--eps", "0.4"], 0),
        (["almost-periods", "--mode", "bootstrap", "--group", "zN:101", "--A", cyc, "--B", cyc], 0),
        (["bogolyubov", "--group", "zN:101", "--A", cyc], 0),
        (["oracle", "periods", "--group", "zN:7", "--A", "[0,1,2]", "--B", "[0,3]", "--reference", "energy"], 0),
        (["--constants", '{"C_sample":8}', "oracle", "longest-ap", "--set", "[2]"], 0),
        (["--constants", os.path.join(tmp, "missing.json"), "--defaults", "oracle", "longest-ap", "--set", "[2]"], 0),
        (["experiment", "--spec", spec, "--plot", plot], 0),
        (["experiment", "--spec", '{"pipeline":"dense","trials":0,"generator":{"kind":"interval","N":50}}'], 0),
        (["--constants", '{"C_sample":0}', "oracle", "longest-ap", "--set", "[2]"], 1),
        (["--constants", '{"C_bogus":1}', "oracle", "longest-ap", "--set", "[2]"], 1),
        (["--constants", os.path.join(tmp, "missing.json"), "oracle", "longest-ap", "--set", "[2]"], 1),
        (["find-ap", "dense", "--N", "100", "--A", "[1,2]"], 1),
        (["find-ap", "ff", "--group", "vec:2^3", "--A", "[0,1]", "--B", "[0]", "--group", "zN:5"], 1),
        (["oracle", "longest-ap", "--set", "[1,2,x]"], 1),
        (["no-such-command"], 1),
        (["experiment", "--spec", '{"pipeline":"dense","trails":0}'], 1),
        (["find-ap", "ff", "--group", "vec:2^3", "--A", "[0,1]", "--B", "[0,1]",
          "--variant", "subset", "--subset", "[[1,1,1]]"], None),
    ]


def run(binary, args):
    p = subprocess.run([binary, "--json-only"] + args, capture_output=True, text=True, timeout=600)
    try:
        report = json.loads(p.stdout)
    except json.JSONDecodeError as e:
        raise AssertionError(f"{args}: stdout is not JSON ({e}): {p.stdout[:200]!r}")
    return p.returncode, report


def strip(report):
    report = json.loads(json.dumps(report))
    if isinstance(report.get("manifest"), dict):
        report["manifest"].pop("timestamp", None)
    return report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--binary", required=True)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--mode", choices=["schema", "determinism"], required=True)
    opts = ap.parse_args()
    with open(opts.schema) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for args, expected in invocations(tmp):
            code, report = run(opts.binary, args)
            if opts.mode == "schema":
                errors = sorted(validator.iter_errors(report), key=lambda e: e.path)
                if errors:
                    failures += 1
                    print(f"FAIL schema {args}: {errors[0].message}")
                if expected is not None and code != expected:
                    failures += 1
                    print(f"FAIL exit {args}: got {code}, expected {expected}")
                if code == 0 and not report.get("verified"):
                    failures += 1
                    print(f"FAIL {args}: exit 0 but verified is false")
                if code == 2 and report.get("verified") and "error" not in report:
                    failures += 1
                    print(f"FAIL {args}: exit 2 but verified is true")
            else:
                code2, report2 = run(opts.binary, args)
                if code != code2 or strip(report) != strip(report2):
                    failures += 1
                    print(f"FAIL rerun {args}")
                if "manifest" in report:
                    path = os.path.join(tmp, "report.json")
                    with open(path, "w") as f:
                        json.dump(report, f)
                    code3, report3 = run(opts.binary, ["replay", "--manifest", path])
                    if code != code3 or strip(report) != strip(report3):
                        failures += 1
                        print(f"FAIL replay {args}")
            print(f"ok {opts.mode} exit={code} {' '.join(args)[:100]}")
        if opts.mode == "schema":
            plot = os.path.join(tmp, "plot.svg")
            if not os.path.exists(plot) or "<svg" not in open(plot).read():
                failures += 1
                print("FAIL experiment plot was not written")
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
