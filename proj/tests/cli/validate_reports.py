"""Runs growthcertify over spec files and checks every report against the
published schema, plus exit-code consistency."""

import glob
import json
import os
import subprocess
import sys

import jsonschema


def run(cli, args):
    proc = subprocess.run([cli, "--compact", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def main():
    cli, schema_path, *spec_dirs = sys.argv[1:]
    with open(schema_path) as f:
        validator = jsonschema.Draft202012Validator(json.load(f))
    specs = sorted(p for d in spec_dirs for p in glob.glob(os.path.join(d, "*.json")))
    failures = []
    checked = 0

    def check(args, allowed):
        nonlocal checked
        code, out, err = run(cli, args)
        checked += 1
        if code not in allowed:
            failures.append(f"{' '.join(args)}: exit {code}: {err.strip()}")
            return None
        report = json.loads(out)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for e in errors[:3]:
            failures.append(f"{' '.join(args)}: {list(e.path)}: {e.message}")
        return report

    for spec in specs:
        report = check(["certify", spec], {0, 10})
        if report is not None:
            kind = report["result"]["verdict"]["kind"]
            code = run(cli, ["certify", spec])[0]
            if (kind == "FreeBasis") != (code == 0):
                failures.append(f"certify {spec}: exit {code} with {kind}")
        check(["growth", spec, "--radius", "3", "--certify"], {0, 11})
        check(["growth", spec, "--radius", "6", "--cap", "40"], {0, 11})
    check(["fold", "--rank", "2", "abAB", "a"], {0})
    check(["fold", "--rank", "3"], {0})
    check(["law", "compose", "[x1,x2]", "x1^2"], {0})
    check(["law", "eval", "[x1,x2]", "--rank", "2", "a", "b"], {0})
    check(["law", "eval", "[x1,x2]", "--perms", "1,0,2", "1,2,0"], {0})
    check(["law", "check", "[x1^2,x2^2]", "--perms", "1,0,2", "1,2,0"], {0})
    check(["law", "check", "[x1,x2]", "--perms", "1,0,2", "1,2,0"], {12})

    for f in failures:
        print(f)
    print(f"{checked} reports checked from {len(specs)} spec files, {len(failures)} failures")
    return 1 if failures or not specs else 0


if __name__ == "__main__":
    sys.exit(main())
