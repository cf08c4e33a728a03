#!/usr/bin/env python3
"""CLI contract checks: schema validity, exit codes, stderr hygiene, determinism."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BIN = sys.argv[1]
SCHEMA = json.loads(Path(sys.argv[2]).read_text())
validator = jsonschema.Draft202012Validator(SCHEMA)
failures = []


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def expect(name, cond, info=""):
    print(("PASS " if cond else "FAIL ") + name + (f" ({info})" if info and not cond else ""))
    if not cond:
        failures.append(name)


def stderr_clean(p):
    return not p.stderr.lstrip().startswith("{") and '"manifest"' not in p.stderr


def check_report(name, args, code=0):
    p = run(*args)
    expect(name + " exit", p.returncode == code, f"rc={p.returncode} stderr={p.stderr[:300]}")
    expect(name + " stderr has no JSON", stderr_clean(p))
    if p.returncode in (0, 2) and p.stdout:
        doc = json.loads(p.stdout)
        errors = sorted(validator.iter_errors(doc), key=str)
        expect(name + " schema", not errors, errors[0].message if errors else "")
        return doc
    return None


doc = check_report("eta", ["eta", "--Q", "3", "--tol", "1e-9"])
expect("eta value", abs(doc["result"]["value"] - 0.5601260779279) < 1e-9)
expect("eta timestamps", "started_at" in doc["manifest"] and "runtime_ms" in doc["manifest"])

doc = check_report("density", ["density", "--l", "3", "--cond", "X-a:1"])
expect("density eta factors", doc["result"]["eta_factors"] == [3])
doc = check_report("density m=0", ["density", "--l", "3", "--cond", "X-a:0", "--a", "1"])
expect("density m=0 rational", doc["result"]["rational"] == "1/1")

doc = check_report("measure", ["measure", "--ring", "X:2", "--l", "3", "--type", "[[1,1]]"])
expect("measure mu", doc["result"]["mu"]["rational"] == "1/48")
doc = check_report("measure json ring", ["measure", "--ring", '{"l":3,"factors":[{"p":"X","e":2}]}', "--type", "[[2]]"])
expect("measure mu (2)", doc["result"]["mu"]["rational"] == "1/4")

doc = check_report("rank-dist", ["rank-dist", "--l", "3", "--e", "2", "--m", "0", "--m-max", "6"])
expect("rank-dist forms agree", doc["result"]["all_equal"])
doc = check_report("moments", ["moments", "--l", "3", "--e", "2", "--k", "2", "--brute-force"])
expect("moments brute", doc["result"]["equal"])

with tempfile.TemporaryDirectory() as tmp:
    csv = Path(tmp) / "c.csv"
    doc = check_report("simulate cokernel", ["simulate", "cokernel", "--ring", "X:2", "--l", "3", "--n", "4",
                                             "--trials", "2000", "--seed", "42", "--emit-csv", str(csv)])
    expect("cokernel csv header", csv.read_text().startswith("type,count,empirical,theoretical"))
    a = run("simulate", "cokernel", "--ring", "X:2", "--l", "3", "--n", "4", "--trials", "2000", "--seed", "42",
            "--workers", "3", "--reproducible")
    b = run("simulate", "cokernel", "--ring", "X:2", "--l", "3", "--n", "4", "--trials", "2000", "--seed", "42",
            "--reproducible")
    ra, rb = json.loads(a.stdout), json.loads(b.stdout)
    expect("cokernel worker invariance", ra["result"] == rb["result"])
    check_report("simulate cokernel exhaustive", ["simulate", "cokernel", "--ring", "X:1", "--l", "3", "--n", "2",
                                                  "--exhaustive"])

    csv = Path(tmp) / "curves.csv"
    doc = check_report("simulate curves", ["simulate", "curves", "--l", "3", "--q", "7", "--g", "2", "--cond", "X+1:0",
                                           "--cond", "X^2+1:0", "--trials", "300", "--seed", "7",
                                           "--emit-csv", str(csv)])
    expect("curves independence present", "independence" in doc["result"])
    expect("curves csv rows", len(csv.read_text().splitlines()) == 301)
    expect("curves hypotheses", doc["manifest"]["hypotheses"]["l_not_dividing_P_of_q"] is True)

check_report("gate violation", ["simulate", "curves", "--l", "3", "--q", "7", "--g", "1", "--cond", "X-1:0"], code=1)
check_report("bad polynomial", ["density", "--l", "3", "--cond", "X^^2:1"], code=1)
check_report("unknown flag", ["eta", "--Q", "3", "--bogus"], code=1)
check_report("unknown subcommand", ["frobnicate"], code=1)
check_report("reducible ring factor", ["measure", "--ring", "X^2-1:1", "--l", "3", "--type", "[[1]]"], code=1)

first = run("verify", "--suite", "curves-small", "--seed", "7", "--reproducible")
second = run("verify", "--suite", "curves-small", "--seed", "7", "--reproducible")
expect("curves-small exit", first.returncode == 0, first.stderr)
expect("curves-small byte-identical", first.stdout == second.stdout and len(first.stdout) > 0)
expect("curves-small schema", not list(validator.iter_errors(json.loads(first.stdout))))

tampered = check_report("tampered exact suite", ["verify", "--suite", "exact", "--tamper", "aut_order",
                                                 "--reproducible"], code=2)
names = [c["name"] for c in tampered["result"]["checks"] if not c["pass"]]
expect("tamper caught by brute force", names == ["aut_order_vs_bruteforce"], str(names))
expect("tamper named on stderr", "aut_order_vs_bruteforce" in run("verify", "--suite", "exact", "--tamper",
                                                                   "aut_order").stderr)

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
