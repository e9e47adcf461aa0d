"""End-to-end checks of the chebdyn CLI: schema, determinism, exit codes."""
import csv
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

CLI = sys.argv[1]
SCHEMA = json.loads(Path(sys.argv[2]).read_text())
failures = []


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=600)


def report(*args, code=0):
    p = run(*args)
    if p.returncode != code:
        failures.append(f"{args}: exit {p.returncode}, wanted {code}; stderr={p.stderr.strip()}")
        return None
    doc = json.loads(p.stdout)
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as e:
        failures.append(f"{args}: schema: {e.message}")
    return doc


def expect(cond, what):
    if not cond:
        failures.append(what)


doc = report("orbit", "--N", "7")
expect(doc and doc["results"]["minpoly"] == [-1, -2, 1, 1], "orbit 7 minpoly")
expect(doc and doc["results"]["size"] == 3, "orbit 7 size")

doc = report("sintegral", "--beta", "3", "--N", "5", "--S", "inf,11")
expect(doc and doc["results"]["isSIntegral"] is True, "sintegral verdict")
expect(doc and doc["results"]["meetingPrimes"] == {"11": 1}, "sintegral meeting primes")
doc = report("sintegral", "--beta", "3", "--N", "5", "--S", "inf")
expect(doc and doc["results"]["isSIntegral"] is False and doc["results"]["witness"] == "11", "witness 11")

doc = report("cheb", "--n", "6", "--x", "5")
expect(doc and doc["results"]["value"] == "12098", "T_6(5)")

doc = report("height", "--beta", "poly:-1,1,1")
expect(doc and abs(doc["results"]["weilHeight"]["value"] - 0.2406059125) < 1e-9, "golden height")

doc = report("canonical-height", "--beta", "3")
expect(doc and abs(doc["results"]["canonicalHeight"]["value"] - 0.9624236501192069) < 1e-9, "h_phi(3)")

doc = report("scan", "--beta", "3", "--S", "inf,2,3,5,11", "--Nmax", "100")
expect(doc and [o["N"] for o in doc["results"]["sIntegralOrbits"]] == [1, 2, 3, 4, 5, 6, 10, 12], "scan list")

# Determinism and CSV output.
with tempfile.TemporaryDirectory() as tmp:
    outs = []
    for i in range(2):
        js, cs = Path(tmp, f"e{i}.json"), Path(tmp, f"e{i}.csv")
        p = run("equidist", "--beta", "3", "--Nmin", "100", "--Nmax", "600", "--prime-only",
                "--output", str(js), "--csv", str(cs))
        expect(p.returncode == 0, f"equidist exit {p.returncode}")
        outs.append((js.read_text(), cs.read_text()))
    expect(outs[0] == outs[1], "equidist output not deterministic")
    rows = list(csv.DictReader(outs[0][1].splitlines()))
    expect(rows and list(rows[0]) == ["N", "size", "orbit_average", "integral", "discrepancy", "bound_rhs"],
           "equidist csv header")
    jsonschema.validate(json.loads(outs[0][0]), SCHEMA)
    a = run("theorem2", "--trials", "4", "--Nmax", "200", "--seed", "5")
    b = run("theorem2", "--trials", "4", "--Nmax", "200", "--seed", "5")
    expect(a.returncode == 0 and a.stdout == b.stdout, "theorem2 not deterministic")

# A failed check exits with 2 and still writes a valid report.
doc = report("baker", "--beta", "1/2", "--proximity", "--Nmax", "100", code=2)
expect(doc and doc["results"]["violations"] == 2, "proximity counterexample count")
doc = report("cor33", "--beta", "3", "--p", "2", "--Nmax", "500", code=2)
expect(doc and doc["results"]["flaggedPoints"] == 2, "cor33 flagged points")
doc = report("baker", "--beta", "poly:5,-6,5@1", "--Nmax", "10000", "--eps", "0.1")
expect(doc and abs(doc["results"]["theta0"] - 0.1475836177) < 1e-9, "theta0")

# Usage and input errors exit with 1.
for args in (["orbit"], ["nosuch"], ["sintegral", "--beta", "x", "--N", "3"],
             ["scan", "--beta", "1", "--Nmax", "10"], ["height", "--beta", "poly:-1,0,1"],
             ["sintegral", "--beta", "3", "--N", "5", "--S", "2"], ["cor33", "--beta", "3", "--p", "4"],
             ["baker", "--beta", "poly:1,0,1"]):
    p = run(*args)
    expect(p.returncode == 1, f"{args}: exit {p.returncode}, wanted 1")
expect(run("--help").returncode == 0, "--help exit code")

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
