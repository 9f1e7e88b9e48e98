"""Run the tropcram binary against the golden cases.

usage: cli_golden.py <tropcram> <golden dir> [--update]
"""
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path


def substitute(s, data, tmp):
    return s.replace("{data}", str(data)).replace("{tmp}", str(tmp))


def main():
    exe, golden = sys.argv[1], Path(sys.argv[2])
    update = "--update" in sys.argv[3:]
    data = golden.parent / "data"
    cases = json.loads((golden / "cases.json").read_text())
    failures = []
    with tempfile.TemporaryDirectory() as tmp:
        for case in cases:
            args = [substitute(a, data, tmp) for a in case["args"]]
            env = dict(os.environ)
            env.pop("TROPCRAM_CAP", None)
            env.update(case.get("env", {}))
            runs = [subprocess.run([exe, *args], capture_output=True, env=env) for _ in range(2)]
            out = runs[0].stdout
            problems = []
            if runs[0].returncode != case["exit"]:
                problems.append(f"exit {runs[0].returncode} != {case['exit']}")
            if runs[1].stdout != out or runs[1].returncode != runs[0].returncode:
                problems.append("output differs between runs")
            if case["exit"] != 0 and not update:
                try:
                    err = json.loads(out)["error"]
                    if case["exit"] == 1 and (err["kind"] != "domain" or not err.get("operation")):
                        problems.append("domain error without an operation")
                except (ValueError, KeyError):
                    problems.append("stdout is not an error object")
            if "stdout" in case:
                path = golden / case["stdout"]
                if update:
                    path.write_bytes(out)
                elif path.read_bytes() != out:
                    problems.append(f"stdout differs from {case['stdout']}")
            if "file" in case:
                produced = Path(substitute(case["file"]["path"], data, tmp)).read_bytes()
                path = golden / case["file"]["golden"]
                if update:
                    path.write_bytes(produced)
                elif path.read_bytes() != produced:
                    problems.append(f"file differs from {case['file']['golden']}")
            status = "ok" if not problems else "FAILED: " + "; ".join(problems)
            print(f"{case['name']}: {status}")
            if problems:
                failures.append(case["name"])
    print(f"{len(cases) - len(failures)}/{len(cases)} cases passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
