"""
Driving the pq command line
===========================

The CLI wraps the library behind canonical JSON reports: sorted keys, no
floats, a fixed schema. Identical configurations produce byte-identical
reports, and computed results land in a content-addressed cache so reruns
are instant.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

tmp = Path(tempfile.mkdtemp(prefix="pq-demo-"))
cache = tmp / "cache"


def pq(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "pq.cli", *args, "--cache-dir", str(cache)],
        capture_output=True,
    )
    return proc.returncode, proc.stdout


# a golden value from the worked examples
rc, out = pq("verify", "euler", "--group", "Alt(6)", "--p", "3")
rep = json.loads(out)
print(f"verify euler Alt(6) p=3  -> exit {rc}, "
      f"chi = {rep['result']['chi']}, verdict {rep['verdict']}")

# poset and homology summaries share the same report schema
rc, out = pq("homology", "bouc", "--group", "Sym(6)", "--p", "2")
rep = json.loads(out)
print(f"homology bouc Sym(6) p=2 -> betti {rep['result']['betti']}")

# reports are canonical: running the same config twice gives the same bytes
rc1, out1 = pq("verify", "solomon-tits", "--group", "PSL(3,2)", "--p", "2")
rc2, out2 = pq("verify", "solomon-tits", "--group", "PSL(3,2)", "--p", "2")
print(f"cold/warm byte-identical: {out1 == out2}")
print(f"cache entries written: {len(list(cache.glob('*.json')))}")

# the catalog lists what is available, what is slow, and what is refused
rc, out = pq("list")
for entry in json.loads(out)["result"]["entries"]:
    mark = entry["status"]
    if entry.get("slow"):
        mark += ", slow"
    print(f"  {entry['spec']:28s} {mark}")

# bad input exits 2 instead of producing a report
rc, _ = pq("poset", "--group", "Sym(5)", "--p", "6")
print(f"composite p exits {rc}")
