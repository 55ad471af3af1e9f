"""Run every claim and print the report lines, then the JSON report."""
import json
import sys

from gogkit.cli import canonical
from gogkit.verify import run_suite

report = run_suite("paper")
for line in report.lines():
    print(line)
if "--json" in sys.argv:
    print(json.dumps(canonical(report.to_obj()), indent=2, sort_keys=True))
sys.exit(0 if report.ok else 3)
