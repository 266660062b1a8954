"""Run the verification suite and summarize it by check family.

Writes the same JSON report as ``likeiper verify`` and then groups the
results by the prefix of their check id.

    python3 demos/verification_report.py [N] [out.json]
"""
import re
import sys
from collections import Counter

from likeiper import PrecisionContext, run_suite
from likeiper.cli import RunConfig, report_to_json

N = int(sys.argv[1]) if len(sys.argv) > 1 else 10
out = sys.argv[2] if len(sys.argv) > 2 else None

ctx = PrecisionContext.for_range(N)
results = run_suite(N, ctx)

families, failed = Counter(), []
for r in results:
    families[re.sub(r"_?[nmk]?\d+$|_[A-D]$", "", r.check_id)] += 1
    if not r.passed:
        failed.append(r.check_id)

for fam, count in sorted(families.items()):
    print(f"{fam:<40} {count:>4}")
print(f"\n{len(results)} checks, {len(failed)} failed {failed if failed else ''}")

if out:
    with open(out, "w") as fh:
        fh.write(report_to_json(RunConfig(command="verify", n_max=N, precision_bits=ctx.work_bits), results))
    print("report written to", out)
