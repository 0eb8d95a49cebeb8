# # The command-line tool from Python
#
# `diskroute gen | build | route | verify` is also importable as `main`.
# This walks through one instance end to end in a temporary directory.

# +
import tempfile
from pathlib import Path

from diskroute.cli import main
from diskroute.report import rows_from_csv

d = Path(tempfile.mkdtemp())
inst, scheme, report = d / "grid.txt", d / "grid.json", d / "grid.csv"
main(["gen", "--generator", "grid", "--n", "100", "--seed", "3", "--out", str(inst)])
main(["build", str(inst), "--c", "13", "--out", str(scheme)])
main(["route", str(scheme), str(inst), "--pairs", "500", "--format", "csv", "--out", str(report)])
print(rows_from_csv(report.read_text())[0])

# +
code = main(["verify", str(inst), "--c", "13", "--pairs", "300", "--scheme", str(scheme)])
print("verify exit code", code)
