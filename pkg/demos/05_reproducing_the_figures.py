"""End-to-end figure reproduction walkthrough.

The CLI presets bundle the three reference sweeps; this script runs a scaled
down figure-5 preset through the same code path the CLI uses, writes the CSV,
and points at the plotting frontend for rendering. Swap in the commented
commands for the full-scale runs.
"""

import subprocess
import sys

cmd = [
    sys.executable, "-m", "compnoma.cli", "figure5",
    "--iterations", "10",
    "--threads", "4",
    # '=' keeps argparse from reading the leading '-10' as a flag
    "--comp-threshold-db=-10,-8,-6,-4,-2,0",
    "--out", "demo_figure5.csv",
    "--quiet",
]
print("running:", " ".join(cmd[2:]))
subprocess.run(cmd, check=True)

print("\nwrote demo_figure5.csv + demo_figure5.manifest.json + demo_figure5.log")
print("full-scale equivalents:")
print("  compnoma figure3 --threads 8 --out figure3.csv")
print("  compnoma figure4 --threads 8 --out figure4.csv")
print("  compnoma figure5 --threads 8 --out figure5.csv")
print("render with the frontend:")
print("  node frontend/dist/main.js --csv demo_figure5.csv --figure 5 --out figure5.svg")

with open("demo_figure5.csv") as fh:
    lines = fh.read().strip().split("\n")
print(f"\nCSV has {len(lines) - 1} rows; first three:")
for line in lines[:4]:
    print(" ", line)
