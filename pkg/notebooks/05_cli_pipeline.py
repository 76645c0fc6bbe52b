# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # The command line
#
# Every stage reads and writes plain text, so the pipeline composes with
# pipes. Here it is driven from Python.

import subprocess
import sys
import tempfile
from pathlib import Path


def rp(*args, stdin=""):
    proc = subprocess.run([sys.executable, "-m", "rainbowpack", *args], input=stdin,
                          capture_output=True, text=True)
    print(f"$ rainbowpack {' '.join(args)}  -> exit {proc.returncode}")
    return proc.stdout


work = Path(tempfile.mkdtemp())
nae = rp("gen", "nae", "--n", "3", "--seed", "1")
print(nae)

ecg = rp("reduce", "nae2rst", "--map-out", str(work / "nae.map"), stdin=nae)
(work / "g.ecg").write_text(ecg)
print(ecg.splitlines()[0])

cert = rp("solve", "rst", "--k", "2", str(work / "g.ecg"))
(work / "p.txt").write_text(cert)
print(rp("verify", "rst", str(work / "g.ecg"), str(work / "p.txt"), "--partition"))

# Map the packing back to a truth assignment.

print(rp("map", "p2a", "--map", str(work / "nae.map"), str(work / "p.txt")))

# The matroid self-checks.

print(rp("check", "axioms", "--count", "20"))
print(rp("check", "bounds", "--count", "20"))
