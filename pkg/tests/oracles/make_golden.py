"""Regenerate the CLI golden inputs and outputs under tests/golden/.

    python3 tests/oracles/make_golden.py

Outputs are produced by the CLI itself from inside tests/golden so that the
echoed input paths are relative. Regenerate only after an intended change
of numerical behaviour, and review the diff.
"""

import os
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from oracles.make_bohm_fixture import VARIABLES, smooth_profiles  # noqa: E402
from siac.cli import main  # noqa: E402

GOLDEN = Path(__file__).resolve().parents[1] / "golden"

# (output name, argv) for each golden run; paths relative to GOLDEN
RUNS = [
    ("filter_out.txt", ["filter", "profile.txt", "--H", "0.4", "--generalized-spline"]),
    ("filter_adaptive_out.txt", ["filter", "profile.txt", "--adaptive", "--H-int", "0.8",
                                 "--generalized-spline", "--stencil", "0", "1"]),
    ("filter_periodic_out.txt", ["filter", "periodic.txt", "--H", "0.25", "--periodic"]),
    ("spectrum_out.txt", ["spectrum", "periodic.txt", "--filtered", "--H", "0.25",
                          "--periodic"]),
    ("spectrum_window_out.txt", ["spectrum", "profile.txt", "--window"]),
    ("kernel_response_out.txt", ["kernel-response", "--H", "0.5", "--r", "2", "--l", "2",
                                 "--n-k", "41"]),
    ("bohm_out.txt", ["bohm", "moments.txt"]),
]


def write_inputs():
    rng = np.random.default_rng(11)
    x = (np.arange(60) + 0.5) * 0.1
    f = 1 - 0.8 * np.exp(-(6.0 - x) / 0.5) + rng.normal(0, 0.02, x.size)
    with open(GOLDEN / "profile.txt", "w") as fh:
        fh.write("# sheath-like profile with noise\n")
        for a, b in zip(x, f):
            fh.write(f"{a:.17g}, {b:.17g}\n")
    n = 64
    x = (np.arange(n) + 0.5) / n
    f = np.sin(2 * np.pi * x) + 0.3 * np.sin(2 * np.pi * 12 * x)
    with open(GOLDEN / "periodic.txt", "w") as fh:
        fh.write("# x f\n")
        for a, b in zip(x, f):
            fh.write(f"{a:.17g} {b:.17g}\n")
    xs, prof = smooth_profiles(200, 0.1)
    with open(GOLDEN / "moments.txt", "w") as fh:
        fh.write(" ".join(("x",) + VARIABLES) + "\n")
        for row in zip(xs, *(prof[v] for v in VARIABLES)):
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def write_outputs():
    cwd = os.getcwd()
    os.chdir(GOLDEN)
    try:
        for name, argv in RUNS:
            code = main(argv + ["--output", name])
            if code != 0:
                raise SystemExit(f"{name}: exit {code}")
    finally:
        os.chdir(cwd)


if __name__ == "__main__":
    write_inputs()
    write_outputs()
