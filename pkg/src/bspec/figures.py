"""Named scan configurations for the reproduced figures.

Each entry maps a figure name to the CLI flags of its ``scan`` invocation;
``repro`` runs exactly these.
"""

from __future__ import annotations

FIGURE_FLAGS: dict[str, list[str]] = {
    "fig1": ["--family", "lambda-k", "--k", "1", "--lambda", "3/4"],
    "fig2": ["--family", "lambda-union", "--ks", "1,2", "--exclude", "1/3", "--lambda", "3/4"],
    "fig3": [
        "--family", "lambda-union", "--ks", "1,2,3",
        "--exclude", "1/3,4/3,16/3", "--lambda", "3/4",
    ],
    "fig4": ["--family", "gamma-k", "--k", "1", "--lambda", "3/4"],
    "quarter": ["--family", "quarter-onb", "--lambda", "1/4"],
}

COMMON_FLAGS = ["--range", "0:2", "--step", "0.005", "--terms", "40", "--factors", "40"]


def scan_argv(name: str, out: str) -> list[str]:
    return ["scan", *FIGURE_FLAGS[name], *COMMON_FLAGS, "--out", out]
