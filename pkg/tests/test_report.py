"""Report rendering: CSV plus figures land next to each other."""

import csv

from charp.crosscheck import run_batteries
from charp.report import render_report


def test_render_report(tmp_path):
    results = run_batteries(["cocycle-laws", "maurer-cartan-flatness"], seed=4)
    written = render_report(results, str(tmp_path))
    assert [p.split("/")[-1] for p in written] == [
        "crosscheck.csv",
        "crosscheck_trials.png",
        "crosscheck_runtime.png",
    ]
    with open(written[0], newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["battery", "trials", "failures", "seconds", "passed", "notes"]
    assert [r[0] for r in rows[1:]] == ["cocycle-laws", "maurer-cartan-flatness"]
    assert all(r[2] == "0" for r in rows[1:])
    for path in written[1:]:
        with open(path, "rb") as fh:
            assert fh.read(8).startswith(b"\x89PNG")
