"""CLI tests.  Every subcommand has a golden JSON file under tests/golden;
set HARMCONV_REGEN=1 to rewrite them after an intended output change."""
import csv
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from harmconv.cli import DEFAULT_SEED, main

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"
REGEN = os.environ.get("HARMCONV_REGEN") == "1"


def run(*argv, cwd=INPUTS):
    proc = subprocess.run(
        [sys.executable, "-m", "harmconv", *argv], cwd=cwd, capture_output=True, text=True, timeout=300
    )
    return proc.returncode, proc.stdout, proc.stderr


CASES = [
    ("check_member", ["check", "--class", "starlike", "--alpha", "0", "--series", "member.json"], 0),
    ("check_nonmember", ["check", "--class", "U", "--series", "nonmember.json"], 1),
    ("check_general", ["check", "--class", "U", "--alpha", "0.5", "--series", "general.json"], 0),
    ("check_user_kernel", ["check", "--kernel", "kernel_half.json", "--series", "square.json"], 0),
    ("check_config", ["--config", "config_check.json"], 0),
    ("check_suite", ["check", "--class", "starlike", "--alpha", "0.25", "--suite", "6", "--seed", "3"], 0),
    ("bounds", ["bounds", "--class", "convex", "--alpha", "0.5", "--n", "4"], 0),
    ("growth", ["growth", "--class", "starlike", "--alpha", "0.2", "--b1", "0.1"], 0),
    ("extreme", ["extreme", "--class", "U", "--alpha", "0.25", "--kind", "G", "--n", "3"], 0),
    ("decompose", ["decompose", "--class", "starlike", "--series", "member.json"], 0),
    ("decompose_nonmember", ["decompose", "--class", "U", "--series", "nonmember.json"], 1),
    ("product", ["product", "--class", "starlike", "--series", "mixed.json", "--other", "multiplier.json"], 0),
    ("product_leaves_class", ["product", "--kernel", "kernel_half.json", "--series", "square.json",
                              "--other", "square.json"], 1),
    ("transform_L", ["transform", "--class", "convex", "--series", "mixed.json", "--kind", "L", "--gamma", "-0.5"], 0),
    ("transform_G", ["transform", "--series", "mixed.json", "--kind", "G", "--delta", "0.5"], 0),
    ("hyper_phi", ["hyper", "--class", "U", "--p1", "1,1,4", "--p2", "1,1,4"], 0),
    ("hyper_psi", ["hyper", "--class", "starlike", "--criterion", "psi", "--p1", "1,1,3.5", "--p2", "1,1,3.5"], 1),
    ("hyper_product_psi", ["hyper", "--criterion", "product-psi", "--p1", "1,1,3", "--p2", "1,1,3"], 0),
    ("hyper_tu", ["hyper", "--criterion", "tu", "--alpha", "0", "--p1", "1,1,3", "--p2", "1,1,5"], 1),
    ("oracle", ["oracle", "--class", "starlike", "--series", "mixed.json", "--radii", "16", "--angles", "90"], 0),
    ("oracle_nonmember", ["oracle", "--kernel", "kernel_half.json", "--series", "square_plus.json",
                          "--radii", "16", "--angles", "90"], 1),
    ("radius", ["radius", "--class", "U", "--alpha", "0", "--property", "convex"], 0),
    ("radius_series", ["radius", "--series", "member.json", "--property", "jacobian", "--tol", "1e-4"], 0),
    ("figure1", ["figure1", "--order", "60", "--radii", "16", "--angles", "64"], 0),
    ("plot_data", ["plot-data", "--format", "json", "--radii", "8", "--angles", "8", "--r-max", "0.9"], 0),
    ("plot_data_series", ["plot-data", "--series", "mixed.json", "--class", "starlike", "--stat", "ratio",
                          "--format", "json", "--radii", "8", "--angles", "8"], 0),
]


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code):
    rc, out, err = run(*argv)
    assert rc == code, err
    path = GOLDEN / f"{name}.json"
    if REGEN or not path.exists():
        path.write_text(out, encoding="utf-8")
    assert json.loads(out) == json.loads(path.read_text(encoding="utf-8"))
    # byte-identical on a rerun
    assert run(*argv)[1] == out


def test_every_command_has_a_golden_case():
    from harmconv.cli import _COMMANDS

    covered = {argv[0] if argv[0] != "--config" else "check" for _, argv, _ in CASES}
    assert covered == _COMMANDS


def test_check_example_values():
    rc, out, _ = run("check", "--class", "starlike", "--alpha", "0", "--series", "member.json")
    assert rc == 0 and json.loads(out)["lhs"] == pytest.approx(0.8)


def test_radius_example_value():
    rc, out, _ = run("radius", "--class", "U", "--alpha", "0", "--property", "convex")
    assert rc == 0 and json.loads(out)["radius"] == pytest.approx(0.25, abs=1e-3)


def test_figure1_writes_csv(tmp_path):
    out_csv = tmp_path / "fig1.csv"
    rc, out, _ = run("figure1", "--order", "60", "--out", str(out_csv))
    summary = json.loads(out)
    assert rc == 0 and summary["min_re"] < 0
    with out_csv.open() as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["r", "theta", "re", "im", "stat"]
    assert len(rows) == summary["n_samples"] >= 10**4


def test_plot_data_csv(tmp_path):
    target = tmp_path / "dump.csv"
    rc, out, _ = run("plot-data", "--radii", "8", "--angles", "16", "--out", str(target))
    assert rc == 0 and json.loads(out)["n_samples"] == 128
    assert target.read_text().startswith("r,theta,re,im,stat\n")


def test_out_flag_writes_json(tmp_path):
    target = tmp_path / "report.json"
    code = main(["--out", str(target), "bounds", "--class", "U", "--alpha", "0.5", "--n", "2"])
    assert code == 0
    assert json.loads(target.read_text())["bounds"][1]["A_bound"] == pytest.approx(0.5)


def test_config_flags_are_overridden(tmp_path):
    rc, out, _ = run("--config", "config_check.json", "check", "--alpha", "0.1")
    assert rc == 0 and json.loads(out)["lhs"] == pytest.approx((1.9 * 0.3 + 2.1 * 0.1) / 0.9)


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--class", "starlike", "--series", "malformed.json"],
        ["check", "--class", "starlike", "--series", "missing.json"],
        ["check", "--class", "starlike", "--series", "bad_coeff.json"],
        ["check", "--kernel", "kernel_bad.json", "--series", "member.json"],
        ["check", "--class", "starlike", "--alpha", "1.5", "--series", "member.json"],
        ["check", "--series", "member.json"],
        ["growth", "--class", "U", "--alpha", "0.5", "--b1", "0.9"],
        ["hyper", "--class", "starlike", "--p1", "1,1,2", "--p2", "1,1,5"],
        ["hyper", "--p1", "1,1", "--p2", "1,1,5"],
        ["transform", "--series", "member.json", "--kind", "L"],
        ["transform", "--series", "member.json", "--kind", "G", "--delta", "1"],
        ["product", "--class", "U", "--series", "general.json", "--other", "square.json"],
        ["radius", "--class", "starlike", "--property", "convex"],
        ["--config", "missing.json"],
        ["no-such-command"],
    ],
)
def test_input_errors_exit_2(argv):
    rc, _, err = run(*argv)
    assert rc == 2
    assert err


def test_help_lists_every_command():
    rc, out, _ = run("--help")
    assert rc == 0
    for cmd in ["check", "bounds", "growth", "extreme", "decompose", "product", "transform",
                "hyper", "oracle", "radius", "figure1", "plot-data"]:
        assert cmd in out


def test_suite_is_seeded():
    a = run("check", "--class", "U", "--suite", "4")[1]
    b = run("check", "--class", "U", "--suite", "4", "--seed", str(DEFAULT_SEED))[1]
    assert a == b
