import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from quatmod.cli import build_parser, main

GOLDEN = Path(__file__).parent / "golden"
SUBCOMMANDS = (
    "reduce", "iwasawa", "det", "apply", "order", "verify-presentation", "orbit", "cosets",
    "lorentz-rep", "lorentz-iwasawa", "extend5", "angles", "euler", "chi-orb", "verify-strata",
    "volume", "constants",
)  # fmt: skip

CASES = {
    "reduce_L": ["reduce", "--group", "L", "--point", "5+7/2*i"],
    "reduce_H": ["reduce", "--group", "H", "--point", "1/2+5/2*i+1/3*j"],
    "iwasawa": ["iwasawa", "--word", "Ti Tj T Tk"],
    "iwasawa_matrix": ["iwasawa", "--matrix", '[["0","1"],["1","0"]]'],
    "det": ["det", "--matrix", '[["i","1"],["1","0"]]'],
    "det_singular": ["det", "--matrix", '[["1","1"],["1","1"]]'],
    "apply": ["apply", "--word", "Ti T", "--point", "2"],
    "apply_inf": ["apply", "--matrix", '[["0","1"],["1","0"]]', "--point", "inf"],
    "order": ["order", "--word", "Ti Tj T"],
    "verify_presentation_L": ["verify-presentation", "--group", "L"],
    "verify_presentation_H": ["verify-presentation", "--group", "H"],
    "orbit": ["orbit", "--group", "L", "--radius", "2"],
    "orbit_dot": ["orbit", "--group", "L", "--radius", "1", "--output", "dot"],
    "cosets": ["cosets", "--group", "H", "--radius", "3"],
    "lorentz_rep": ["lorentz-rep", "--word", "Ti Tj T"],
    "lorentz_iwasawa": ["lorentz-iwasawa", "--word", "Ti Tj Tj Tk Tk Tk", "--dilation", "2"],
    "extend5": ["extend5", "--word", "Ti T", "--point", "1+j", "--t", "1/2"],
    "angles": ["angles"],
    "euler": ["euler"],
    "chi_orb_L": ["chi-orb", "--group", "L"],
    "chi_orb_H": ["chi-orb", "--group", "H"],
    "verify_strata_L": ["verify-strata", "--group", "L"],
    "verify_strata_H": ["verify-strata", "--group", "H"],
    "volume": ["volume", "--domain", "PL", "--samples", "1000000", "--seed", "7"],
    "constants": ["constants"],
}


def _run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out, _ = _run(CASES[name], capsys)
    assert code == 0
    suffix = ".dot" if "dot" in name else ".json"
    path = GOLDEN / f"{name}{suffix}"
    if os.environ.get("UPDATE_GOLDEN"):
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")
    if suffix == ".json":
        json.loads(out)


def test_every_subcommand_has_a_golden_case():
    assert {argv[0] for argv in CASES.values()} == set(SUBCOMMANDS)


def test_help_lists_every_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for name in SUBCOMMANDS:
        assert name in out


def test_output_is_deterministic(capsys):
    argv = ["volume", "--domain", "PH", "--samples", "20000", "--seed", "3", "--workers", "2"]
    first = _run(argv, capsys)
    assert first == _run(argv, capsys)


def test_keys_are_sorted(capsys):
    _, out, _ = _run(["reduce", "--point", "3/10"], capsys)
    data = json.loads(out)
    assert list(data) == sorted(data)
    assert data["word"] == ["T"] and data["reduced"] == "10/3"


@pytest.mark.parametrize(
    "argv",
    [
        ["volume", "--samples", "10000"],  # seed is mandatory
        ["apply", "--matrix", "[[1,2]", "--point", "1"],
        ["apply", "--matrix", '[["1"]]', "--point", "1"],
        ["frobnicate"],
        ["reduce", "--group", "Q", "--point", "1"],
        ["apply", "--word", "Tq", "--point", "1"],
        ["apply", "--point", "1"],
        ["extend5", "--word", "T", "--point", "1", "--t", "abc"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, out, _ = _run(argv, capsys)
    assert code == 2 and out == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["apply", "--matrix", '[["1","1"],["0","1"]]', "--point", "1"],  # fails BG
        ["reduce", "--point", "-1"],
        ["reduce", "--point", "inf"],
        ["volume", "--samples", "100", "--seed", "1"],
        ["lorentz-iwasawa", "--matrix", "[[2,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1]]"],
        ["extend5", "--matrix", '[["1","1"],["1","1"]]', "--point", "1", "--t", "1"],
    ],
)
def test_domain_errors_exit_1(argv, capsys):
    code, out, err = _run(argv, capsys)
    assert code == 1 and out == "" and err.startswith("error:")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quatmod", "euler"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["chi_P"] == 2
