import io
import os
import shlex
import subprocess
import sys

import pytest

from irs_cf.baselines import MethodId
from irs_cf.channel import CoefficientVector
from irs_cf.cli import (
    CSV_COLUMNS,
    UsageError,
    main,
    parse_args,
    parse_coeffs,
    to_argv,
    write_csv,
)
from irs_cf.montecarlo import SweepVariable, run_sweep

TINY = ["--realizations", "3", "--inits", "2", "--random-samples", "2"]


def test_basic_mapping():
    cfg = parse_args("--users 2 --sweep-m 4,8 --snr-db 5 --seed 7 --out r.csv".split())
    spec = cfg.spec
    assert spec.base.num_users == 2
    assert spec.variable is SweepVariable.NUM_IRS_ELEMENTS
    assert spec.values == (4, 8)
    assert spec.base.snr_linear == pytest.approx(10 ** 0.5)
    assert spec.eval.master_seed == 7
    assert cfg.output_path == "r.csv"
    assert spec.base.coeffs == CoefficientVector([1, 1])


def test_coeff_literals():
    assert parse_coeffs("1+0i,1+0i") == CoefficientVector([1, 1])
    assert parse_coeffs(" 2 - 3i , -1+1i") == CoefficientVector([2 - 3j, -1 + 1j])
    assert parse_coeffs("3,0-1i") == CoefficientVector([3, -1j])
    for bad in ("1+i", "1.5+0i", "a", "1+0j", ""):
        with pytest.raises(ValueError):
            parse_coeffs(bad)


@pytest.mark.parametrize("argv, flag", [
    ("--sweep-m 4 --coeffs 0+0i,0+0i", "--coeffs"),
    ("--sweep-m 4 --coeffs 1+x", "--coeffs"),
    ("--sweep-m 4 --coeffs 1+0i", "--coeffs"),
    ("--sweep-m 4 --frobnicate", "--frobnicate"),
    ("--sweep-m 4 --sweep-snr-db 0,5", "--sweep"),
    ("--snr-db 5", "--sweep"),
    ("--sweep-m 4 --realizations 0", "--realizations"),
    ("--sweep-m 4 --inits -1", "--inits"),
    ("--sweep-m 4 --users 0", "--users"),
    ("--sweep-m 4 --random-samples 0", "--random-samples"),
    ("--sweep-m 4 --max-ao-iters 0", "--max-ao-iters"),
    ("--sweep-snr-db 0,5 --irs-elements -2", "--irs-elements"),
    ("--sweep-m 8,4", "--sweep-m"),
    ("--sweep-m 4 --methods AoAvg,Best", "--methods"),
])
def test_usage_errors_name_the_flag(argv, flag):
    with pytest.raises(UsageError, match=flag):
        parse_args(argv.split())


def test_config_file_and_override(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# desk run\nusers = 3\nsweep-snr-db = 0, 5\nirs-elements = 6\n"
                    "no-direct-link = true\nseed = 11\n")
    cfg = parse_args(["--config", str(conf)])
    assert cfg.spec.base.num_users == 3
    assert cfg.spec.values == (0.0, 5.0)
    assert not cfg.spec.base.direct_link_enabled
    cfg = parse_args(["--config", str(conf), "--seed", "12", "--sweep-m", "1,2"])
    assert cfg.spec.eval.master_seed == 12
    assert cfg.spec.variable is SweepVariable.NUM_IRS_ELEMENTS
    bad = tmp_path / "bad.conf"
    bad.write_text("users 3\n")
    with pytest.raises(UsageError):
        parse_args(["--config", str(bad)])
    with pytest.raises(UsageError, match="--config"):
        parse_args(["--config", str(tmp_path / "missing.conf")])


def _run(argv):
    cfg = parse_args(argv)
    table = run_sweep(cfg.spec, workers=1)
    buf = io.StringIO()
    write_csv(table, cfg, buf)
    return cfg, buf.getvalue()


def test_csv_layout():
    cfg, text = _run("--sweep-snr-db 0,5 --irs-elements 3 --methods NoIrs,AoAvg --seed 3".split() + TINY)
    lines = text.split("\n")
    assert text.endswith("\n") and "\r" not in text
    assert lines[0] == f"# irs-cf-sim v0.1.0 seed=3 k=2 a=1+0i,1+0i direct_link=true"
    assert lines[1].startswith("# args: ")
    assert lines[2] == CSV_COLUMNS
    rows = [l for l in lines[3:] if l]
    assert len(rows) == 4
    assert [r.split(",")[2] for r in rows] == ["AoAvg", "NoIrs"] * 2
    assert [r.split(",")[1] for r in rows] == ["0", "0", "5", "5"]
    assert rows[0].split(",")[-2:] == ["3", "2"]
    mean = rows[0].split(",")[3]
    assert len(mean.replace(".", "").replace("-", "").lstrip("0")) <= 12


def test_empty_methods_writes_headers_only():
    _, text = _run(["--sweep-m", "2", "--methods", ""] + TINY)
    assert text.count("\n") == 3


def test_round_trip_through_echo_line():
    cfg, text = _run("--users 3 --coeffs 1+1i,0-2i,3 --sweep-m 1,2 --snr-db 7.5 "
                     "--no-direct-link --shared-draws --max-ao-iters 9 --seed 42".split() + TINY)
    echo = text.split("\n")[1][len("# args: "):]
    again = parse_args(shlex.split(echo))
    assert again.spec == cfg.spec
    assert to_argv(again) == to_argv(cfg)


def test_main_writes_file_and_is_reproducible(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["--sweep-m", "2,3", "--seed", "9"] + TINY
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


def test_main_usage_error_exit_code(capsys, tmp_path):
    out = tmp_path / "x.csv"
    assert main(["--sweep-m", "2", "--coeffs", "0+0i,0+0i", "--out", str(out)]) == 2
    err = capsys.readouterr().err
    assert err.count("\n") == 1 and "--coeffs" in err
    assert not out.exists()


def test_main_io_error(capsys, tmp_path):
    target = tmp_path / "no" / "such" / "dir.csv"
    assert main(["--sweep-m", "1", "--out", str(target)] + TINY) == 1
    assert str(target) in capsys.readouterr().err
    assert not target.exists()


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "irs_cf", "--sweep-snr-db", "5", "--irs-elements", "2",
         "--methods", "NoIrs", "--out", str(out)] + TINY,
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().splitlines()[3].startswith("snr_db,5,NoIrs,")
