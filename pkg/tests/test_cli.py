import json
import subprocess
import sys

import pytest

from isocurv.cli import main, parse_number, parse_product
from isocurv.curvature import Factor


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# argument parsing helpers


def test_parse_number_forms():
    from fractions import Fraction

    assert parse_number("3") == 3 and isinstance(parse_number("3"), int)
    assert parse_number("8/3") == Fraction(8, 3)
    assert parse_number("-1.5") == -1.5
    assert parse_number("1e-6") == 1e-6


def test_parse_product_grammar():
    spec = parse_product("S3:1 x R1")
    assert spec.factors == (Factor("sphere", 3, 1.0), Factor("flat", 1, 0.0))
    spec = parse_product("S2:0.5 x H2:-0.5")
    assert spec.factors[1] == Factor("hyperbolic", 2, -0.5)
    spec = parse_product("S5 x R1")  # implicit curvature 1
    assert spec.factors[0].curvature == 1.0
    spec = parse_product("S2:4/3 x H2:-2")
    assert spec.factors[0].curvature == pytest.approx(4.0 / 3.0)


@pytest.mark.parametrize("text", ["garbage!", "S3:-1 x R1", "X3 x R1", "S3", "R2 x R1"])
def test_parse_product_rejects(text):
    from isocurv.cli import UsageError

    with pytest.raises(UsageError):
        parse_product(text)


# ---------------------------------------------------------------------------
# probe


def test_probe_sphere_line(capsys):
    code, out, _ = run_cli(capsys, "probe", "--product", "S3:1 x R1", "--frames", "1000")
    assert code == 0
    payload = json.loads(out)
    assert payload["mean"] == pytest.approx(2.0, abs=1e-10)
    assert payload["is_constant"] is True
    assert payload["dim"] == 4


def test_probe_mixed_product(capsys):
    code, out, _ = run_cli(capsys, "probe", "--product", "S2:1 x H2:-1")
    assert code == 0
    payload = json.loads(out)
    assert payload["mean"] == pytest.approx(0.0, abs=1e-10)
    assert payload["is_constant"] is True


def test_probe_detects_nonconstant(capsys):
    code, out, _ = run_cli(capsys, "probe", "--product", "S5:1 x R1")
    assert code == 0
    payload = json.loads(out)
    assert payload["is_constant"] is False
    assert payload["min"] >= 2.0 - 1e-10
    assert payload["max"] <= 4.0 + 1e-10


def test_probe_csv_format(capsys):
    code, out, _ = run_cli(capsys, "probe", "--product", "S3:1 x R1", "--format", "csv")
    assert code == 0
    header, row = out.strip().split("\n")
    assert header == "samples,min,max,mean,is_constant"
    assert row.split(",")[0] == "1000"


def test_probe_usage_error(capsys):
    code, _, err = run_cli(capsys, "probe", "--product", "garbage!")
    assert code == 2
    assert "bad factor" in err


def test_probe_seed_env_override(capsys, monkeypatch):
    _, baseline, _ = run_cli(capsys, "probe", "--product", "S5:1 x R1")
    monkeypatch.setenv("CIC_SEED", "7")
    code, out, _ = run_cli(capsys, "probe", "--product", "S5:1 x R1")
    assert code == 0
    payload = json.loads(out)
    assert payload["seed"] == 7
    assert out != baseline  # different frames, different extremes


def test_probe_determinism(capsys):
    _, first, _ = run_cli(capsys, "probe", "--product", "S5:1 x R1", "--seed", "3")
    _, second, _ = run_cli(capsys, "probe", "--product", "S5:1 x R1", "--seed", "3")
    assert first == second


# ---------------------------------------------------------------------------
# classify


def test_classify_with_witness(capsys):
    code, out, _ = run_cli(capsys, "classify", "4", "1", "3", "--witness")
    assert code == 0
    payload = json.loads(out)
    (entry,) = payload["outcomes"]
    assert entry["tag"] == "RotationFamily"
    assert entry["witness"]["params"]["alpha"] == 0.25
    assert entry["witness"]["cic_mean"] == pytest.approx(3.0, abs=1e-8)
    assert entry["witness"]["cic_max_deviation"] <= 1e-8


def test_classify_totally_geodesic(capsys):
    code, out, _ = run_cli(capsys, "classify", "5", "1", "4")
    assert code == 0
    payload = json.loads(out)
    assert [o["tag"] for o in payload["outcomes"]] == ["TotallyGeodesic"]


def test_classify_empty_reason(capsys):
    code, out, _ = run_cli(capsys, "classify", "4", "1", "1.5")
    assert code == 0
    (entry,) = json.loads(out)["outcomes"]
    assert entry["tag"] == "Empty"
    assert "2c" in entry["reason"]


def test_classify_fraction_hits_exact_boundary(capsys):
    code, out, _ = run_cli(capsys, "classify", "4", "1/3", "4/3")
    assert code == 0
    tags = sorted(o["tag"] for o in json.loads(out)["outcomes"])
    assert tags == ["RotationFamily", "TotallyGeodesic"]


def test_classify_bad_number(capsys):
    code, _, err = run_cli(capsys, "classify", "4", "one", "3")
    assert code == 2
    assert "cannot parse" in err


def test_classify_symbolic_witness(capsys):
    code, out, _ = run_cli(capsys, "classify", "5", "1", "4", "--witness")
    assert code == 0
    (entry,) = json.loads(out)["outcomes"]
    assert entry["witness"] == {"symbolic": "TotallyGeodesic"}


# ---------------------------------------------------------------------------
# profile


def test_profile_trig_csv(capsys):
    code, out, _ = run_cli(capsys, "profile", "trig", "--C", "2", "--alpha", "0.3", "--c", "0")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "s,x,xp,lambda,mu,cic"
    assert len(lines) == 2002
    for line in lines[1:]:
        cic = float(line.split(",")[5])
        assert abs(cic - 2.0) <= 1e-9


def test_profile_csv_round_trips_to_the_ulp(capsys):
    from isocurv.profiles import TrigProfile

    _, out, _ = run_cli(
        capsys, "profile", "trig", "--C", "2", "--alpha", "0.3", "--c", "0",
        "--window", "-1", "1", "--grid", "41",
    )
    fam = TrigProfile(C=2.0, alpha=0.3)
    for line in out.strip().split("\n")[1:]:
        s, x = (float(tok) for tok in line.split(",")[:2])
        assert x == fam.eval(s)[0]


def test_profile_parabolic(capsys):
    code, out, _ = run_cli(capsys, "profile", "parabolic", "--beta", "1", "--c", "0")
    assert code == 0
    for line in out.strip().split("\n")[1:]:
        assert abs(float(line.split(",")[5])) <= 1e-10


def test_profile_domain_failure_partial_output(capsys):
    code, out, err = run_cli(
        capsys, "profile", "trig", "--C", "1.5", "--alpha", "0.2", "--c", "1",
        "--window", "0", "10",
    )
    assert code == 1
    assert out.startswith("s,x,xp,lambda,mu,cic")  # header already emitted
    assert "domain breakdown" in err and "s=0.0" in err


def test_profile_missing_parameter(capsys):
    code, _, err = run_cli(capsys, "profile", "trig", "--alpha", "0.3", "--c", "0")
    assert code == 2
    assert "--C is required" in err


def test_profile_invalid_parameter(capsys):
    code, _, err = run_cli(capsys, "profile", "trig", "--C", "2", "--alpha", "1.5", "--c", "0")
    assert code == 2
    assert "alpha" in err


def test_profile_exponential(capsys):
    code, out, _ = run_cli(
        capsys, "profile", "exponential", "--C", "-4", "--A", "1", "--B", "1",
        "--delta", "1", "--c", "-1", "--window", "-5", "5",
    )
    assert code == 0
    for line in out.strip().split("\n")[1:]:
        assert abs(float(line.split(",")[5]) + 4.0) <= 1e-9


def test_profile_determinism(capsys):
    args = ("profile", "quadratic", "--A", "0", "--B", "1", "--c", "-1")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


# ---------------------------------------------------------------------------
# check


def test_check_fast_config_passes(capsys):
    code, out, err = run_cli(capsys, "check", "--frames", "10")
    assert code == 0
    lines = out.strip().split("\n")
    assert all("PASS" in line for line in lines[:-1])
    assert lines[-1] == "9/9 suites passed"
    assert "total:" in err  # timings live on stderr


def test_check_reports_failures(capsys, monkeypatch):
    from isocurv import checks as checks_mod

    def broken(config):
        raise AssertionError("planted failure")

    monkeypatch.setattr(
        checks_mod, "ALL_CHECKS", (("broken-suite", broken),) + checks_mod.ALL_CHECKS[:1]
    )
    code, out, _ = run_cli(capsys, "check", "--frames", "10")
    assert code == 1
    assert "FAIL  planted failure" in out
    assert "1/2 suites passed" in out


def test_check_stdout_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, "check", "--frames", "10")
    _, second, _ = run_cli(capsys, "check", "--frames", "10")
    assert first == second


def test_probe_flat_space(capsys):
    code, out, _ = run_cli(capsys, "probe", "--product", "R4")
    assert code == 0
    payload = json.loads(out)
    assert payload["min"] == payload["max"] == 0.0
    assert payload["is_constant"] is True


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "isocurv.cli", "probe", "--product", "S3:1 x R1", "--frames", "50"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["is_constant"] is True
