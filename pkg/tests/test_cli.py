import io
import json
import subprocess
import sys

import pytest

from ibeta.algebraic import make_beta
from ibeta.cli import REPRODUCTIONS, parse_element, run

GOLDEN = ["--beta", "z^2-z-1"]
SQRT_GOLDEN = ["--beta", "z^4-z^2-1"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_matches_reference_output():
    code, out, _ = call("classify", *SQRT_GOLDEN, "--alpha", "2-beta2")
    assert code == 0
    assert out.strip() == '{"class":"SoficNotSFT","upper":"(1001)","lower":"01(10)"}'


def test_expand_both_sides():
    code, out, _ = call("expand", *GOLDEN, "--alpha", "0", "--x", "1", "--len", "5", "--side", "both")
    data = json.loads(out)
    assert code == 0 and data["plus"] == "11000" and data["minus"] == "10101"


def test_orbit_reports_status_and_widths():
    code, out, _ = call("orbit", *GOLDEN, "--alpha", "0", "--x", "1", "--show", "2")
    data = json.loads(out)["plus"]
    assert data["status"] == {"kind": "EventuallyPeriodic", "k": 2, "n": 1}
    assert data["word"] == "11(0)"
    assert data["states"][1] == {"decimal": "0.618033988750", "width": "1.1e-13", "exact": "[-1,1]"}


def test_exit_codes():
    assert call("orbit", *GOLDEN, "--alpha", "0", "--x", "1", "--cap", "0")[0] == 1
    assert call("orbit", *GOLDEN, "--alpha", "1", "--x", "1")[0] == 2
    assert call("orbit", "--beta", "z^2-2", "--alpha", "1/3", "--x", "1/7", "--cap", "10")[0] == 0
    assert call("kneading", "--beta", "z^2-2", "--alpha", "1/3", "--cap", "5")[0] == 0
    assert call("graph", "--beta", "z^2-2", "--alpha", "1/3", "--cap", "5")[0] == 2
    # (beta - 1)/8 is sofic but not of finite type
    tri = ["--beta", "z^3-z^2-z-1", "--alpha", "(beta-1)/8"]
    assert call("search-sft", *tri, "--eps", "1/100000000000", "--period-cap", "2")[0] == 3
    assert call("search-sft", *tri, "--eps", "1/10000")[0] == 0
    assert call("alpha-nk", "--beta", "z^3-z-1", "--alpha", "1/4", "--n", "3", "--k", "2", "--strict")[0] == 4
    assert call("nonsense")[0] == 1
    assert call("expand", *GOLDEN, "--alpha", "beta3", "--x", "1")[0] == 2
    assert call("expand", *GOLDEN, "--alpha", "0.5", "--x", "1")[0] == 1


def test_experimental_without_strict_is_flagged():
    code, out, _ = call("renorm", "--beta", "z^6-z^3-1", "--alpha", "[2,-1,1,-1,0,0]", "--n", "3", "--k", "2")
    assert code == 0 and json.loads(out)["experimental"] is True


def test_region_and_density():
    code, out, _ = call("region", *SQRT_GOLDEN, "--alpha", "9/25")
    data = json.loads(out)
    assert (data["n"], data["k"], data["transitive"]) == (2, 1, False)
    code, out, _ = call("density", *GOLDEN, "--alpha", "0", "--format", "csv")
    assert out.splitlines()[0] == "lo,hi,value"
    assert out.splitlines()[1] == "0.000000000000,0.618033988750,1.618033988750"


def test_region_plot_csv():
    code, out, _ = call("region-plot", "--n-max", "3", "--samples", "4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,k,beta,lo,hi" and len(lines) == 4


def test_plain_format():
    code, out, _ = call("classify-number", "--beta", "z^3-z^2-z-1", "--format", "plain")
    assert "tag: Pisot" in out.splitlines()


def test_parse_element():
    beta = make_beta([-1, 0, -1, 0, 1])
    g = beta.gen
    assert parse_element("2-beta2", beta) == 2 - g**2
    assert parse_element("[1,-1]/2", beta) == (1 - g) / 2
    assert parse_element("(beta**3 - 1)/7", beta) == (g**3 - 1) / 7
    assert parse_element("-3/4", beta) == beta.rational(-0.75)


@pytest.mark.parametrize("example", sorted(REPRODUCTIONS))
def test_reproduce_matches_golden(example):
    code, out, _ = call("reproduce", example)
    assert code == 0, out
    assert out.startswith(f"{example}: match")


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "ibeta.cli", "classify", *SQRT_GOLDEN, "--alpha", "2-beta2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["class"] == "SoficNotSFT"
