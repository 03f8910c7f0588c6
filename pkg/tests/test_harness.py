import math
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speclab.errors import ConfigError
from speclab.geometry import Ball, Box, RectUnion
from speclab.harness import (
    Campaign,
    campaign_from_text,
    csv_text,
    default_campaigns,
    emit_csv,
    format_domain,
    parse_domain,
    read_csv,
    run_ladder,
    svg_text,
)
from speclab.harness.cli import main
from speclab.harness.config import parse_k_range

SQUARE_CFG = """
[campaign]
name = sq
domain = box sides=1,1
schemes = thm11, melas, bly, polya, weyl
alpha = 2
k = 1..30
method = exact
"""

COARSE_FD_CFG = """
[campaign]
name = coarse
domain = box sides=1,1
schemes = bly
k = 1..49
method = fd

[solver]
h = 0.125
"""

LEMMA_CFG = """
[campaign]
name = lemma-small
suite = lemma
trials = 40
seed = 7
"""


# domain grammar ------------------------------------------------------------

def test_parse_domain_forms():
    assert parse_domain("box sides=1,2") == Box((1.0, 2.0))
    b = parse_domain("ball r=2")
    assert isinstance(b, Ball) and b.n == 2 and b.radius == 2.0
    assert parse_domain("ball n=3 r=1").n == 3
    u = parse_domain("union rects=(0,0,2,1);(0,1,1,2)")
    assert isinstance(u, RectUnion) and len(u.rects) == 2


@pytest.mark.parametrize("text", ["", "cube sides=1", "box", "box sides=1,x", "box sides=1 n=2",
                                  "ball r=1 foo=2", "box sides=1 sides=2", "ball n=two r=1",
                                  "box sides=1,-1"])
def test_parse_domain_errors(text):
    with pytest.raises(ConfigError):
        parse_domain(text)


@settings(max_examples=100, deadline=None)
@given(st.one_of(
    st.lists(st.floats(0.01, 100), min_size=1, max_size=4).map(lambda s: Box(tuple(s))),
    st.tuples(st.integers(1, 5), st.floats(0.01, 100)).map(lambda a: Ball(a[0], a[1])),
))
def test_domain_text_round_trip(d):
    assert parse_domain(format_domain(d)) == d


# config --------------------------------------------------------------------

def test_config_parses():
    c = campaign_from_text(SQUARE_CFG)
    assert c.k_range == (1, 30) and len(c.schemes) == 5 and c.suite == "ladder"
    assert parse_k_range("7") == (7, 7)


@pytest.mark.parametrize("text", [
    "[campaign]\nname = x\ndomain = box sides=1\ncolour = red\n",
    "[campaign]\nname = x\ndomain = box sides=1\n[extra]\na = 1\n",
    "[solver]\nh = 0.1\n",
    "[campaign]\ndomain = box sides=1\nk = 5..2\n",
    "[campaign]\ndomain = box sides=1\nk = a..b\n",
    "[campaign]\ndomain = box sides=1\nmethod = magic\n",
    "[campaign]\ndomain = box sides=1\n[tolerances]\ngap = -1\n",
    "[campaign]\nsuite = other\n",
    "[campaign]\nname = x\n",
    "not an ini file",
])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        campaign_from_text(text)


# campaigns and reports -------------------------------------------------------

def test_square_campaign_rows():
    rows = run_ladder(campaign_from_text(SQUARE_CFG))
    assert len(rows) == 30 and all(r.verdict for r in rows)
    r10 = rows[9].as_dict()
    assert r10["bly_total"] == pytest.approx(20 * math.pi, rel=1e-14)
    assert r10["thm11_gap"] == pytest.approx(r10["mean_eigenvalue"] - r10["thm11_total"])


def test_mismatched_scheme_is_nan():
    c = Campaign("x", Box((1.0, 1.0)), ("thm11", "hy"), 2.0, (1, 3), "exact")
    rows = run_ladder(c)
    d = rows[0].as_dict()
    assert math.isnan(d["hy_total"]) and math.isnan(d["hy_gap"]) and d["verdict"] is True


def test_csv_round_trip_bit_exact(tmp_path):
    rows = [r.as_dict() for r in run_ladder(campaign_from_text(SQUARE_CFG))]
    path = tmp_path / "rows.csv"
    emit_csv(rows, path)
    back = read_csv(path)
    assert back == rows
    assert csv_text(back) == path.read_text()


def test_svg_well_formed():
    rows = run_ladder(campaign_from_text(SQUARE_CFG))
    root = ET.fromstring(svg_text(rows))
    assert root.tag.endswith("svg")
    names = {e.get("data-series") for e in root.iter() if e.tag.endswith("polyline")}
    assert names == {"mean", "thm11", "melas", "bly", "polya", "weyl"}


def test_default_campaigns_valid():
    table = default_campaigns()
    assert set(table) >= {"square-ladder", "interval-fractional", "disk-ladder", "lshape-fd", "lemma"}
    assert table["interval-fractional"].alpha == 1.0


# command line ---------------------------------------------------------------

def test_cli_bounds(capsys):
    assert main(["bounds", "--n", "2", "--vol", "1", "--ine", "0.16666666666666666",
                 "--k", "10", "--scheme", "melas"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "k,melas"
    assert float(out[1].split(",")[1]) == pytest.approx(62.8943530717958648, rel=1e-14)


def test_cli_spectra(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["spectra", "--domain", "ball r=1", "--k", "3", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[1].startswith("1,5.78318596294678")


def test_cli_run_and_report(tmp_path):
    cfg = tmp_path / "sq.ini"
    cfg.write_text(SQUARE_CFG)
    csv_path, svg_path = tmp_path / "r.csv", tmp_path / "r.svg"
    assert main(["run", "--config", str(cfg), "--out", str(csv_path), "--plot", str(svg_path)]) == 0
    ET.parse(svg_path)
    svg2 = tmp_path / "again.svg"
    assert main(["report", "--in", str(csv_path), "--plot", str(svg2)]) == 0
    assert svg2.read_text() == svg_path.read_text()


def test_cli_failing_verdict_exit_code(tmp_path):
    # at h = 1/8 the discrete spectrum saturates at 8/h^2 and the mean drops below BLY
    cfg = tmp_path / "fd.ini"
    cfg.write_text(COARSE_FD_CFG)
    assert main(["run", "--config", str(cfg)]) == 1


def test_cli_usage_exit_codes(tmp_path):
    assert main([]) == 2
    assert main(["bounds", "--n", "2"]) == 2
    assert main(["run", "--campaign", "nope"]) == 2
    assert main(["run", "--config", str(tmp_path / "missing.ini")]) == 2
    assert main(["spectra", "--domain", "torus r=1", "--k", "3"]) == 2
    assert main(["bounds", "--n", "2", "--vol", "1", "--ine", "0.01", "--k", "1"]) == 2


def test_cli_solver_failure_exit_code():
    # 2-D Fourier grid beyond the dense-matrix cap
    assert main(["spectra", "--domain", "box sides=1,1", "--method", "fourier", "--alpha", "1",
                 "--k", "1", "--grid", "512"]) == 3


def test_cli_verify(capsys):
    assert main(["verify", "--suite", "ladder", "--trials", "50"]) == 0
    assert "[PASS] ladder.mean_vs_thm11" in capsys.readouterr().out


def test_deterministic_and_thread_independent(tmp_path, monkeypatch):
    cfg = tmp_path / "lemma.ini"
    cfg.write_text(LEMMA_CFG)
    outs = []
    for threads in ("1", "1", "4"):
        monkeypatch.setenv("SPECLAB_THREADS", threads)
        path = tmp_path / f"out{len(outs)}.csv"
        assert main(["run", "--config", str(cfg), "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_threaded_ladder_matches_serial(monkeypatch):
    c = campaign_from_text(SQUARE_CFG)
    serial = csv_text(run_ladder(c))
    monkeypatch.setenv("SPECLAB_THREADS", "3")
    assert csv_text(run_ladder(c)) == serial
    monkeypatch.setenv("SPECLAB_THREADS", "many")
    with pytest.raises(ConfigError):
        run_ladder(c)
