from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from motivic_a2 import ring
from motivic_a2.charts import parse
from motivic_a2.cli import main


def test_may_verify_passes(capsys):
    assert main(["may", "--page", "e2", "--max-stem", "12", "--max-m", "12", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_may_lists_slices(capsys):
    assert main(["may", "--page", "einf", "--max-stem", "3", "--max-m", "3"]) == 0
    assert "(m,s,f)=(1, 0, 1): M2{0}" in capsys.readouterr().out


def test_ext_verifications_pass(capsys, tmp_path):
    chart = tmp_path / "ext.chart"
    code = main(["ext", "--max-stem", "20", "--max-filt", "6", "--verify-relations", "--massey",
                 "--chart", str(chart)])
    out = capsys.readouterr().out
    assert code == 0, out
    assert "(23,5)" not in out and "(3,3): M2{3}" in out
    parse(chart.read_text()).validate()


def test_ext_failed_relation_gives_exit_one(capsys, monkeypatch):
    monkeypatch.setattr(ring, "RELATIONS", {1: ("h0 h2",)})
    monkeypatch.setattr(ring, "MULTIPLICATION_TABLE", ())
    assert main(["ext", "--max-stem", "6", "--max-filt", "3", "--verify-relations"]) == 1
    assert "relation fails: h0 h2" in capsys.readouterr().out


def test_mmf_prints_presentations(capsys):
    assert main(["mmf", "--stem", "120", "--stem", "170"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "pi(120) = Z2[tau]^6{w=60} + Z/8[tau]/(tau^11, 2tau^6, 4tau^2){w=72}"
    assert out[1].startswith("pi(170) = Z/8[x,y,z]")


def test_mmf_from_e2_input(capsys, tmp_path):
    from motivic_a2 import mmf

    path = tmp_path / "e2.chart"
    path.write_text(mmf.bundled_text("mmf_e2.chart"))
    assert main(["mmf", "--input", str(path), "--stem", "3", "--classical"]) == 0
    assert capsys.readouterr().out.strip() == "pi(3) = Z/8"


def test_render_ascii_and_svg(tmp_path, capsys):
    out = tmp_path / "chart.svg"
    assert main(["render", "--format", "svg", "--family", "mmf", "--out", str(out), "--stems", "0:60"]) == 0
    ET.parse(out)
    assert main(["render", "--format", "ascii", "--stems", "0:8", "--filts", "0:4"]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[-1].split() == [str(s) for s in range(9)]


@pytest.mark.parametrize(
    "content",
    ["class a 0 0 0 inf\nline h0 a zz solid\n", "class a 3 1 3 inf\n", "nonsense\n"],
)
def test_bad_input_gives_exit_two(tmp_path, capsys, content):
    path = tmp_path / "bad.chart"
    path.write_text(content)
    assert main(["mmf", "--input", str(path)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_missing_file_gives_exit_two(capsys):
    assert main(["render", "--input", "/nonexistent/chart", "--format", "ascii"]) == 2
