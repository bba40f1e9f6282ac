"""Assemble motivic and classical homotopy of mmf from the bundled chart data."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from _config import parse_config

from motivic_a2 import mmf
from motivic_a2.charts import Window, parse, render


@dataclass(frozen=True)
class Config:
    input: str = ""  # chart file; empty means the bundled E2 data with its differentials
    stems: tuple[int, ...] = (0, 3, 20, 40, 120, 170)
    svg: str = ""  # optional path for a rendering of stems 0-60


def run(cfg: Config) -> None:
    doc = parse(Path(cfg.input).read_text(encoding="utf-8")) if cfg.input else mmf.bundled_e2()
    if doc.diffs:
        doc = mmf.apply_differentials(doc)
    for s in cfg.stems:
        print(f"{mmf.assemble_pi(doc, s)}    [classical {mmf.classical_pi(doc, s).split(' = ')[1]}]")
    if cfg.svg:
        Path(cfg.svg).write_text(render(doc, "svg", Window(0, 60, 0, 24), family="mmf"), encoding="utf-8")


if __name__ == "__main__":
    run(parse_config(Config, __doc__))
