"""Compute Ext over motivic A(2) and write its chart as text, SVG and ASCII."""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from _config import parse_config

from motivic_a2.charts import Window, from_ext, render, serialize
from motivic_a2.ext import Ext


@dataclass(frozen=True)
class Config:
    max_stem: int = 40
    max_filt: int = 12
    out_dir: str = "out"
    suppress: tuple[str, ...] = ()


def run(cfg: Config) -> None:
    start = time.perf_counter()
    ext = Ext.compute(cfg.max_stem + cfg.max_filt + 1, cfg.max_filt)
    doc = from_ext(ext, cfg.max_stem, cfg.max_filt)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    window = Window(0, cfg.max_stem, 0, cfg.max_filt)
    (out / "ext.chart").write_text(serialize(doc), encoding="utf-8")
    (out / "ext.svg").write_text(render(doc, "svg", window, cfg.suppress), encoding="utf-8")
    (out / "ext.txt").write_text(render(doc, "ascii", window, cfg.suppress), encoding="utf-8")
    torsion = sum(1 for c in doc.classes if c.tau_order is not None)
    print(f"{len(doc.classes)} summands ({torsion} tau-torsion), {len(doc.lines)} lines, "
          f"written to {out}/ in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    run(parse_config(Config, __doc__))
