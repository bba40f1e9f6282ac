"""Recompute each May page as the homology of the previous one and compare with its presentation."""

from __future__ import annotations

import time
from dataclasses import dataclass

from _config import parse_config

from motivic_a2.may import Page, builtin_page, check_well_defined, compare_presentation, page_homology

STEPS = {"E2": "gr-dga", "E4": "E2", "Einf": "E4"}


@dataclass(frozen=True)
class Config:
    max_stem: int = 70
    max_m: int = 40
    pages: tuple[str, ...] = ("E2", "E4", "Einf")
    check_slices: bool = False  # also test d∘d = 0 slice by slice


def run(cfg: Config) -> bool:
    ok = True
    for target in cfg.pages:
        source = STEPS[target]
        alg, d = builtin_page(source)
        start = time.perf_counter()
        if source != "gr-dga":
            ok &= check_well_defined(alg, d).ok
        if cfg.check_slices:
            ok &= not Page(alg, d, cfg.max_m, cfg.max_stem).check_d_squared_slices()
        rep = compare_presentation(page_homology(alg, d, cfg.max_stem, cfg.max_m), builtin_page(target)[0],
                                   cfg.max_stem, cfg.max_m)
        ok &= rep.ok
        print(f"{source:>6} -> {target:<4}  slices={rep.slices:6d}  mismatches={len(rep.mismatches):3d}  "
              f"time={time.perf_counter() - start:6.1f}s")
        for m in rep.mismatches[:5]:
            print(f"    {m}")
    return ok


if __name__ == "__main__":
    raise SystemExit(0 if run(parse_config(Config, __doc__)) else 1)
