"""Weight bookkeeping for the motivic Adams-Novikov spectral sequence of mmf.

Classical chart data comes from the bundled transcription (chart text
format).  A class in stem s and filtration f has weight (s+f)/2; a
d_{2k+1} differential hits tau^k times its target, and an extension by 2,
eta or nu carries tau^e with e fixed by the weights.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from graphlib import CycleError, TopologicalSorter
from importlib import resources
from typing import Iterable, Sequence

from .charts import ChartClass, ChartDifferential, ChartDocument, parse, serialize

KIND_WEIGHTS = {"2": 0, "eta": 1, "nu": 2}
KIND_STEMS = {"2": 0, "eta": 1, "nu": 3}


class ParityError(ValueError):
    pass


class ChartDataError(ValueError):
    pass


@dataclass(frozen=True)
class HopfAlgebroidSignature:
    """Bidegrees (topological degree, weight) of the Weierstrass Hopf algebroid generators."""

    generators: tuple[tuple[str, int, int], ...] = (
        ("a1", 2, 1), ("a3", 6, 3), ("a4", 8, 4), ("a6", 12, 6), ("s", 2, 1), ("t", 6, 3),
    )

    def bidegree(self, name: str) -> tuple[int, int]:
        for n, t, w in self.generators:
            if n == name:
                return (t, w)
        raise KeyError(name)

    def weights_are_half_degrees(self) -> bool:
        """Every generator has weight equal to half its degree, the source of the (s+f)/2 rule."""
        return all(t == 2 * w for _, t, w in self.generators)


@dataclass(frozen=True)
class AnssClass:
    id: str
    s: int
    f: int
    w: int
    order2: int | None
    tau_order: int | None

    @staticmethod
    def from_chart(c: ChartClass) -> "AnssClass":
        if c.w != assign_weight(c.s, c.f):
            raise ChartDataError(f"{c.id}: weight {c.w} differs from the rule value {assign_weight(c.s, c.f)}")
        return AnssClass(c.id, c.s, c.f, c.w, c.order2, c.tau_order)


@dataclass(frozen=True)
class AnssDifferential:
    r: int
    src: str
    dst: str

    def validate(self, chart: ChartDocument) -> None:
        differential_tau_power(self.r)
        missing = [x for x in (self.src, self.dst) if x not in chart]
        if missing:
            raise ChartDataError(f"d{self.r}: unknown class ids {missing}")
        a, b = chart[self.src], chart[self.dst]
        if (b.s, b.f) != (a.s - 1, a.f + self.r):
            raise ChartDataError(f"d{self.r} from {a.id} at {(a.s, a.f)} cannot hit {b.id} at {(b.s, b.f)}")


@dataclass(frozen=True)
class ExoticExtension:
    kind: str
    src: str
    dst: str
    tau_power: int


def assign_weight(s: int, f: int) -> int:
    if (s + f) % 2:
        raise ParityError(f"stem {s} and filtration {f} have odd sum")
    return (s + f) // 2


def differential_tau_power(r: int) -> int:
    """A d_r differential (r = 2k+1) hits tau^k times a generator."""
    if r < 3 or r % 2 == 0:
        raise ValueError(f"Adams-Novikov differentials have odd length >= 3, got {r}")
    return (r - 1) // 2


def extension_tau_power(w_src: int, kind: str, w_tgt: int) -> int:
    """The e with kind * source = tau^e * target."""
    e = w_tgt - w_src - KIND_WEIGHTS[kind]
    if e < 0:
        raise ChartDataError(f"extension by {kind} from weight {w_src} to weight {w_tgt} needs tau^{e}")
    return e


def product_tau_power(w_a: int, w_b: int, w_tgt: int) -> int:
    """The e with a * b = tau^e * target."""
    e = w_tgt - w_a - w_b
    if e < 0:
        raise ChartDataError(f"product of weights {w_a} and {w_b} cannot hit weight {w_tgt}")
    return e


def extensions(chart: ChartDocument, styles: Sequence[str] = ("exotic",)) -> list[ExoticExtension]:
    """Extensions by 2, eta and nu drawn in the chart, with their tau-powers."""
    out = []
    for ln in chart.lines:
        if ln.kind not in KIND_WEIGHTS or ln.style not in styles:
            continue
        a, b = chart[ln.src], chart[ln.dst]
        if b.s - a.s != KIND_STEMS[ln.kind]:
            raise ChartDataError(f"{ln.kind} line from {a.id} to {b.id} changes stem by {b.s - a.s}")
        out.append(ExoticExtension(ln.kind, a.id, b.id, extension_tau_power(a.w, ln.kind, b.w)))
    return out


# -- differentials -------------------------------------------------------------


def _set_levels(c: ChartClass, levels: Sequence[int | None]) -> ChartClass:
    levels = tuple(levels)
    if c.order2 == 1:
        return replace(c, tau_order=levels[0], levels=None)
    return replace(c, tau_order=levels[0], levels=levels)


def _check_levels(c: ChartClass) -> None:
    orders = [float("inf") if k is None else k for k in c.level_orders()]
    if any(b > a for a, b in zip(orders, orders[1:])):
        raise ChartDataError(f"{c.id}: tau-orders of x, 2x, 4x, ... must not increase")


def apply_differentials(chart: ChartDocument,
                        diffs: Iterable[ChartDifferential | AnssDifferential] | None = None) -> ChartDocument:
    """E-infinity chart: sources of differentials vanish, targets become tau-torsion.

    A d_{2k+1} into a row x, 2x, ..., 2^{j-1}x of extensions by 2 hits the
    highest level not yet hit, so differentials taken in increasing length hit
    2^{j-1}x, then 2^{j-2}x, and so on; the level hit becomes killed by tau^k.
    """
    todo = list(chart.diffs if diffs is None else diffs)
    todo.sort(key=lambda d: (d.r, d.src, d.dst))
    classes = {c.id: c for c in chart.classes}
    hits: dict[str, int] = {}
    removed: set[str] = set()
    for d in todo:
        AnssDifferential(d.r, d.src, d.dst).validate(chart)
        if d.src in removed:
            raise ChartDataError(f"d{d.r} from {d.src}: the source is already gone")
        if d.dst in removed:
            raise ChartDataError(f"d{d.r} into {d.dst}: the target is already gone")
        tgt = classes[d.dst]
        if tgt.is_box:
            raise ChartDataError(f"d{d.r} into {d.dst}: targets must be 2-torsion rows")
        levels = list(tgt.level_orders())
        used = hits.get(d.dst, 0)
        if used >= len(levels):
            raise ChartDataError(f"d{d.r} into {d.dst}: every level is already hit")
        levels[len(levels) - 1 - used] = differential_tau_power(d.r)
        hits[d.dst] = used + 1
        classes[d.dst] = _set_levels(tgt, levels)
        removed.add(d.src)
    for cid in hits:
        _check_levels(classes[cid])
    keep = [cid for cid in classes if cid not in removed]
    out = chart.restrict(keep).with_classes(classes[cid] for cid in keep)
    return replace(out, diffs=())


def e2_from_einf(einf: ChartDocument) -> ChartDocument:
    """Reconstruct E2 data whose differentials produce ``einf``.

    Each level of tau-order k at (s, f) is the target of a d_{2k+1} from a
    class at (s+1, f-2k-1).  Those sources are named ``e[s,f]~n`` and tagged
    ``source``; the torsion classes become tau-free.
    """
    sources: list[ChartClass] = []
    diffs: list[ChartDifferential] = []
    targets = []
    seen: dict[tuple[int, int], int] = {}
    for c in sorted(einf.classes, key=lambda c: (c.s, c.f, c.id)):
        _check_levels(c)
        levels = c.level_orders()
        for k in sorted({k for k in levels if k is not None}):
            for _ in range(sum(1 for x in levels if x == k)):
                s, f = c.s + 1, c.f - 2 * k - 1
                if f < 0:
                    raise ChartDataError(f"{c.id}: no room for a d{2 * k + 1} source")
                n = seen[(s, f)] = seen.get((s, f), 0) + 1
                src = ChartClass(f"e[{s},{f}]~{n}", s, f, assign_weight(s, f), None, tags=("source",))
                sources.append(src)
                diffs.append(ChartDifferential(2 * k + 1, src.id, c.id))
        targets.append(_set_levels(c, [None] * len(levels)) if c.tau_order is not None or c.levels else c)
    return ChartDocument(tuple(targets) + tuple(sources), einf.lines, einf.towers, tuple(diffs))


def classicalize(chart: ChartDocument) -> ChartDocument:
    """Invert tau: keep the tau-free part, drop tau-torsion and tau-killed h1-towers."""
    kept = []
    for c in chart.classes:
        free = [k for k in c.level_orders() if k is None]
        if not free:
            continue
        if c.is_box or c.order2 == 1:
            kept.append(c)
        else:
            kept.append(replace(c, order2=len(free), levels=None))
    out = chart.restrict(c.id for c in kept).with_classes(kept)
    return replace(out, towers=tuple(t for t in out.towers if t.direction != "h1"))


# -- homotopy groups -------------------------------------------------------------


@dataclass(frozen=True)
class TauRelation:
    """2^two_power * tau^tau_power * gen = 0."""

    gen: str
    two_power: int
    tau_power: int


@dataclass(frozen=True)
class TwoExtension:
    """2^two_power * src = tau^tau_power * dst."""

    src: str
    two_power: int
    dst: str
    tau_power: int


def _coef(i: int) -> str:
    return "" if i == 0 else str(2 ** i)


def _tau(k: int) -> str:
    return "" if k == 0 else "tau" if k == 1 else f"tau^{k}"


@dataclass(frozen=True)
class Summand:
    generators: tuple[tuple[str, int], ...]  # (class id, weight)
    two_exponent: int | None  # None for a copy of Z2[tau]
    copies: int = 1
    torsion: tuple[TauRelation, ...] = ()
    extensions: tuple[TwoExtension, ...] = ()

    def __str__(self) -> str:
        weights = ",".join(str(w) for _, w in self.generators)
        if self.two_exponent is None:
            power = f"^{self.copies}" if self.copies > 1 else ""
            return f"Z2[tau]{power}{{w={weights}}}"
        if len(self.generators) == 1:
            rels = [f"{_coef(r.two_power)}{_tau(r.tau_power)}" for r in self.torsion]
            ring = f"Z/{2 ** self.two_exponent}[tau]"
        else:
            names = {g: "xyzuvabcdefghijklmnopqrst"[i] for i, (g, _) in enumerate(self.generators)}
            rels = [f"{_coef(r.two_power)}{_tau(r.tau_power)} {names[r.gen]}" for r in self.torsion]
            rels += [f"{_coef(e.two_power)}{names[e.src]} = {(_tau(e.tau_power) + ' ') if e.tau_power else ''}"
                     f"{names[e.dst]}" for e in self.extensions]
            ring = f"Z/{2 ** self.two_exponent}[{','.join(names.values())}]"
        body = f"{ring}/({', '.join(rels)})" if rels else ring
        return f"{body}{{w={weights}}}"

    def group_text(self) -> str:
        """The abelian group with tau set to 1 (meaningful on a tau-free chart)."""
        if self.two_exponent is None:
            return "Z2" + (f"^{self.copies}" if self.copies > 1 else "")
        return f"Z/{2 ** self.two_exponent}"


@dataclass(frozen=True)
class PiPresentation:
    stem: int
    summands: tuple[Summand, ...]

    @property
    def generators(self) -> list[tuple[str, int]]:
        return [g for s in self.summands for g in s.generators]

    @property
    def free_rank(self) -> int:
        return sum(s.copies for s in self.summands if s.two_exponent is None)

    @property
    def relations(self) -> list[TauRelation | TwoExtension]:
        return [r for s in self.summands for r in (*s.torsion, *s.extensions)]

    def __str__(self) -> str:
        body = " + ".join(str(s) for s in self.summands) if self.summands else "0"
        return f"pi({self.stem}) = {body}"


def classical_pi(chart: ChartDocument, stem: int) -> str:
    """The classical group in ``stem``: invert tau, then read off the 2-extension rows."""
    pi = assemble_pi(classicalize(chart), stem)
    body = " + ".join(s.group_text() for s in pi.summands) if pi.summands else "0"
    return f"pi({stem}) = {body}"


def _level_relations(c: ChartClass) -> list[TauRelation]:
    out = []
    prev: int | None = None
    for i, k in enumerate(c.level_orders()):
        if k is not None and (i == 0 or prev is None or k < prev):
            out.append(TauRelation(c.id, i, k))
        prev = k
    return out


def assemble_pi(chart: ChartDocument, stem: int,
                two_extensions: Iterable[ExoticExtension] | None = None) -> PiPresentation:
    """Presentation of pi_{stem} over Z2[tau] from an E-infinity chart.

    Classes in the stem are linked by their rows of 2-extensions and by the
    extensions by 2 between different classes (all lines of kind 2 by
    default), each carrying the tau-power fixed by the weights.
    """
    classes = chart.stem(stem)
    ids = {c.id for c in classes}
    if two_extensions is None:
        two_extensions = extensions(chart, styles=("solid", "dashed", "exotic"))
    links = [e for e in two_extensions if e.kind == "2" and e.src in ids]
    for e in links:
        if e.dst not in ids:
            raise ChartDataError(f"extension by 2 from {e.src} leaves the stem")
    succ: dict[str, ExoticExtension] = {}
    pred: dict[str, str] = {}
    for e in links:
        if e.src in succ or e.dst in pred:
            raise ChartDataError(f"extensions by 2 at {e.src} or {e.dst} branch")
        succ[e.src], pred[e.dst] = e, e.src
    try:
        tuple(TopologicalSorter({e.dst: {e.src} for e in links}).static_order())
    except CycleError as err:
        raise ChartDataError(f"extensions by 2 form a cycle: {err.args[1]}") from None

    summands = []
    for c in classes:
        if c.id in pred:
            continue
        chain = [c]
        while chain[-1].id in succ:
            chain.append(chart[succ[chain[-1].id].dst])
        if any(x.is_box for x in chain) and len(chain) > 1:
            raise ChartDataError(f"extension by 2 touches the box {c.id}")
        for x in chain:
            _check_levels(x)
        if c.is_box:
            summands.append(Summand(((c.id, c.w),), None, c.copies))
            continue
        torsion = tuple(r for x in chain for r in _level_relations(x))
        exts = tuple(
            TwoExtension(x.id, len(x.level_orders()), succ[x.id].dst, succ[x.id].tau_power) for x in chain[:-1]
        )
        two = sum(len(x.level_orders()) for x in chain)
        for _ in range(c.copies):
            summands.append(Summand(tuple((x.id, x.w) for x in chain), two, 1, torsion, exts))
    summands.sort(key=lambda s: (s.two_exponent is not None, chart[s.generators[0][0]].f, s.generators[0][1]))
    return PiPresentation(stem, tuple(summands))


# -- bundled data ------------------------------------------------------------------


def bundled_text(name: str = "mmf_einf.chart") -> str:
    return resources.files("motivic_a2").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def bundled_einf() -> ChartDocument:
    """The transcribed motivic E-infinity chart."""
    return parse(bundled_text("mmf_einf.chart"))


def bundled_e2() -> ChartDocument:
    """The E2 data with differentials shipped next to the E-infinity chart."""
    return parse(bundled_text("mmf_e2.chart"))


def e2_text(einf: ChartDocument) -> str:
    header = (
        "# E2 data for the motivic Adams-Novikov spectral sequence of mmf,\n"
        "# reconstructed from mmf_einf.chart: each tau-torsion level is hit by one\n"
        "# differential from a placeholder source tagged 'source'.\n"
    )
    return header + serialize(e2_from_einf(einf))
