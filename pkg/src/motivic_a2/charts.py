"""Chart documents: a line-oriented text format plus SVG and ASCII rendering.

Text format (UTF-8, one record per line, ``#`` starts a comment)::

    class <id> <s> <f> <w> <tau-order|inf> [order2=<j|inf>] [levels=<k,k,..>]
          [copies=<n>] [label=<text>] [tags=<t,t,..>]
    line <h0|h1|h2|2|eta|nu> <src> <dst> <solid|dashed|exotic>
    tower <id> <h0|h1>
    diff <r> <src> <dst>

``order2=j`` says the class generates a row of j extensions by 2 (the group
is Z/2^j); ``order2=inf`` marks a copy of the 2-adic integers (a box).
``levels`` lists the tau-orders of x, 2x, 4x, ... for such a row.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .ext import Ext

INF = None  # tau-order or 2-order "infinity"
LINE_KINDS = ("h0", "h1", "h2", "2", "eta", "nu")
LINE_STYLES = ("solid", "dashed", "exotic")
TOWER_DIRECTIONS = ("h0", "h1")
FAMILIES = ("ext", "mmf")
_RECORD_ORDER = {"class": 0, "line": 1, "tower": 2, "diff": 3}


class ChartFormatError(ValueError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnknownIdError(ValueError):
    def __init__(self, ids: Iterable[str]) -> None:
        self.ids = sorted(set(ids))
        super().__init__("unknown class ids: " + ", ".join(self.ids))


def _order_text(k: int | None) -> str:
    return "inf" if k is None else str(k)


def _parse_order(text: str) -> int | None:
    if text == "inf":
        return None
    k = int(text)
    if k < 1:
        raise ValueError(f"order must be positive or inf, got {k}")
    return k


@dataclass(frozen=True)
class ChartClass:
    id: str
    s: int
    f: int
    w: int
    tau_order: int | None = None
    order2: int | None = 1
    levels: tuple[int | None, ...] | None = None
    copies: int = 1
    label: str | None = None
    tags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.levels is not None:
            if self.order2 is None or len(self.levels) != self.order2:
                raise ValueError(f"class {self.id}: levels must list order2 entries")
            if self.levels[0] != self.tau_order:
                raise ValueError(f"class {self.id}: first level must equal the tau-order")

    @property
    def is_box(self) -> bool:
        return self.order2 is None

    def level_orders(self) -> tuple[int | None, ...]:
        """tau-orders of x, 2x, 4x, ... (a single entry for a box or Z/2 class)."""
        if self.levels is not None:
            return self.levels
        if self.order2 is None or self.order2 == 1:
            return (self.tau_order,)
        return (self.tau_order,) * self.order2

    def to_text(self) -> str:
        parts = ["class", self.id, str(self.s), str(self.f), str(self.w), _order_text(self.tau_order)]
        if self.order2 != 1:
            parts.append(f"order2={_order_text(self.order2)}")
        if self.levels is not None:
            parts.append("levels=" + ",".join(_order_text(k) for k in self.levels))
        if self.copies != 1:
            parts.append(f"copies={self.copies}")
        if self.label is not None:
            parts.append(f"label={self.label}")
        if self.tags:
            parts.append("tags=" + ",".join(self.tags))
        return " ".join(parts)


@dataclass(frozen=True)
class ChartLine:
    kind: str
    src: str
    dst: str
    style: str = "solid"

    def to_text(self) -> str:
        return f"line {self.kind} {self.src} {self.dst} {self.style}"


@dataclass(frozen=True)
class ChartTower:
    base: str
    direction: str

    def to_text(self) -> str:
        return f"tower {self.base} {self.direction}"


@dataclass(frozen=True)
class ChartDifferential:
    r: int
    src: str
    dst: str

    def to_text(self) -> str:
        return f"diff {self.r} {self.src} {self.dst}"


@dataclass(frozen=True)
class ChartDocument:
    classes: tuple[ChartClass, ...] = ()
    lines: tuple[ChartLine, ...] = ()
    towers: tuple[ChartTower, ...] = ()
    diffs: tuple[ChartDifferential, ...] = ()
    _index: dict[str, ChartClass] = field(default=None, init=False, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        index: dict[str, ChartClass] = {}
        for c in self.classes:
            if c.id in index:
                raise ValueError(f"duplicate class id {c.id}")
            index[c.id] = c
        object.__setattr__(self, "_index", index)

    def __getitem__(self, cid: str) -> ChartClass:
        return self._index[cid]

    def __contains__(self, cid: object) -> bool:
        return cid in self._index

    def unknown_ids(self) -> list[str]:
        refs = [x for ln in self.lines for x in (ln.src, ln.dst)]
        refs += [t.base for t in self.towers]
        refs += [x for d in self.diffs for x in (d.src, d.dst)]
        return sorted({r for r in refs if r not in self._index})

    def validate(self) -> None:
        unknown = self.unknown_ids()
        if unknown:
            raise UnknownIdError(unknown)

    def at(self, s: int, f: int) -> list[ChartClass]:
        return sorted((c for c in self.classes if c.s == s and c.f == f), key=_class_key)

    def stem(self, s: int) -> list[ChartClass]:
        return sorted((c for c in self.classes if c.s == s), key=_class_key)

    def with_classes(self, classes: Iterable[ChartClass]) -> "ChartDocument":
        return replace(self, classes=tuple(classes))

    def restrict(self, keep: Iterable[str]) -> "ChartDocument":
        """Sub-document on the given class ids, with the records among them."""
        keep = set(keep)
        return ChartDocument(
            tuple(c for c in self.classes if c.id in keep),
            tuple(ln for ln in self.lines if ln.src in keep and ln.dst in keep),
            tuple(t for t in self.towers if t.base in keep),
            tuple(d for d in self.diffs if d.src in keep and d.dst in keep),
        )


def _class_key(c: ChartClass) -> tuple:
    return (c.s, c.f, c.w, c.id)


# -- text format -----------------------------------------------------------

_ATTR = re.compile(r"^(order2|levels|copies|label|tags)=(.+)$")


def _parse_class(tok: list[str], n: int) -> ChartClass:
    if len(tok) < 6:
        raise ChartFormatError(n, "class needs <id> <s> <f> <w> <tau-order|inf>")
    try:
        s, f, w = int(tok[2]), int(tok[3]), int(tok[4])
        tau = _parse_order(tok[5])
    except ValueError as e:
        raise ChartFormatError(n, f"bad class field: {e}") from None
    attrs: dict[str, object] = {}
    for a in tok[6:]:
        m = _ATTR.match(a)
        if not m:
            raise ChartFormatError(n, f"unknown class attribute {a!r}")
        key, val = m.groups()
        if key in attrs:
            raise ChartFormatError(n, f"repeated attribute {key}")
        try:
            if key == "order2":
                attrs[key] = _parse_order(val)
            elif key == "levels":
                attrs[key] = tuple(_parse_order(v) for v in val.split(","))
            elif key == "copies":
                attrs[key] = int(val)
            elif key == "tags":
                attrs[key] = tuple(val.split(","))
            else:
                attrs[key] = val
        except ValueError as e:
            raise ChartFormatError(n, f"bad value for {key}: {e}") from None
    try:
        return ChartClass(tok[1], s, f, w, tau, **attrs)  # type: ignore[arg-type]
    except ValueError as e:
        raise ChartFormatError(n, str(e)) from None


def parse(text: str) -> ChartDocument:
    """Parse the chart text format; errors carry the offending line number."""
    classes, lines, towers, diffs = [], [], [], []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        tok = body.split()
        kind = tok[0]
        if kind == "class":
            classes.append(_parse_class(tok, n))
        elif kind == "line":
            if len(tok) != 5:
                raise ChartFormatError(n, "line needs <kind> <src> <dst> <style>")
            if tok[1] not in LINE_KINDS:
                raise ChartFormatError(n, f"unknown line kind {tok[1]!r}")
            if tok[4] not in LINE_STYLES:
                raise ChartFormatError(n, f"unknown line style {tok[4]!r}")
            lines.append(ChartLine(tok[1], tok[2], tok[3], tok[4]))
        elif kind == "tower":
            if len(tok) != 3 or tok[2] not in TOWER_DIRECTIONS:
                raise ChartFormatError(n, "tower needs <id> <h0|h1>")
            towers.append(ChartTower(tok[1], tok[2]))
        elif kind == "diff":
            if len(tok) != 4:
                raise ChartFormatError(n, "diff needs <r> <src> <dst>")
            try:
                r = int(tok[1])
            except ValueError:
                raise ChartFormatError(n, f"bad page number {tok[1]!r}") from None
            diffs.append(ChartDifferential(r, tok[2], tok[3]))
        else:
            raise ChartFormatError(n, f"unknown record type {kind!r}")
    try:
        return ChartDocument(tuple(classes), tuple(lines), tuple(towers), tuple(diffs))
    except ValueError as e:
        raise ChartFormatError(0, str(e)) from None


def serialize(doc: ChartDocument) -> str:
    records = [c.to_text() for c in doc.classes]
    records += [ln.to_text() for ln in doc.lines]
    records += [t.to_text() for t in doc.towers]
    records += [d.to_text() for d in doc.diffs]
    return "".join(r + "\n" for r in records)


def normalize(text: str) -> str:
    """Drop comments and blank lines, collapse spaces, group records by type."""
    records = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].split()
        if body:
            records.append(" ".join(body))
    records.sort(key=lambda r: _RECORD_ORDER.get(r.split()[0], 99))
    return "".join(r + "\n" for r in records)


# -- markers -----------------------------------------------------------------


def marker(tau_order: int | None, box: bool = False, family: str = "ext") -> str:
    """Legend glyph name for one summand.

    Ext and May charts: a solid dot for M2, an open circle for M2/tau, an open
    circle with a dot for M2/tau^2, an open box for M2/tau^3 and the number
    itself beyond that.  mmf charts: a box for Z2[tau], a solid dot for
    Z/2[tau] and the number k for Z/2[tau]/tau^k.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown chart family {family!r}")
    if tau_order is None:
        return "box" if box else "dot"
    if family == "ext" and tau_order <= 3:
        return ("circle", "dotted-circle", "open-box")[tau_order - 1]
    return f"number-{tau_order}"


_ASCII = {"dot": "*", "box": "#", "circle": "o", "dotted-circle": "@", "open-box": "[]"}


def _ascii_glyph(name: str) -> str:
    return _ASCII.get(name) or name.split("-", 1)[1]


def _class_markers(c: ChartClass, family: str) -> list[str]:
    return [marker(k, c.is_box, family) for k in c.level_orders()]


# -- rendering ---------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    s_min: int
    s_max: int
    f_min: int
    f_max: int

    def __post_init__(self) -> None:
        if self.s_min > self.s_max or self.f_min > self.f_max:
            raise ValueError(f"empty window {self}")

    def contains(self, s: int, f: int) -> bool:
        return self.s_min <= s <= self.s_max and self.f_min <= f <= self.f_max

    @staticmethod
    def around(doc: ChartDocument, s_range: tuple[int, int] | None = None,
               f_range: tuple[int, int] | None = None) -> "Window":
        ss = [c.s for c in doc.classes] or [0]
        ff = [c.f for c in doc.classes] or [0]
        s0, s1 = s_range if s_range else (min(0, min(ss)), max(ss))
        f0, f1 = f_range if f_range else (min(0, min(ff)), max(ff))
        return Window(s0, s1, f0, f1)


def _visible(doc: ChartDocument, window: Window, suppress: Iterable[str]) -> list[ChartClass]:
    hidden = set(suppress)
    return sorted(
        (c for c in doc.classes if window.contains(c.s, c.f) and not hidden.intersection(c.tags)),
        key=_class_key,
    )


def render(doc: ChartDocument, format: str = "svg", window: Window | None = None,
           suppress: Iterable[str] = (), family: str = "ext") -> str:
    """Render ``doc`` as SVG or ASCII.

    Classes carrying any tag in ``suppress`` are hidden together with their
    lines.  Output depends only on the arguments.
    """
    doc.validate()
    window = window or Window.around(doc)
    if format == "svg":
        return _render_svg(doc, window, list(suppress), family)
    if format == "ascii":
        return _render_ascii(doc, window, list(suppress), family)
    raise ValueError(f"unknown format {format!r}")


def _render_ascii(doc: ChartDocument, window: Window, suppress: list[str], family: str) -> str:
    cells: dict[tuple[int, int], list[str]] = {}
    for c in _visible(doc, window, suppress):
        glyph = "".join(_ascii_glyph(m) for m in _class_markers(c, family))
        cells.setdefault((c.s, c.f), []).append(glyph)
    shown = {c.id for c in _visible(doc, window, suppress)}
    for t in sorted(doc.towers, key=lambda t: (doc[t.base].s, doc[t.base].f, t.base)):
        if t.base not in shown:
            continue
        b = doc[t.base]
        pos, glyph = ((b.s, b.f + 1), "^") if t.direction == "h0" else ((b.s + 1, b.f + 1), "/")
        if window.contains(*pos):
            cells.setdefault(pos, []).append(glyph)
    stems = range(window.s_min, window.s_max + 1)
    text = {k: ",".join(v) for k, v in cells.items()}
    width = max([len(str(s)) for s in stems] + [len(v) for v in text.values()])
    label_w = max(len(str(window.f_min)), len(str(window.f_max)))
    out = []
    for f in range(window.f_max, window.f_min - 1, -1):
        row = " ".join(text.get((s, f), ".").rjust(width) for s in stems)
        out.append(f"{str(f).rjust(label_w)} | {row}".rstrip())
    out.append(" " * label_w + " +-" + "-" * ((width + 1) * len(stems)))
    out.append(" " * label_w + "   " + " ".join(str(s).rjust(width) for s in stems))
    return "\n".join(out) + "\n"


_UNIT = 24
_PAD = 30
_STYLE_COLORS = {"solid": "black", "dashed": "black", "exotic": "red"}


def _render_svg(doc: ChartDocument, window: Window, suppress: list[str], family: str) -> str:
    ns = window.s_max - window.s_min + 1
    nf = window.f_max - window.f_min + 1
    width, height = ns * _UNIT + 2 * _PAD, nf * _UNIT + 2 * _PAD

    def x(s: float) -> float:
        return _PAD + (s - window.s_min + 0.5) * _UNIT

    def y(f: float) -> float:
        return height - _PAD - (f - window.f_min + 0.5) * _UNIT

    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg", "width": str(width), "height": str(height),
        "viewBox": f"0 0 {width} {height}",
    })
    defs = ET.SubElement(root, "defs")
    m = ET.SubElement(defs, "marker", {"id": "arrow", "markerWidth": "6", "markerHeight": "6",
                                        "refX": "5", "refY": "3", "orient": "auto"})
    ET.SubElement(m, "path", {"d": "M0,0 L6,3 L0,6 z", "fill": "black"})
    grid = ET.SubElement(root, "g", {"class": "grid", "stroke": "#ddd"})
    for s in range(window.s_min, window.s_max + 1):
        ET.SubElement(grid, "line", {"x1": _n(x(s)), "y1": _n(y(window.f_min - 0.5)),
                                     "x2": _n(x(s)), "y2": _n(y(window.f_max + 0.5))})
    for f in range(window.f_min, window.f_max + 1):
        ET.SubElement(grid, "line", {"x1": _n(x(window.s_min - 0.5)), "y1": _n(y(f)),
                                     "x2": _n(x(window.s_max + 0.5)), "y2": _n(y(f))})
    axes = ET.SubElement(root, "g", {"class": "axes", "font-size": "9", "text-anchor": "middle"})
    for s in range(window.s_min, window.s_max + 1):
        if s % 2 == 0:
            ET.SubElement(axes, "text", {"x": _n(x(s)), "y": _n(height - _PAD / 3)}).text = str(s)
    for f in range(window.f_min, window.f_max + 1):
        if f % 2 == 0:
            ET.SubElement(axes, "text", {"x": _n(_PAD / 2), "y": _n(y(f) + 3)}).text = str(f)

    visible = _visible(doc, window, suppress)
    shown = {c.id for c in visible}
    groups: dict[tuple[int, int], list[ChartClass]] = {}
    for c in visible:
        groups.setdefault((c.s, c.f), []).append(c)
    centers: dict[str, tuple[float, float]] = {}
    for (s, f), cs in groups.items():
        n = len(cs)
        for i, c in enumerate(cs):
            centers[c.id] = (x(s) + (i - (n - 1) / 2) * _UNIT / (n + 1), y(f))

    lines_g = ET.SubElement(root, "g", {"class": "lines", "fill": "none"})
    for ln in sorted(doc.lines, key=lambda ln: (ln.src, ln.dst, ln.kind, ln.style)):
        if ln.src not in shown or ln.dst not in shown:
            continue
        (x1, y1), (x2, y2) = centers[ln.src], centers[ln.dst]
        attrs = {"x1": _n(x1), "y1": _n(y1), "x2": _n(x2), "y2": _n(y2),
                 "stroke": _STYLE_COLORS[ln.style], "data-kind": ln.kind, "data-style": ln.style}
        if ln.style == "dashed":
            attrs["stroke-dasharray"] = "3,2"
        ET.SubElement(lines_g, "line", attrs)
    for t in sorted(doc.towers, key=lambda t: t.base):
        if t.base not in shown:
            continue
        x1, y1 = centers[t.base]
        dx = 0 if t.direction == "h0" else _UNIT * 0.8
        ET.SubElement(lines_g, "line", {"x1": _n(x1), "y1": _n(y1), "x2": _n(x1 + dx),
                                        "y2": _n(y1 - _UNIT * 0.8), "stroke": "black",
                                        "marker-end": "url(#arrow)", "data-tower": t.direction})

    classes_g = ET.SubElement(root, "g", {"class": "classes"})
    for c in visible:
        cx, cy = centers[c.id]
        g = ET.SubElement(classes_g, "g", {"data-id": c.id, "data-w": str(c.w)})
        marks = _class_markers(c, family)
        for i, name in enumerate(marks):
            _svg_marker(g, name, cx + (i - (len(marks) - 1) / 2) * 7, cy)
        if c.label:
            ET.SubElement(g, "text", {"x": _n(cx + 5), "y": _n(cy - 5), "font-size": "7"}).text = c.label
    return ET.tostring(root, encoding="unicode") + "\n"


def _n(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _svg_marker(parent: ET.Element, name: str, cx: float, cy: float) -> None:
    attrs = {"data-marker": name}
    if name == "dot":
        ET.SubElement(parent, "circle", {**attrs, "cx": _n(cx), "cy": _n(cy), "r": "2.5", "fill": "black"})
    elif name in ("circle", "dotted-circle"):
        ET.SubElement(parent, "circle", {**attrs, "cx": _n(cx), "cy": _n(cy), "r": "3.5",
                                         "fill": "white", "stroke": "black"})
        if name == "dotted-circle":
            ET.SubElement(parent, "circle", {"cx": _n(cx), "cy": _n(cy), "r": "1", "fill": "black"})
    elif name in ("box", "open-box"):
        ET.SubElement(parent, "rect", {**attrs, "x": _n(cx - 3.5), "y": _n(cy - 3.5), "width": "7",
                                       "height": "7", "fill": "white", "stroke": "black"})
    else:
        ET.SubElement(parent, "text", {**attrs, "x": _n(cx), "y": _n(cy + 3), "font-size": "8",
                                       "text-anchor": "middle"}).text = name.split("-", 1)[1]


# -- export from Ext -----------------------------------------------------------

_MULTIPLIERS = (("h0", 0, 1, 0), ("h1", 1, 1, 1), ("h2", 3, 1, 2))


def from_ext(ext: "Ext", max_s: int, max_f: int | None = None,
             tags: dict[tuple[int, int, int], Sequence[str]] | None = None) -> ChartDocument:
    """Chart of Ext with one class per cyclic M2-summand.

    Lines record h0, h1 and h2 products that hit a generator (solid) or tau
    times a generator (dashed).  A generator at the top computed filtration
    that is a tau-free h0-multiple is drawn with an h0 tower and tagged
    ``truncated``.
    """
    max_f = ext.max_f if max_f is None else min(max_f, ext.max_f)
    tags = tags or {}
    gens: dict[str, tuple] = {}
    classes = []
    for s in range(0, max_s + 1):
        for f in range(0, max_f + 1):
            if not ext.in_range(s, f):
                continue
            for i, (x, k) in enumerate(sorted(ext.generators(s, f), key=lambda g: (-g[0].w, g[1] or 0))):
                cid = f"x{s}_{f}_{i}" if i else f"x{s}_{f}"
                gens[cid] = (x, k)
                classes.append(ChartClass(cid, s, f, x.w, k, tags=tuple(tags.get((s, f, x.w), ()))))
    factors = {name: ext.basis(s, f, w)[0] for name, s, f, w in _MULTIPLIERS}
    lines: list[ChartLine] = []
    towers: list[ChartTower] = []
    by_loc: dict[tuple[int, int], list[str]] = {}
    for c in classes:
        by_loc.setdefault((c.s, c.f), []).append(c.id)
    for c in classes:
        x, _ = gens[c.id]
        for name, ds, df, _dw in _MULTIPLIERS:
            target = (c.s + ds, c.f + df)
            if target[1] > max_f or target[0] > max_s or not ext.in_range(*target):
                continue
            p = ext.multiply(factors[name], x)
            if ext.is_zero(p):
                continue
            for cid in by_loc.get(target, []):
                y, _ = gens[cid]
                e = y.w - p.w
                if e in (0, 1) and ext.equal(y.tau(e), p):
                    lines.append(ChartLine(name, c.id, cid, "solid" if e == 0 else "dashed"))
                    break
    h0_targets = {ln.dst for ln in lines if ln.kind == "h0" and ln.style == "solid"}
    for c in classes:
        if c.f == max_f and c.tau_order is None and c.id in h0_targets:
            towers.append(ChartTower(c.id, "h0"))
    tower_ids = {t.base for t in towers}
    classes = [replace(c, tags=c.tags + ("truncated",)) if c.id in tower_ids else c for c in classes]
    return ChartDocument(tuple(classes), tuple(lines), tuple(towers))
