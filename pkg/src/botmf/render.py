"""Text and SVG renderings of Ext charts and module cell diagrams."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Set, Tuple

from . import f2
from .ext import ExtChart, tower_bottoms
from .modules import GradedModule, ModuleError, change_basis

Bidegree = Tuple[int, int]

PALETTE = ["#000000", "#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#b9770e"]


@dataclass
class RenderSpec:
    stem_min: int = 0
    stem_max: Optional[int] = None
    s_min: int = 0
    s_max: Optional[int] = None
    cell: int = 24
    elide_above: Optional[int] = None  # longest tower segment drawn before the marker
    show_labels: bool = False
    tag_classes: Dict[str, str] = field(default_factory=dict)
    max_cells: int = 64  # cap on module size for cell diagrams

    def window(self, C: ExtChart) -> Tuple[int, int, int, int]:
        hi = C.stem_max if self.stem_max is None else self.stem_max
        top = C.s_max if self.s_max is None else self.s_max
        if hi < self.stem_min or top < self.s_min:
            raise ValueError("empty render window")
        if self.elide_above is not None and self.elide_above < 1:
            raise ValueError("elision threshold must be at least 1")
        return self.stem_min, hi, self.s_min, top


@dataclass
class Layout:
    visible: Dict[Bidegree, List[str]]
    elided: Dict[Bidegree, int]  # marker cell -> number of hidden classes
    clipped: int
    window: Tuple[int, int, int, int]

    def shown(self) -> Set[str]:
        return {lab for labs in self.visible.values() for lab in labs}


def _touches_h1(C: ExtChart, labels) -> bool:
    labels = set(labels)
    return any(a in labels or b in labels for a, b in C.h1)


def layout(C: ExtChart, spec: RenderSpec) -> Layout:
    lo, hi, s_lo, s_hi = spec.window(C)
    visible = {}
    clipped = 0
    for (st, s), labs in C.classes.items():
        if lo <= st <= hi and s_lo <= s <= s_hi:
            visible[(st, s)] = list(labs)
        else:
            clipped += len(labs)
    elided: Dict[Bidegree, int] = {}
    if spec.elide_above is not None:
        bottoms = tower_bottoms(C)
        for stem in sorted({st for st, _ in bottoms}):
            births = sorted(s for st, s in bottoms if st == stem)
            # cells that hold nothing but tower classes
            def pure(s):
                active = sum(1 for b in births if b <= s)
                labs = visible.get((stem, s), [])
                return labs and len(labs) == active and not _touches_h1(C, labs)

            cut = births[0] + spec.elide_above
            if cut > s_hi or not all(pure(s) for s in range(cut, s_hi + 1)):
                continue
            hidden = 0
            for s in range(cut, s_hi + 1):
                hidden += len(visible.pop((stem, s), []))
            elided[(stem, cut)] = hidden
    return Layout(visible, elided, clipped, (lo, hi, s_lo, s_hi))


def _footer(C: ExtChart, lay: Layout) -> List[str]:
    lo, hi, s_lo, s_hi = lay.window
    out = []
    if lay.clipped:
        out.append(f"clipped: {lay.clipped} classes outside stems {lo}..{hi}, s {s_lo}..{s_hi}")
    for (st, s), n in sorted(lay.elided.items()):
        out.append(f"elided: {n} tower class{'es' if n != 1 else ''} in stem {st} from s={s}")
    return out


def render_ascii(C: ExtChart, spec: Optional[RenderSpec] = None) -> str:
    """Grid with one column pair per stem and one row pair per filtration."""
    spec = spec or RenderSpec()
    lay = layout(C, spec)
    lo, hi, s_lo, s_hi = lay.window
    width = 2 * (hi - lo) + 1
    height = 2 * (s_hi - s_lo) + 1
    grid = [[" "] * width for _ in range(height)]
    pos = {lab: p for p, labs in lay.visible.items() for lab in labs}

    def put(x, y, ch):
        if 0 <= x < width and 0 <= y < height:
            grid[y][x] = ch

    for (st, s), labs in lay.visible.items():
        n = len(labs)
        put(2 * (st - lo), 2 * (s - s_lo), "•" if n == 1 else str(min(n, 9)))
    for a, b in sorted(C.h0):
        if a in pos and b in pos:
            st, s = pos[a]
            put(2 * (st - lo), 2 * (s - s_lo) + 1, "|")
    for a, b in sorted(C.h1):
        if a in pos and b in pos:
            st, s = pos[a]
            put(2 * (st - lo) + 1, 2 * (s - s_lo) + 1, "/")
    for st, s in lay.elided:
        put(2 * (st - lo), 2 * (s - s_lo), "@")
    lines = []
    for y in range(height - 1, -1, -1):
        label = f"{y // 2 + s_lo:>3} " if y % 2 == 0 else "    "
        lines.append((label + "".join(grid[y])).rstrip())
    axis = [" "] * (width + 4)
    for st in range(lo, hi + 1):
        if st % 4 == 0:
            for i, ch in enumerate(str(st)):
                axis[2 * (st - lo) + i] = ch
    lines.append("    " + "".join(axis).rstrip())
    lines += _footer(C, lay)
    return "\n".join(lines) + "\n"


def _css_name(tag: str) -> str:
    return "tag-" + re.sub(r"[^A-Za-z0-9_-]", "_", tag)


def _tag(label: str) -> str:
    return label.rsplit("/", 1)[0] if "/" in label else ""


def _class_offsets(n: int, cell: int) -> List[float]:
    return [cell * (i + 1) / (n + 1) - cell / 2 for i in range(n)]


def circle_radius(spec: RenderSpec, crowd: int = 1) -> float:
    """Dot radius in a cell holding ``crowd`` classes; packed dots never touch."""
    return min(spec.cell * 0.12, spec.cell * 0.45 / (crowd + 1))


def class_centers(C: ExtChart, spec: RenderSpec) -> Dict[str, Tuple[float, float, float]]:
    """Label -> (x, y, radius); crowded cells are packed horizontally."""
    lay = layout(C, spec)
    lo, hi, s_lo, s_hi = lay.window
    margin = spec.cell
    out = {}
    for (st, s), labs in sorted(lay.visible.items()):
        x0 = margin + (st - lo) * spec.cell
        y = margin + (s_hi - s) * spec.cell
        r = circle_radius(spec, len(labs))
        for lab, dx in zip(sorted(labs), _class_offsets(len(labs), spec.cell)):
            out[lab] = (x0 + dx if len(labs) > 1 else x0, y, r)
    return out


def render_svg(C: ExtChart, spec: Optional[RenderSpec] = None) -> str:
    spec = spec or RenderSpec()
    lay = layout(C, spec)
    lo, hi, s_lo, s_hi = lay.window
    cell = spec.cell
    margin = cell
    W = margin * 2 + (hi - lo) * cell
    H = margin * 2 + (s_hi - s_lo) * cell
    centers = class_centers(C, spec)
    tags = sorted({_tag(lab) for lab in centers})
    styles = dict(spec.tag_classes)
    for i, t in enumerate(t for t in tags if t not in styles):
        styles[t] = PALETTE[i % len(PALETTE)]
    r = circle_radius(spec)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        "<style>",
        ".axis{stroke:#999;stroke-width:0.5}",
        ".h0,.h1{stroke:#000;stroke-width:1}",
        ".marker{fill:none;stroke:#000}",
    ]
    for t in sorted(styles):
        out.append(f".{_css_name(t)}{{fill:{styles[t]};stroke:{styles[t]}}}")
    out.append("</style>")
    for st in range(lo, hi + 1):
        x = margin + (st - lo) * cell
        out.append(f'<text class="axis" x="{x}" y="{H - margin / 4:g}" font-size="{cell / 3:g}" text-anchor="middle">{st}</text>')
    for s in range(s_lo, s_hi + 1):
        y = margin + (s_hi - s) * cell
        out.append(f'<text class="axis" x="{margin / 3:g}" y="{y:g}" font-size="{cell / 3:g}">{s}</text>')
    for kind, edges in (("h0", C.h0), ("h1", C.h1)):
        for a, b in sorted(edges):
            if a in centers and b in centers:
                (x1, y1, _), (x2, y2, _) = centers[a], centers[b]
                out.append(f'<line class="{kind} {_css_name(_tag(a))}" x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}"/>')
    for (st, s), labs in sorted(lay.visible.items()):
        for lab in sorted(labs):
            x, y, rc = centers[lab]
            out.append(f'<circle class="cls {_css_name(_tag(lab))}" cx="{x:g}" cy="{y:g}" r="{rc:g}" data-label="{lab}"/>')
            if spec.show_labels:
                out.append(f'<text x="{x + r:g}" y="{y - r:g}" font-size="{cell / 4:g}">{lab}</text>')
    for (st, s), n in sorted(lay.elided.items()):
        x = margin + (st - lo) * cell
        y = margin + (s_hi - s) * cell
        out.append(f'<circle class="marker" cx="{x}" cy="{y}" r="{2 * r:g}" data-elided="{n}"/>')
        out.append(f'<circle class="marker" cx="{x}" cy="{y}" r="{r / 2:g}"/>')
    for line in _footer(C, lay):
        out.append(f"<!-- {line} -->")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# cell diagrams


def cell_edges(M: GradedModule) -> Dict[int, List[Tuple[Tuple[int, int], Tuple[int, int]]]]:
    """Nonzero matrix entries of Sq^1 and Sq^2 as ((deg, i), (deg, j)) pairs."""
    out: Dict[int, List] = {1: [], 2: []}
    for k in (1, 2):
        for d in M.degrees():
            e = d + M.step(k)
            for i, row in enumerate(M.act[k][d]):
                for j in f2.bits(row):
                    out[k].append(((d, i), (e, j)))
    return out


def _edge_count(M: GradedModule) -> int:
    return sum(len(v) for v in cell_edges(M).values())


def _invertible(n: int) -> List[List[int]]:
    return [list(rows) for rows in product(range(1, 1 << n), repeat=n) if f2.rank(rows) == n]


def sparsest_basis(M: GradedModule, budget: int = 20000) -> GradedModule:
    """Change basis to minimize the number of drawn Sq^1/Sq^2 edges.

    Exhaustive over degrees of dimension >= 2 while the search fits in
    ``budget``; otherwise the module is returned unchanged.
    """
    wide = [d for d in M.degrees() if M.dim(d) >= 2]
    choices = [_invertible(M.dim(d)) for d in wide]
    size = 1
    for c in choices:
        size *= len(c)
    if not wide or size > budget:
        return M
    best, best_n = M, _edge_count(M)
    for combo in product(*choices):
        cand = change_basis(M, dict(zip(wide, combo)))
        n = _edge_count(cand)
        if n < best_n:
            best, best_n = cand, n
    return best


def render_cell_diagram(M: GradedModule, spec: Optional[RenderSpec] = None) -> str:
    """Nodes by degree; straight segments for Sq^1 and arcs for Sq^2."""
    spec = spec or RenderSpec()
    if M.total_dim > spec.max_cells:
        raise ModuleError(f"module has {M.total_dim} cells, cap is {spec.max_cells}")
    if 1 not in M.gens or 2 not in M.gens:
        raise ModuleError("cell diagrams need Sq^1 and Sq^2")
    cell = spec.cell
    degs = M.degrees()
    lo = degs[0] if degs else 0
    hi = degs[-1] if degs else 0
    tall = max((M.dim(d) for d in degs), default=1)
    W = cell * (hi - lo + 2)
    H = cell * (tall + 2)
    pos = {}
    for d in degs:
        for i in range(M.dim(d)):
            pos[(d, i)] = (cell + (d - lo) * cell, H - cell - i * cell)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        "<style>.sq1,.sq2{fill:none;stroke:#000;stroke-width:1}.cell{fill:#fff;stroke:#000}</style>",
    ]
    edges = cell_edges(M)
    for a, b in sorted(edges[1]):
        (x1, y1), (x2, y2) = pos[a], pos[b]
        out.append(f'<line class="sq1" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    for a, b in sorted(edges[2]):
        (x1, y1), (x2, y2) = pos[a], pos[b]
        mx, my = (x1 + x2) / 2, min(y1, y2) + cell * 0.8
        out.append(f'<path class="sq2" d="M {x1} {y1} Q {mx:g} {my:g} {x2} {y2}"/>')
    for (d, i), (x, y) in sorted(pos.items()):
        lab = M.basis[d][i]
        out.append(f'<circle class="cell" cx="{x}" cy="{y}" r="{cell * 0.15:g}" data-degree="{d}" data-label="{lab}"/>')
    for d in degs:
        out.append(f'<text x="{cell + (d - lo) * cell}" y="{H - cell / 4:g}" font-size="{cell / 3:g}" text-anchor="middle">{d}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
