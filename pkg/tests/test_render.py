from itertools import combinations

import pytest

from botmf.ext import ExtChart, bo_chart, bo_tmf_chart, chart_from_text, chart_to_text, union
from botmf.homology import brown_gitler, moore_smash_bg1
from botmf.modules import ModuleError, dualize, moore
from botmf.render import (
    RenderSpec,
    cell_edges,
    class_centers,
    render_ascii,
    render_cell_diagram,
    render_svg,
    sparsest_basis,
)


def test_empty_chart_has_axes():
    out = render_ascii(ExtChart(4, 2))
    assert "•" not in out
    assert out.splitlines()[-1].split() == ["0", "4"]


def test_single_class_position():
    C = ExtChart(4, 2, {(2, 1): ["x"]})
    lines = render_ascii(C).splitlines()
    row = next(ln for ln in lines if ln.startswith("  1 "))
    assert row.index("•") == 4 + 2 * 2


def test_bo_window():
    out = render_ascii(bo_chart(2, 4), RenderSpec(stem_max=2))
    lines = out.splitlines()
    assert lines[-2].startswith("  0 •")
    assert sum(ln.count("•") for ln in lines) == 7
    assert sum(ln.count("/") for ln in lines) == 2


def test_clipping_is_reported():
    out = render_ascii(bo_chart(8, 6), RenderSpec(stem_max=4, s_max=3))
    assert "clipped:" in out


def test_elision_marker_and_footer():
    out = render_ascii(bo_chart(4, 8), RenderSpec(elide_above=3))
    assert "@" in out
    assert "elided: 6 tower classes in stem 0 from s=3" in out
    with pytest.raises(ValueError):
        render_ascii(bo_chart(4, 8), RenderSpec(elide_above=0))


def test_svg_counts_and_determinism():
    C = bo_tmf_chart().chart
    svg = render_svg(C)
    assert svg.count('<circle class="cls') == C.total
    assert svg.count("<line class=\"h0") == len(C.h0)
    assert svg.count("<line class=\"h1") == len(C.h1)
    assert render_svg(chart_from_text(chart_to_text(C))) == svg


def test_tmf_chart_has_no_overlaps():
    C = bo_tmf_chart().chart
    spec = RenderSpec()
    pts = sorted(class_centers(C, spec).values())
    for (x1, y1, r1), (x2, y2, r2) in combinations(pts, 2):
        assert (x1 - x2) ** 2 + (y1 - y2) ** 2 > (r1 + r2) ** 2


def test_provenance_classes():
    C = union([bo_chart(4, 2), bo_chart(4, 2).shifted(1)], ["black", "red"])
    svg = render_svg(C)
    assert "tag-black" in svg and "tag-red" in svg
    assert "style=" not in svg


def test_cell_diagram_moore():
    svg = render_cell_diagram(moore())
    assert svg.count('<circle class="cell"') == 2
    assert svg.count('class="sq1"') == 1
    assert svg.count('class="sq2"') == 0


def test_cell_diagram_bg1():
    M = dualize(brown_gitler(1))
    svg = render_cell_diagram(M)
    assert svg.count('<circle class="cell"') == 3
    edges = cell_edges(M)
    assert [(a[0], b[0]) for a, b in edges[1]] == [(2, 3)]
    assert [(a[0], b[0]) for a, b in edges[2]] == [(0, 2)]


def test_cell_diagram_moore_bg1():
    M = sparsest_basis(dualize(moore_smash_bg1()))
    svg = render_cell_diagram(M)
    assert svg.count('<circle class="cell"') == 6
    assert svg.count('class="sq1"') == 3
    assert svg.count('class="sq2"') == 3


def test_cell_diagram_cap():
    with pytest.raises(ModuleError):
        render_cell_diagram(brown_gitler(4), RenderSpec(max_cells=10))
