from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from botmf.ext import (
    MinimalResolution,
    WindowError,
    adams_cover,
    bo_chart,
    bo_tmf_chart,
    brute_force_ext,
    bsp_chart,
    canonical_text,
    chart_from_text,
    chart_to_text,
    cofiber_reconciliation,
    davis_compare,
    davis_prediction,
    ext_chart,
    first_difference,
    omega_chart,
    ring_presentation_report,
    tower_bottoms,
    tower_supports_h1,
    union,
)
from botmf.homology import brown_gitler, moore_smash_bg1, ring_homology
from botmf.modules import (
    ModuleError,
    direct_sum,
    dualize,
    free_module,
    permute_basis,
    restrict,
    suspend,
    tensor,
    trivial,
)

GOLDEN = Path(__file__).parent / "golden" / "tmf_chart.chart"


def F2():
    return trivial(0, side="left")


def test_resolution_of_f2():
    res = MinimalResolution(F2(), 3, 8)
    gens = {s: sorted(g.t for g in res.gens[s]) for s in range(4)}
    assert gens == {0: [0], 1: [1, 2], 2: [2, 4], 3: [3, 7]}
    assert res.is_minimal()
    assert res.euler_violations() == []


def test_free_module_has_no_higher_generators():
    res = MinimalResolution(free_module([0]), 4, 20)
    assert res.generator_counts() == {(0, 0): 1}


def test_moore_smash_bg1_is_cyclic():
    res = MinimalResolution(dualize(moore_smash_bg1()), 1, 10)
    assert [g.t for g in res.gens[0]] == [0]


def test_right_modules_rejected():
    with pytest.raises(ModuleError):
        MinimalResolution(brown_gitler(1), 2, 4)


@pytest.mark.parametrize(
    "module",
    [F2, lambda: dualize(brown_gitler(1)), lambda: dualize(moore_smash_bg1()),
     lambda: dualize(tensor(brown_gitler(1), brown_gitler(1)))],
    ids=["F2", "BG1", "moore-bg1", "bg1-squared"],
)
def test_generator_counts_match_brute_force(module):
    M = module()
    res = MinimalResolution(M, 4, 12)
    assert res.generator_counts() == brute_force_ext(M, 4, 12)


def test_exactness_on_tmf():
    M = dualize(restrict(ring_homology("tmf", 48).module, 1))
    res = MinimalResolution(M, 16, 48)
    assert res.euler_violations() == []
    assert res.is_minimal()


def test_bo_chart():
    C = bo_chart(12, 8)
    assert [C.count(0, s) for s in range(9)] == [1] * 9
    assert C.count(1, 1) == 1 and C.count(2, 2) == 1 and C.count(3, 3) == 0
    h1 = {(C.positions()[a], C.positions()[b]) for a, b in C.h1}
    assert ((0, 0), (1, 1)) in h1 and ((1, 1), (2, 2)) in h1
    assert tower_bottoms(C) == [(0, 0), (4, 3), (8, 4), (12, 7)]


def test_edge_geometry():
    C = ext_chart(brown_gitler(2), 20, 10)
    pos = C.positions()
    for a, b in C.h0:
        (sa, fa), (sb, fb) = pos[a], pos[b]
        assert (sb, fb) == (sa, fa + 1)
    for a, b in C.h1:
        (sa, fa), (sb, fb) = pos[a], pos[b]
        assert (sb, fb) == (sa + 1, fa + 1)


def test_bsp_chart_tower_at_zero():
    C = bsp_chart(12, 8)
    assert (0, 0) in tower_bottoms(C)
    assert tower_supports_h1(C, 4, 1)


def test_suspended_bg1_window():
    C = ext_chart(suspend(brown_gitler(1), 12), 26, 7)
    heights = {st: sum(C.count(st, s) for s in range(8)) for st in (12, 16, 20, 24)}
    assert heights == {12: 8, 16: 7, 20: 4, 24: 3}
    pos = C.positions()
    h1 = sorted((pos[a], pos[b]) for a, b in C.h1)
    assert h1 == [((16, 1), (17, 2)), ((17, 2), (18, 3)), ((24, 5), (25, 6)), ((25, 6), (26, 7))]


def test_adams_cover_examples():
    C = bo_chart(8, 10)
    assert adams_cover(C, 0) is C
    one = adams_cover(C, 1)
    assert one.count(0, 0) == 1 and one.count(1, 0) == 1
    assert adams_cover(C, 3).count(4, 0) == 1
    with pytest.raises(ValueError):
        adams_cover(C, -1)


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4))
def test_adams_cover_composes(a, b):
    C = ext_chart(brown_gitler(2), 16, 12)
    assert adams_cover(adams_cover(C, a), b).signature() == adams_cover(C, a + b).signature()


def test_direct_sum_chart_is_union():
    A, B = brown_gitler(1), suspend(brown_gitler(2), 3)
    whole = ext_chart(direct_sum([A, B], ["a", "b"]), 16, 8)
    parts = union([ext_chart(A, 16, 8), ext_chart(B, 16, 8)], ["a", "b"])
    assert whole.signature() == parts.signature()


def test_permuted_basis_gives_same_canonical_chart():
    import random

    H = restrict(ring_homology("tmf", 48).module, 1)
    rnd = random.Random(7)
    P = permute_basis(H, {d: rnd.sample(range(H.dim(d)), H.dim(d)) for d in H.degrees()})
    a, b = ext_chart(H, 32, 16), ext_chart(P, 32, 16)
    assert canonical_text(a) == canonical_text(b)


def test_chart_serialization_round_trip():
    C = ext_chart(tensor(brown_gitler(1), brown_gitler(1)), 20, 10)
    text = chart_to_text(C)
    assert text.startswith("CHART v1 stem_max=20 s_max=10\n")
    assert chart_to_text(chart_from_text(text)) == text
    with pytest.raises(ValueError):
        chart_from_text("CHART v2\n")


@pytest.mark.parametrize("ns,ref,cover", [((1,), "bsp", 0), ((2,), "bo", 3), ((1, 1), "bo", 2), ((3,), "bsp", 3)])
def test_davis(ns, ref, cover):
    assert davis_prediction(ns) == (ref, cover)
    rep = davis_compare(ns)
    assert rep.ok, str(rep)


def test_davis_mismatch_is_reported():
    assert first_difference(bo_chart(8, 6), bsp_chart(8, 6)) is not None
    with pytest.raises(ValueError):
        davis_compare([0])


@pytest.fixture(scope="module")
def bt():
    return bo_tmf_chart(48, 32, 16)


def test_tmf_chart_matches_golden(bt):
    assert chart_to_text(bt.chart) == GOLDEN.read_text()


def test_census(bt):
    c = bt.census
    assert all(st % 4 == 0 for st, _ in c.tower_bottoms)
    assert c.positive_in_vacant_stems == []
    assert c.free_bottoms == []
    # where the eta-supporting towers actually start
    assert {st for st, _ in c.eta_towers} == {0, 8, 16, 24}


def test_stems_five_to_seven_empty_above_zero(bt):
    assert all(bt.chart.count(st, s) == 0 for st in (5, 6, 7) for s in range(1, 17))


def test_change_of_rings_union(bt):
    assert first_difference(bt.chart, omega_chart(48, 32, 16)) is None


def test_window_rule():
    with pytest.raises(WindowError) as err:
        bo_tmf_chart(40, 32, 16)
    assert err.value.minimal_degree == 48


def test_ring_report(bt):
    rep = ring_presentation_report(bt)
    assert rep.ok, rep.checks
    for key in ("sigma.8.0", "b0.present", "b0.no-h1", "b1.present", "mu0.present"):
        assert rep.checks[key]


@pytest.mark.parametrize("i", [0, 1])
def test_cofiber_reconciliation(i):
    rep = cofiber_reconciliation(i)
    base = 1 << (i + 5)
    assert rep.residue == []
    assert rep.b_position == (base - 4, 0)
    assert (base - 4, 0) in rep.new_generators
    assert rep.mu_readings["stem 2^(i+5)"] == ((base, 1), True)
    assert rep.mu_readings["stem 2^(i+4)"][1] is False
    assert sorted(rep.cancellations) == [(base + 2, 2), (base + 3, 3)]
    assert [a[1:3] for a in rep.annotations] == [(base - 4, 0), (base, 1), (base + 4, 4)]
    assert (base - 8, 0) in tower_bottoms(rep.black)
