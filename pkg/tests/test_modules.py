import pytest
from hypothesis import given, settings, strategies as st

from botmf.homology import brown_gitler, moore_smash_bg1, ring_homology
from botmf.modules import (
    ModuleError,
    ModuleMap,
    change_basis,
    check_linear,
    direct_sum,
    dualize,
    free_module,
    margolis_homology,
    module_from_text,
    module_to_text,
    moore,
    permute_basis,
    q_squares_vanish,
    restrict,
    strip_free_summands,
    suspend,
    tensor,
    trivial,
    truncate,
)


def test_moore_and_trivial_satisfy_relations():
    for side in ("left", "right"):
        assert moore(side=side).satisfies_relations()
        assert trivial(3, side=side).satisfies_relations()


def test_free_module_shape():
    F = free_module([0])
    assert F.total_dim == 8
    assert F.dims() == [1, 1, 1, 2, 1, 1, 1]
    assert F.satisfies_relations()


@pytest.mark.parametrize("bottoms", [[0], [2], [0, 3]])
def test_margolis_homology_of_free_modules_vanishes(bottoms):
    F = free_module(bottoms)
    assert margolis_homology(F, 0) == {}
    assert margolis_homology(F, 1) == {}
    assert q_squares_vanish(F)


def test_margolis_of_trivial_module():
    assert margolis_homology(trivial(0), 0) == {0: 1}
    assert margolis_homology(trivial(0), 1) == {0: 1}


def test_dualize_twice_is_identity():
    M = brown_gitler(2)
    assert dualize(dualize(M)) == M


def test_tensor_dims_and_relations():
    T = tensor(brown_gitler(1), brown_gitler(1))
    assert T.dims() == [1, 0, 2, 2, 1, 2, 1]
    assert T.satisfies_relations()
    assert moore_smash_bg1().dims() == [1, 1, 1, 2, 1]


def test_tensor_with_trivial_is_suspension():
    M = brown_gitler(2)
    T = tensor(trivial(4), M)
    assert T.dims() == suspend(M, 4).dims()
    assert T.satisfies_relations()


def test_direct_sum_dims():
    S = direct_sum([brown_gitler(1), suspend(moore(), 2)], ["a", "b"])
    assert S.dims() == [1, 0, 2, 2]
    assert S.satisfies_relations()


def test_strip_free_summands():
    M = direct_sum([brown_gitler(1), dualize(free_module([2], side="left"))], ["bg", "free"])
    reduced, bottoms = strip_free_summands(M)
    assert bottoms == [2]
    assert reduced.dims() == brown_gitler(1).dims()


def test_strip_free_on_known_modules():
    assert strip_free_summands(tensor(brown_gitler(1), brown_gitler(1)))[1] == []
    assert strip_free_summands(brown_gitler(4))[1] == [6]


def test_restrict_and_truncate():
    H = ring_homology("tmf", 24).module
    R = restrict(H, 1)
    assert R.alg == 1 and R.satisfies_relations()
    assert truncate(R, 12).dims() == R.dims(0, 12)
    with pytest.raises(ModuleError):
        restrict(R, 2)


def test_serialization_round_trip():
    for M in (brown_gitler(3), dualize(moore_smash_bg1()), ring_homology("tmf", 20).module):
        text = module_to_text(M)
        back = module_from_text(text)
        assert module_to_text(back) == text
        assert back == M


def test_serialization_header():
    assert module_to_text(brown_gitler(1)).splitlines()[0] == "MODULE v1 BG(1) bound=4 alg=A(1)"


def test_linearity_detects_a_bad_map():
    M = brown_gitler(1)
    # send the bottom class to zero but keep the rest: not linear since z1^2 . Sq^2 = 1
    mats = {0: [0], 2: [1], 3: [1]}
    f = ModuleMap(M, M, 0, mats, "bad")
    assert not check_linear(f)
    assert check_linear(ModuleMap(M, M, 0, {0: [1], 2: [1], 3: [1]}, "id"))


def test_change_basis_rejects_singular_matrix():
    M = moore_smash_bg1()
    with pytest.raises(ModuleError):
        change_basis(M, {3: [1, 1]})


@settings(max_examples=15, deadline=None)
@given(st.randoms(use_true_random=False))
def test_permuted_basis_keeps_relations(rnd):
    M = tensor(brown_gitler(1), brown_gitler(2))
    perms = {d: rnd.sample(range(M.dim(d)), M.dim(d)) for d in M.degrees()}
    P = permute_basis(M, perms)
    assert P.satisfies_relations()
    assert P.dims() == M.dims()
