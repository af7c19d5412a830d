import pytest

from botmf.homology import (
    bo_brown_gitler,
    brown_gitler,
    check_linear,
    cokernel_dims,
    construction,
    monomials_of,
    omega_model,
    omega_summands,
    pairing_multiplication,
    poincare_series,
    ring_homology,
    splitting_image,
    v_bo,
    v_tmf,
    verify_tmf_splitting,
    weight_component,
    weight_violations,
    block_diagonal,
)
from botmf.modules import is_isomorphic_via, restrict, strip_free_summands
from botmf.steenrod import format_monomial, parse_monomial

GEN_DEGREES = {"tmf": (8, 12, 14, 15, 31), "bo": (4, 6, 7, 15, 31), "hz": (2, 3, 7, 15, 31)}


def test_tmf_dims_small():
    assert ring_homology("tmf", 16).module.dims(0, 16) == [1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1]


@pytest.mark.parametrize("ring", ["tmf", "bo", "hz"])
def test_poincare_series(ring):
    assert ring_homology(ring, 48).module.dims(0, 48) == poincare_series(GEN_DEGREES[ring], 48)


def test_small_bases():
    hz = ring_homology("hz", 3)
    assert [format_monomial(m) for d in (0, 2, 3) for m in monomials_of(hz.module, d)] == ["1", "z1^2", "z2"]
    assert ring_homology("bo", 4).module.dims(0, 4) == [1, 0, 0, 0, 1]


def test_rings_satisfy_relations():
    assert ring_homology("tmf", 48).module.satisfies_relations()
    assert ring_homology("bo", 48).module.satisfies_relations()


def test_brown_gitler_modules():
    assert brown_gitler(0).dims() == [1]
    labels = {format_monomial(m) for d in (0, 2, 3) for m in monomials_of(brown_gitler(1), d)}
    assert labels == {"1", "z1^2", "z2"}
    assert brown_gitler(1).total_dim == 3
    assert brown_gitler(2).total_dim == 7
    assert "z3" in brown_gitler(2).basis[7]
    assert brown_gitler(3).dims() == [1, 0, 1, 1, 1, 1, 2, 2, 1, 2, 1]
    assert bo_brown_gitler(1).total_dim > 0


def test_weight_eight_component():
    N = weight_component(ring_homology("tmf", 48), 8).module
    labels = sorted(l for labs in N.basis.values() for l in labs)
    assert labels == sorted(["z1^8", "z2^4", "z3^2", "z4"])
    assert weight_component(ring_homology("tmf", 48), 4).module.total_dim == 0


def test_weights_tmf():
    assert weight_violations("tmf") == []
    assert all(block_diagonal("tmf", k) for k in (1, 2, 4))


def test_weight_stability_stops_at_sq8():
    # Sq^8 is outside A(2) and can lower the weight
    bad = weight_violations("tmf", 48, [8])
    assert (parse_monomial("z1^8 z2^4"), 8, parse_monomial("z2^4")) in bad


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_v_tmf_is_isomorphism(i):
    f = v_tmf(i)
    assert check_linear(f, 42)
    assert is_isomorphic_via(f, 42)


@pytest.mark.parametrize("j", [0, 1, 2, 3, 4])
def test_v_bo_is_isomorphism(j):
    f = v_bo(j)
    assert check_linear(f, 42)
    assert is_isomorphic_via(f, 42)


def test_splitting_certificate():
    cert = verify_tmf_splitting(48)
    assert cert.ok
    assert cert.certified_through == 42


def test_splitting_image_examples():
    assert splitting_image(parse_monomial("z1^8")) == (0, 1, ())
    assert splitting_image(parse_monomial("z2^4")) == (1, 0, ())
    assert splitting_image(parse_monomial("z2^4 z3^2")) == (2, 0, parse_monomial("z1^2"))


def test_omega_model_dims_equal_tmf_dims():
    assert omega_model(48).dims(0, 48) == ring_homology("tmf", 48).module.dims(0, 48)
    assert (1, 0) in omega_summands(12)


def test_pairing_cokernel_is_degree_seven():
    f = pairing_multiplication(1, 1)
    assert check_linear(f)
    assert cokernel_dims(f) == {7: 1}


def test_tmf_has_no_free_summands_through_48():
    reduced, free = strip_free_summands(restrict(ring_homology("tmf", 48).module, 1))
    assert free == []


def test_construction_names():
    assert construction("bg:1").total_dim == 3
    assert construction("moore-bg1").total_dim == 6
    assert construction("n:tmf:8", 48).total_dim == 4
    with pytest.raises(ValueError):
        construction("nonsense")
    with pytest.raises(ValueError):
        construction("bg:x")


def test_next_pairing_cokernel_is_z4():
    f = pairing_multiplication(2, 2)
    assert check_linear(f)
    assert cokernel_dims(f) == {15: 1}
