import pytest
from hypothesis import given, settings, strategies as st

from botmf.steenrod import (
    ONE,
    ZetaPolynomial,
    algebra,
    degree_of,
    format_monomial,
    generator_monomials,
    monomials_in,
    parse_monomial,
    sq_action,
    sq_monomial,
    subalgebra_operators,
    top_degree,
    trim,
    weight_of,
)

monomials = st.lists(st.integers(0, 3), min_size=0, max_size=4).map(trim)


def P(text):
    return ZetaPolynomial.parse(text)


def test_degree_and_weight():
    m = parse_monomial("z1^8 z2^4")
    assert degree_of(m) == 20
    assert weight_of(m) == 16
    assert format_monomial(m) == "z1^8 z2^4"
    assert format_monomial(ONE) == "1"


def test_basic_squares():
    assert sq_action(P("z1"), 1) == P("1")
    assert sq_action(P("z2"), 1) == P("z1^2")
    assert sq_action(P("z2"), 2) == ZetaPolynomial()
    assert sq_action(P("z2"), 3) == P("1")
    assert sq_action(P("z1^2"), 1) == ZetaPolynomial()
    assert sq_action(P("z1^2"), 2) == P("1")


def test_sq_zero_and_out_of_range():
    p = P("z1^2 z2")
    assert sq_action(p, 0) == p
    assert sq_action(p, 6) == ZetaPolynomial()
    assert sq_action(p, 5) == P("1")


def test_non_homogeneous_input_rejected():
    with pytest.raises(ValueError):
        sq_action(P("z1 + z2"), 1)


def test_composition_convention():
    # x . Sq^3 = (x . Sq^1) . Sq^2 on the right
    for m in monomials_in(generator_monomials("dual", 12), 12):
        x = ZetaPolynomial([m])
        assert sq_action(x, 3) == sq_action(sq_action(x, 1), 2)


@settings(max_examples=60)
@given(monomials, monomials, st.integers(0, 8))
def test_cartan_formula(a, b, k):
    lhs = sq_action(ZetaPolynomial([a]) * ZetaPolynomial([b]), k)
    rhs = ZetaPolynomial()
    for i in range(k + 1):
        rhs = rhs + sq_action(ZetaPolynomial([a]), i) * sq_action(ZetaPolynomial([b]), k - i)
    assert lhs == rhs


@settings(max_examples=60)
@given(monomials, st.integers(1, 8))
def test_squares_lower_degree_and_never_raise_weight(m, k):
    for term in sq_monomial(m, k):
        assert degree_of(term) == degree_of(m) - k
        assert weight_of(term) <= weight_of(m)


@settings(max_examples=40)
@given(monomials)
def test_adem_relations_on_the_dual(m):
    x = ZetaPolynomial([m])
    assert sq_action(sq_action(x, 1), 1) == ZetaPolynomial()
    # Sq^2 Sq^2 = Sq^3 Sq^1 with x.(ab) = (x.a).b
    assert sq_action(sq_action(x, 2), 2) == sq_action(sq_action(x, 3), 1)


@pytest.mark.parametrize("n,dim,top", [(0, 2, 1), (1, 8, 6), (2, 64, 23)])
def test_subalgebra_dimensions(n, dim, top):
    A = algebra(n)
    assert A.dimension == dim
    assert A.top == top == top_degree(n)


def test_a1_is_associative_and_unital():
    A = subalgebra_operators(1, 24)
    assert A.is_associative()
    assert A.is_unital()


def test_truncation_below_faithful_degree_rejected():
    with pytest.raises(ValueError):
        subalgebra_operators(2, 10)


def test_a1_basis_words():
    assert set(algebra(1).words) == {(), (1,), (2,), (2, 1), (1, 2), (1, 2, 1), (2, 1, 2), (2, 1, 2, 1)}
