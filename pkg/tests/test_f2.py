from hypothesis import given, settings, strategies as st

from botmf import f2

matrices = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=8))
)


@given(matrices)
def test_rank_nullity(data):
    ncols, rows = data
    ker = f2.kernel(rows, ncols)
    assert f2.rank(rows) + len(ker) == len(rows)
    for v in ker:
        assert f2.apply(rows, v) == 0
    assert f2.rank(ker) == len(ker)


@given(matrices, st.integers(0, 255))
def test_solve_finds_combination_when_in_span(data, c):
    ncols, rows = data
    c &= (1 << len(rows)) - 1
    target = f2.apply(rows, c)
    sol = f2.solve(rows, target, ncols)
    assert sol is not None
    assert f2.apply(rows, sol) == target


def test_solve_rejects_vector_outside_span():
    assert f2.solve([0b011, 0b110], 0b001, 3) is None


@given(matrices)
def test_transpose_is_involution(data):
    ncols, rows = data
    assert f2.transpose(f2.transpose(rows, ncols), len(rows)) == [r for r in rows]


def test_compose_order():
    first = [0b10, 0b01]  # swap
    second = [0b01, 0b00]  # project to the first coordinate
    assert f2.compose(first, second) == [0b00, 0b01]


@settings(max_examples=50)
@given(st.lists(st.integers(0, 63), max_size=10), st.integers(0, 63))
def test_echelon_contains_matches_solve(rows, v):
    E = f2.Echelon(rows)
    assert E.contains(v) == (f2.solve(rows, v, 6) is not None)


def test_bitstring_round_trip():
    assert f2.to_bitstring(0b1011, 6) == "110100"
    assert f2.from_bitstring("110100") == 0b1011
