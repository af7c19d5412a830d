"""Dense linear algebra over F2 with rows packed into Python ints.

A matrix is a list of ints; row ``i`` has bit ``j`` set when entry ``(i, j)``
is 1.  A linear map is stored by the images of the source basis vectors, so
``rows[i]`` is the image of basis vector ``i`` written in the target basis.
Pivots are always taken on the lowest set bit.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple


def low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def bits(x: int) -> Iterable[int]:
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


def popcount(x: int) -> int:
    return bin(x).count("1")


class Echelon:
    """Incrementally built row echelon form keyed by pivot column."""

    def __init__(self, rows: Iterable[int] = ()):
        self.pivots: Dict[int, int] = {}
        for r in rows:
            self.add(r)

    def reduce(self, v: int) -> int:
        # Only pivots that are set in v need clearing; each step removes the
        # lowest pivot bit present, so the loop terminates.
        out = 0
        while v:
            p = low_bit(v)
            row = self.pivots.get(p)
            if row is None:
                out |= 1 << p
                v ^= 1 << p
            else:
                v ^= row
        return out

    def add(self, v: int) -> bool:
        """Add ``v`` to the span; return True when it was independent."""
        v = self.reduce(v)
        if not v:
            return False
        self.pivots[low_bit(v)] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def basis(self) -> List[int]:
        return [self.pivots[p] for p in sorted(self.pivots)]


def rank(rows: Iterable[int]) -> int:
    return Echelon(rows).rank


def kernel(rows: Sequence[int], ncols: Optional[int] = None) -> List[int]:
    """Basis of the kernel of the map whose basis images are ``rows``.

    Kernel vectors are bitmasks over the source basis.
    """
    if ncols is None:
        ncols = max((r.bit_length() for r in rows), default=0)
    mask = (1 << ncols) - 1
    pivots: Dict[int, int] = {}
    out = []
    for i, r in enumerate(rows):
        v = r | (1 << (ncols + i))
        while v & mask:
            p = low_bit(v)
            row = pivots.get(p)
            if row is None:
                pivots[p] = v
                break
            v ^= row
        else:
            out.append(v >> ncols)
    return out


def image_rank_and_kernel(rows: Sequence[int], ncols: int) -> Tuple[int, List[int]]:
    ker = kernel(rows, ncols)
    return len(rows) - len(ker), ker


def solve(rows: Sequence[int], target: int, ncols: Optional[int] = None) -> Optional[int]:
    """Return a bitmask ``c`` with XOR of ``rows[i]`` over ``i in c`` equal to ``target``."""
    if ncols is None:
        ncols = max([target.bit_length()] + [r.bit_length() for r in rows])
    mask = (1 << ncols) - 1
    pivots: Dict[int, int] = {}
    for i, r in enumerate(rows):
        v = r | (1 << (ncols + i))
        while v & mask:
            p = low_bit(v)
            row = pivots.get(p)
            if row is None:
                pivots[p] = v
                break
            v ^= row
    v = target
    while v & mask:
        p = low_bit(v)
        row = pivots.get(p)
        if row is None:
            return None
        v ^= row
    return v >> ncols


def apply(rows: Sequence[int], v: int) -> int:
    out = 0
    for i in bits(v):
        out ^= rows[i]
    return out


def compose(first: Sequence[int], second: Sequence[int]) -> List[int]:
    """Row-map of ``x -> second(first(x))``."""
    return [apply(second, r) for r in first]


def transpose(rows: Sequence[int], ncols: int) -> List[int]:
    out = [0] * ncols
    for i, r in enumerate(rows):
        for j in bits(r):
            out[j] |= 1 << i
    return out


def identity(n: int) -> List[int]:
    return [1 << i for i in range(n)]


def to_bitstring(v: int, n: int) -> str:
    return "".join("1" if (v >> j) & 1 else "0" for j in range(n))


def from_bitstring(s: str) -> int:
    return sum(1 << j for j, ch in enumerate(s) if ch == "1")
