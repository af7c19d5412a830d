"""The dual Steenrod algebra in the zeta basis.

Monomials are tuples of exponents ``(e_1, ..., e_k)`` with trailing zeros
trimmed; ``()`` is the identity.  Polynomials are sets of monomials with
implicit coefficient 1.  The right action of the total square is determined
by ``zeta_n . Sq = sum_{i=0}^{n} zeta_{n-i}^(2^i)`` (with ``zeta_0 = 1``),
extended multiplicatively, and ``Sq^k`` is the part that lowers degree by k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import f2

Monomial = Tuple[int, ...]

DEFAULT_DEGREE_BOUND = 48
# Generators of index > MAX_INDEX never fit under any bound used here.
MAX_INDEX = 8

ONE: Monomial = ()


def trim(exps: Iterable[int]) -> Monomial:
    e = list(exps)
    while e and e[-1] == 0:
        e.pop()
    if any(x < 0 for x in e):
        raise ValueError(f"negative exponent in {e}")
    return tuple(e)


def zeta_monomial(i: int, e: int = 1) -> Monomial:
    if i < 1:
        raise ValueError("zeta generators are indexed from 1")
    return trim([0] * (i - 1) + [e])


def degree_of(m: Monomial) -> int:
    return sum(e * ((1 << i) - 1) for i, e in enumerate(m, start=1))


def weight_of(m: Monomial) -> int:
    return sum(e << (i - 1) for i, e in enumerate(m, start=1))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


def monomial_key(m: Monomial):
    """Global order: by degree, then reverse-lexicographic on exponents."""
    padded = m + (0,) * (MAX_INDEX - len(m))
    return (degree_of(m), tuple(reversed(padded)))


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"z{i}")
        elif e:
            parts.append(f"z{i}^{e}")
    return " ".join(parts) if parts else "1"


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ONE
    exps: Dict[int, int] = {}
    last = 0
    for tok in text.split():
        if not tok.startswith("z"):
            raise ValueError(f"bad monomial token {tok!r}")
        idx, _, exp = tok[1:].partition("^")
        i, e = int(idx), int(exp) if exp else 1
        if i <= last or e <= 0:
            raise ValueError(f"non-canonical monomial {text!r}")
        exps[i] = e
        last = i
    return trim(exps.get(i, 0) for i in range(1, last + 1))


class ZetaPolynomial:
    """Finite F2-sum of zeta monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial] = ()):
        acc: set = set()
        for t in terms:
            acc ^= {t}
        self.terms: FrozenSet[Monomial] = frozenset(acc)

    @classmethod
    def monomial(cls, m: Monomial) -> "ZetaPolynomial":
        return cls([m])

    @classmethod
    def zeta(cls, i: int, e: int = 1) -> "ZetaPolynomial":
        return cls([zeta_monomial(i, e)])

    @classmethod
    def one(cls) -> "ZetaPolynomial":
        return cls([ONE])

    @classmethod
    def parse(cls, text: str) -> "ZetaPolynomial":
        text = text.strip()
        if text == "0":
            return cls()
        return cls(parse_monomial(t) for t in text.split(" + "))

    @classmethod
    def _wrap(cls, terms: FrozenSet[Monomial]) -> "ZetaPolynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def __add__(self, other: "ZetaPolynomial") -> "ZetaPolynomial":
        return ZetaPolynomial._wrap(self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "ZetaPolynomial") -> "ZetaPolynomial":
        return ZetaPolynomial(mono_mul(a, b) for a in self.terms for b in other.terms)

    def __pow__(self, n: int) -> "ZetaPolynomial":
        out = ZetaPolynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, ZetaPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self.terms, key=monomial_key))

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_monomial(m) for m in self)

    def __repr__(self) -> str:
        return f"ZetaPolynomial({str(self)!r})"

    def degrees(self) -> List[int]:
        return sorted({degree_of(m) for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError(f"{self} is not homogeneous")
        return ds[0]

    def component(self, d: int) -> "ZetaPolynomial":
        return ZetaPolynomial._wrap(frozenset(m for m in self.terms if degree_of(m) == d))

    def components(self) -> Dict[int, "ZetaPolynomial"]:
        return {d: self.component(d) for d in self.degrees()}


def multiply(p: ZetaPolynomial, q: ZetaPolynomial) -> ZetaPolynomial:
    return p * q


@lru_cache(maxsize=None)
def _generator_power_square(i: int, b: int) -> Tuple[Tuple[Monomial, int], ...]:
    """Terms of (zeta_i . Sq)^(2^b) with the degree each term drops."""
    return tuple(
        (zeta_monomial(i - r, 1 << (r + b)) if r < i else ONE, (1 << b) * ((1 << r) - 1))
        for r in range(i + 1)
    )


@lru_cache(maxsize=None)
def _total_square_monomial(m: Monomial, max_drop: Optional[int]) -> FrozenSet[Monomial]:
    # state: monomial -> accumulated degree drop, with F2 cancellation
    state: Dict[Monomial, int] = {ONE: 0}
    for i, e in enumerate(m, start=1):
        for b in f2.bits(e):
            nxt: Dict[Monomial, int] = {}
            for mono, drop in state.items():
                for term, tdrop in _generator_power_square(i, b):
                    total = drop + tdrop
                    if max_drop is not None and total > max_drop:
                        continue
                    key = mono_mul(mono, term)
                    if key in nxt:
                        del nxt[key]
                    else:
                        nxt[key] = total
            state = nxt
    return frozenset(state)


def total_square(p: ZetaPolynomial, max_drop: Optional[int] = None) -> ZetaPolynomial:
    """Right action of Sq = sum Sq^i.

    With ``max_drop`` set, only terms lowering degree by at most that much
    are kept (exact for those terms).
    """
    acc: FrozenSet[Monomial] = frozenset()
    for m in p.terms:
        acc = acc ^ _total_square_monomial(m, max_drop)
    return ZetaPolynomial._wrap(acc)


def sq_monomial(m: Monomial, k: int) -> FrozenSet[Monomial]:
    """Terms of ``m . Sq^k``."""
    if k < 0:
        return frozenset()
    d = degree_of(m)
    if k > d:
        return frozenset()
    if k == 0:
        return frozenset([m])
    return frozenset(t for t in _total_square_monomial(m, k) if degree_of(t) == d - k)


def sq_action(p: ZetaPolynomial, k: int) -> ZetaPolynomial:
    if not p:
        return ZetaPolynomial()
    if not p.is_homogeneous():
        raise ValueError(f"sq_action needs a homogeneous polynomial, got {p}")
    out: FrozenSet[Monomial] = frozenset()
    for m in p.terms:
        out = out ^ sq_monomial(m, k)
    return ZetaPolynomial._wrap(out)


# ----------------------------------------------------------------------------
# monomial enumeration


def generator_monomials(kind: str, max_degree: int) -> List[Monomial]:
    """Polynomial generators of the named subring with degree <= max_degree.

    ``kind`` is one of ``dual`` (all of A_*), ``hz``, ``bo``, ``tmf``.
    """
    lead = {"dual": 0, "hz": 1, "bo": 2, "tmf": 3}[kind]
    gens = []
    for i in range(1, MAX_INDEX + 1):
        m = zeta_monomial(i, 1 << max(0, lead + 1 - i))
        if degree_of(m) <= max_degree:
            gens.append(m)
    return gens


def monomials_in(generators: Sequence[Monomial], max_degree: int) -> List[Monomial]:
    """All products of the given generators with degree <= max_degree, sorted."""
    out = [ONE]

    def rec(start: int, current: Monomial, deg: int) -> None:
        for idx in range(start, len(generators)):
            g = generators[idx]
            nd = deg + degree_of(g)
            if nd > max_degree:
                continue
            m = mono_mul(current, g)
            out.append(m)
            rec(idx, m, nd)

    rec(0, ONE, 0)
    return sorted(out, key=monomial_key)


# ----------------------------------------------------------------------------
# subalgebras A(n) as operator algebras on the truncated dual


def top_degree(n: int) -> int:
    """Degree of the top class of A(n)."""
    return sum(((1 << (n + 2 - i)) - 1) * ((1 << i) - 1) for i in range(1, n + 2))


@dataclass(frozen=True)
class OperatorAlgebra:
    """A(n) realized by right-acting operators on a truncation of A_*.

    ``words[b]`` is a composition word for basis element ``b``: the word
    ``(k1, k2, ...)`` means ``x -> (x . Sq^k1) . Sq^k2 ...``.  Products in
    ``table`` are bitmasks over the basis and follow the same convention,
    ``x . (a * b) = (x . a) . b``.
    """

    n: int
    truncation_degree: int
    words: Tuple[Tuple[int, ...], ...]
    degrees: Tuple[int, ...]
    table: Tuple[Tuple[int, ...], ...]
    generators: Tuple[int, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.words)

    @property
    def top(self) -> int:
        return max(self.degrees)

    def index(self, word: Tuple[int, ...]) -> int:
        return self.words.index(word)

    def by_degree(self, d: int) -> List[int]:
        return [i for i, x in enumerate(self.degrees) if x == d]

    def mul(self, a: int, b: int) -> int:
        """Product of two elements given as bitmasks over the basis."""
        out = 0
        for i in f2.bits(a):
            row = self.table[i]
            for j in f2.bits(b):
                out ^= row[j]
        return out

    def generator_index(self, k: int) -> int:
        return self.index((k,))

    def is_associative(self) -> bool:
        dim = self.dimension
        for i in range(dim):
            for j in range(dim):
                ij = self.table[i][j]
                for k in range(dim):
                    if self.mul(ij, 1 << k) != self.mul(1 << i, self.table[j][k]):
                        return False
        return True

    def is_unital(self) -> bool:
        u = self.index(())
        return all(
            self.table[u][i] == 1 << i and self.table[i][u] == 1 << i for i in range(self.dimension)
        )


class _Dual:
    """Bases and generator matrices of A_* truncated at degree D."""

    def __init__(self, max_degree: int, gens: Sequence[int]):
        self.max_degree = max_degree
        monos = monomials_in(generator_monomials("dual", max_degree), max_degree)
        self.basis: Dict[int, List[Monomial]] = {d: [] for d in range(max_degree + 1)}
        for m in monos:
            self.basis[degree_of(m)].append(m)
        self.index = {d: {m: i for i, m in enumerate(b)} for d, b in self.basis.items()}
        self.gen: Dict[int, Dict[int, List[int]]] = {}
        for k in gens:
            mats = {}
            for d in range(k, max_degree + 1):
                idx = self.index[d - k]
                rows = []
                for m in self.basis[d]:
                    v = 0
                    for t in sq_monomial(m, k):
                        v ^= 1 << idx[t]
                    rows.append(v)
                mats[d] = rows
            self.gen[k] = mats

    def flatten(self, op: Dict[int, List[int]], k: int) -> int:
        out, shift = 0, 0
        for d in range(k, self.max_degree + 1):
            width = len(self.basis[d - k])
            for r in op[d]:
                out |= r << shift
                shift += width
        return out

    def compose(self, a: Dict[int, List[int]], ka: int, b: Dict[int, List[int]], kb: int):
        out = {}
        for d in range(ka + kb, self.max_degree + 1):
            out[d] = f2.compose(a[d], b[d - ka])
        return out


def identity_operator(dual: _Dual) -> Dict[int, List[int]]:
    return {d: f2.identity(len(dual.basis[d])) for d in range(dual.max_degree + 1)}


@lru_cache(maxsize=None)
def subalgebra_operators(n: int, max_degree: int = DEFAULT_DEGREE_BOUND) -> OperatorAlgebra:
    """Basis, degrees and multiplication table of A(n).

    The algebra is the span of all compositions of ``Sq^(2^k)``, ``k <= n``,
    acting on the dual truncated at ``max_degree``.  Faithfulness needs the
    truncation to reach the top degree of A(n).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if max_degree < top_degree(n):
        raise ValueError(
            f"truncation {max_degree} is below the faithfulness margin {top_degree(n)} for A({n})"
        )
    gens = tuple(1 << k for k in range(n + 1))
    dual = _Dual(max_degree, gens)
    words: List[Tuple[int, ...]] = [()]
    degs: List[int] = [0]
    ops: List[Dict[int, List[int]]] = [identity_operator(dual)]
    k, empty_run = 0, 0
    while empty_run < max(gens):
        k += 1
        ech = f2.Echelon()
        found = False
        for g in gens:
            if g > k:
                continue
            for b in range(len(words)):
                if degs[b] != k - g:
                    continue
                op = dual.compose(ops[b], degs[b], dual.gen[g], g)
                if ech.add(dual.flatten(op, k)):
                    words.append(words[b] + (g,))
                    degs.append(k)
                    ops.append(op)
                    found = True
        empty_run = 0 if found else empty_run + 1

    flat = [dual.flatten(op, d) for op, d in zip(ops, degs)]
    table = []
    for i in range(len(words)):
        row = []
        for j in range(len(words)):
            d = degs[i] + degs[j]
            same = [b for b in range(len(words)) if degs[b] == d]
            if not same:
                row.append(0)
                continue
            target = dual.flatten(dual.compose(ops[i], degs[i], ops[j], degs[j]), d)
            c = f2.solve([flat[b] for b in same], target)
            if c is None:
                raise ArithmeticError(f"product of {words[i]} and {words[j]} left the span")
            row.append(sum(1 << same[t] for t in f2.bits(c)))
        table.append(tuple(row))
    return OperatorAlgebra(
        n=n,
        truncation_degree=max_degree,
        words=tuple(words),
        degrees=tuple(degs),
        table=tuple(table),
        generators=gens,
    )


def algebra(n: int) -> OperatorAlgebra:
    """A(n) computed at the smallest faithful truncation."""
    return subalgebra_operators(n, top_degree(n))
