"""Bounded graded F2-modules over A(1) and A(2).

Homology modules carry a right action (``Sq^k`` lowers degree by k);
their duals carry a left action (raising degree).  Action matrices are
stored per generator and per source degree as row lists in the sense of
:mod:`botmf.f2`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import f2
from .steenrod import DEFAULT_DEGREE_BOUND, OperatorAlgebra, algebra

log = logging.getLogger(__name__)

Word = Tuple[int, ...]

GENERATORS = {1: (1, 2), 2: (1, 2, 4)}
# words for Sq^a, a <= 4, in the composition convention of OperatorAlgebra
SQ_WORDS: Dict[int, Word] = {0: (), 1: (1,), 2: (2,), 3: (1, 2), 4: (4,)}


class ModuleError(ValueError):
    pass


@dataclass
class GradedModule:
    name: str
    basis: Dict[int, List[str]]
    act: Dict[int, Dict[int, List[int]]]
    alg: int = 1
    side: str = "right"
    degree_bound: int = DEFAULT_DEGREE_BOUND

    def __post_init__(self):
        if self.alg not in GENERATORS:
            raise ModuleError(f"unsupported subalgebra A({self.alg})")
        if self.side not in ("right", "left"):
            raise ModuleError(f"side must be right or left, not {self.side!r}")
        self.basis = {d: list(b) for d, b in sorted(self.basis.items()) if b}
        for k in self.gens:
            self.act.setdefault(k, {})
            for d in self.basis:
                rows = self.act[k].get(d)
                if rows is None:
                    self.act[k][d] = [0] * self.dim(d)
                elif len(rows) != self.dim(d):
                    raise ModuleError(f"{self.name}: Sq^{k} in degree {d} has {len(rows)} rows")
            for d in list(self.act[k]):
                if d not in self.basis:
                    del self.act[k][d]
        self._ops: Dict[Tuple[Word, int], List[int]] = {}

    # -- shape -------------------------------------------------------------

    @property
    def gens(self) -> Tuple[int, ...]:
        return GENERATORS[self.alg]

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def degrees(self) -> List[int]:
        return sorted(self.basis)

    @property
    def total_dim(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def dims(self, lo: Optional[int] = None, hi: Optional[int] = None) -> List[int]:
        if not self.basis:
            return []
        lo = min(self.basis) if lo is None else lo
        hi = max(self.basis) if hi is None else hi
        return [self.dim(d) for d in range(lo, hi + 1)]

    def step(self, k: int) -> int:
        return -k if self.side == "right" else k

    def label_index(self, d: int) -> Dict[str, int]:
        return {lab: i for i, lab in enumerate(self.basis.get(d, ()))}

    # -- actions -----------------------------------------------------------

    def action(self, k: int, d: int) -> List[int]:
        """Rows of Sq^k from degree d; Sq^0 is the identity, Sq^3 is composed."""
        if k == 0:
            return f2.identity(self.dim(d))
        if k in self.act:
            return self.act[k].get(d, [0] * self.dim(d))
        if k in SQ_WORDS and all(g in self.gens for g in SQ_WORDS[k]):
            return self.op(SQ_WORDS[k], d)
        raise ModuleError(f"Sq^{k} is not available on an A({self.alg})-module")

    def op(self, word: Word, d: int) -> List[int]:
        """Matrix of the algebra element named by ``word``, from degree d.

        A right module applies the letters left to right, a left module right
        to left, so both realize the same product of OperatorAlgebra.
        """
        key = (word, d)
        cached = self._ops.get(key)
        if cached is not None:
            return cached
        letters = word if self.side == "right" else tuple(reversed(word))
        rows = f2.identity(self.dim(d))
        cur = d
        for k in letters:
            if not rows:
                break
            rows = f2.compose(rows, self.act[k].get(cur, [0] * self.dim(cur)))
            cur += self.step(k)
        if not rows:
            rows = [0] * self.dim(d)
        self._ops[key] = rows
        return rows

    def algebra(self) -> OperatorAlgebra:
        return algebra(self.alg)

    def relation_violations(self, limit: int = 1) -> List[str]:
        """Check every product of the multiplication table of A(n)."""
        A = self.algebra()
        out = []
        for d in self.degrees():
            ops = [self.op(w, d) for w in A.words]
            for i, wi in enumerate(A.words):
                mid = d + self.step(A.degrees[i])
                for j, wj in enumerate(A.words):
                    if self.side == "right":
                        lhs = f2.compose(ops[i], self.op(wj, mid))
                    else:
                        # (b_i * b_j) f = b_i (b_j f)
                        mid_j = d + self.step(A.degrees[j])
                        lhs = f2.compose(ops[j], self.op(wi, mid_j))
                    rhs = [0] * self.dim(d)
                    for k in f2.bits(A.table[i][j]):
                        rhs = [a ^ b for a, b in zip(rhs, ops[k])]
                    if lhs != rhs:
                        out.append(f"{self.name}: {wi}*{wj} fails in degree {d}")
                        if len(out) >= limit:
                            return out
        return out

    def satisfies_relations(self) -> bool:
        return not self.relation_violations()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedModule):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.side == other.side
            and self.alg == other.alg
            and all(self.act[k] == other.act[k] for k in self.gens)
        )

    def same_shape(self, other: "GradedModule") -> bool:
        """Equal up to relabeling: same dims and same action ranks."""
        if self.side != other.side or self.alg != other.alg:
            return False
        if self.degrees() != other.degrees() or any(
            self.dim(d) != other.dim(d) for d in self.degrees()
        ):
            return False
        return all(
            f2.rank(self.action(k, d)) == f2.rank(other.action(k, d))
            for k in self.gens
            for d in self.degrees()
        )

    def __repr__(self) -> str:
        return f"GradedModule({self.name!r}, dims={self.dims()}, alg=A({self.alg}), side={self.side})"


# ----------------------------------------------------------------------------
# small constructors


def trivial(degree: int = 0, alg: int = 1, side: str = "right", name: str = "F2") -> GradedModule:
    return GradedModule(name, {degree: ["1"]}, {}, alg=alg, side=side)


def zero_module(alg: int = 1, side: str = "right") -> GradedModule:
    return GradedModule("0", {}, {}, alg=alg, side=side)


def moore(alg: int = 1, side: str = "right") -> GradedModule:
    """Two classes in degrees 0 and 1 joined by Sq^1."""
    if side == "right":
        act = {1: {1: [1]}}
    else:
        act = {1: {0: [1]}}
    return GradedModule("M", {0: ["m0"], 1: ["m1"]}, act, alg=alg, side=side)


def free_module(bottoms: Sequence[int], alg: int = 1, side: str = "left") -> GradedModule:
    """Free A(n)-module with one summand whose lowest class sits at each degree."""
    A = algebra(alg)
    top = A.top
    basis: Dict[int, List[str]] = {}
    where: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for g, e in enumerate(bottoms):
        for b, w in enumerate(A.words):
            d = e + A.degrees[b] if side == "left" else e + top - A.degrees[b]
            where[(g, b)] = (d, len(basis.setdefault(d, [])))
            basis[d].append(f"g{g}.{''.join(map(str, w)) or 'e'}")
    act: Dict[int, Dict[int, List[int]]] = {}
    for k in GENERATORS[alg]:
        ki = A.generator_index(k)
        rows: Dict[int, List[int]] = {d: [0] * len(labs) for d, labs in basis.items()}
        for (g, b), (d, i) in where.items():
            prod = A.mul(1 << ki, 1 << b) if side == "left" else A.mul(1 << b, 1 << ki)
            v = 0
            for c in f2.bits(prod):
                v |= 1 << where[(g, c)][1]
            rows[d][i] = v
        act[k] = rows
    name = "free(" + ",".join(map(str, bottoms)) + ")"
    return GradedModule(name, basis, act, alg=alg, side=side)


# ----------------------------------------------------------------------------
# constructions


def suspend(M: GradedModule, k: int) -> GradedModule:
    basis = {d + k: list(b) for d, b in M.basis.items()}
    act = {g: {d + k: list(r) for d, r in M.act[g].items()} for g in M.gens}
    name = M.name if k == 0 else f"S^{k} {M.name}"
    return GradedModule(name, basis, act, alg=M.alg, side=M.side, degree_bound=M.degree_bound + k)


def direct_sum(
    Ms: Sequence[GradedModule], tags: Optional[Sequence[str]] = None, name: Optional[str] = None
) -> GradedModule:
    if not Ms:
        raise ModuleError("empty direct sum")
    if len({(M.alg, M.side) for M in Ms}) != 1:
        raise ModuleError("direct sum of modules with different algebra tags or sides")
    if len(Ms) == 1 and tags is None:
        return Ms[0]
    alg, side = Ms[0].alg, Ms[0].side
    tags = list(tags) if tags is not None else [str(i) for i in range(len(Ms))]
    basis: Dict[int, List[str]] = {}
    offsets: List[Dict[int, int]] = []
    for M, tag in zip(Ms, tags):
        off = {}
        for d, labs in M.basis.items():
            off[d] = len(basis.setdefault(d, []))
            basis[d].extend(f"[{tag}] {lab}" for lab in labs)
        offsets.append(off)
    act: Dict[int, Dict[int, List[int]]] = {}
    for k in GENERATORS[alg]:
        rows: Dict[int, List[int]] = {d: [] for d in basis}
        for d in sorted(basis):
            for M, off in zip(Ms, offsets):
                tgt = d + M.step(k)
                shift = off.get(tgt, 0)
                rows[d].extend(r << shift for r in M.act[k].get(d, ()))
        act[k] = rows
    return GradedModule(
        name or " + ".join(M.name for M in Ms),
        basis,
        act,
        alg=alg,
        side=side,
        degree_bound=max(M.degree_bound for M in Ms),
    )


def tensor(M: GradedModule, N: GradedModule, bound: Optional[int] = None) -> GradedModule:
    """Tensor product with the Cartan-formula action; degrees above ``bound`` are dropped."""
    if M.alg != N.alg or M.side != N.side:
        raise ModuleError("tensor of modules with different algebra tags or sides")
    if bound is None:
        bound = max(DEFAULT_DEGREE_BOUND, M.degree_bound, N.degree_bound)
    basis: Dict[int, List[str]] = {}
    pos: Dict[Tuple[int, int, int, int], int] = {}
    dropped = 0
    for dm in M.degrees():
        for i, lm in enumerate(M.basis[dm]):
            for dn in N.degrees():
                d = dm + dn
                if d > bound:
                    dropped += N.dim(dn)
                    continue
                for j, ln in enumerate(N.basis[dn]):
                    pos[(dm, i, dn, j)] = len(basis.setdefault(d, []))
                    basis[d].append(f"{lm} (x) {ln}")
    if dropped:
        log.warning("tensor %s (x) %s: dropped %d classes above degree %d", M.name, N.name, dropped, bound)
    act: Dict[int, Dict[int, List[int]]] = {}
    for k in GENERATORS[M.alg]:
        rows: Dict[int, List[int]] = {d: [0] * len(b) for d, b in basis.items()}
        for (dm, i, dn, j), p in pos.items():
            v = 0
            for a in range(k + 1):
                dma, dnb = dm + M.step(a), dn + N.step(k - a)
                xa = M.action(a, dm)[i] if M.dim(dma) else 0
                if not xa:
                    continue
                yb = N.action(k - a, dn)[j] if N.dim(dnb) else 0
                if not yb:
                    continue
                for ii in f2.bits(xa):
                    for jj in f2.bits(yb):
                        q = pos.get((dma, ii, dnb, jj))
                        if q is not None:
                            v ^= 1 << q
            rows[dm + dn][p] = v
        act[k] = rows
    return GradedModule(f"({M.name})(x)({N.name})", basis, act, alg=M.alg, side=M.side, degree_bound=bound)


def dualize(M: GradedModule) -> GradedModule:
    """Linear dual in the same degrees; a right action becomes a left one."""
    side = "left" if M.side == "right" else "right"
    act: Dict[int, Dict[int, List[int]]] = {}
    for k in M.gens:
        rows = {}
        for e in M.degrees():
            src = e - M.step(k)  # degree whose action lands in e
            if M.dim(src):
                rows[e] = f2.transpose(M.act[k][src], M.dim(e))
            else:
                rows[e] = [0] * M.dim(e)
        act[k] = rows
    name = M.name[:-1] if M.name.endswith("*") else M.name + "*"
    return GradedModule(name, M.basis, act, alg=M.alg, side=side, degree_bound=M.degree_bound)


def restrict(M: GradedModule, alg: int) -> GradedModule:
    """Forget to a smaller subalgebra."""
    if alg > M.alg:
        raise ModuleError("cannot extend the certified subalgebra")
    act = {k: M.act[k] for k in GENERATORS[alg]}
    return GradedModule(M.name, M.basis, act, alg=alg, side=M.side, degree_bound=M.degree_bound)


def truncate(M: GradedModule, hi: int) -> GradedModule:
    """Keep degrees <= hi (a submodule for right modules, a quotient for left ones)."""
    basis = {d: b for d, b in M.basis.items() if d <= hi}
    act = {k: {d: r for d, r in M.act[k].items() if d <= hi} for k in M.gens}
    if M.side == "left":
        act = {k: {d: (r if d + k <= hi else [0] * len(r)) for d, r in rows.items()} for k, rows in act.items()}
    return GradedModule(M.name, basis, act, alg=M.alg, side=M.side, degree_bound=min(hi, M.degree_bound))


def change_basis(M: GradedModule, new: Dict[int, List[int]]) -> GradedModule:
    """Rewrite M in a new basis; ``new[d][i]`` is new vector i in old coordinates.

    Degrees missing from ``new`` keep their basis.
    """
    P = {d: list(new.get(d, f2.identity(M.dim(d)))) for d in M.degrees()}
    for d, rows in P.items():
        if len(rows) != M.dim(d) or f2.rank(rows) != M.dim(d):
            raise ModuleError(f"degree {d}: not a basis")
    basis = {}
    for d, rows in P.items():
        old = M.basis[d]
        basis[d] = [" + ".join(old[j] for j in f2.bits(v)) for v in rows]
    act: Dict[int, Dict[int, List[int]]] = {}
    for k in M.gens:
        act[k] = {}
        for d in M.degrees():
            e = d + M.step(k)
            out = []
            for v in P[d]:
                img = f2.apply(M.act[k][d], v)
                c = f2.solve(P[e], img, M.dim(e)) if img else 0
                if c is None:
                    raise ModuleError("inconsistent change of basis")
                out.append(c)
            act[k][d] = out
    return GradedModule(M.name, basis, act, alg=M.alg, side=M.side, degree_bound=M.degree_bound)


def permute_basis(M: GradedModule, perms: Dict[int, Sequence[int]]) -> GradedModule:
    """Reorder each degree's basis: new position i holds old element perms[d][i]."""
    return change_basis(M, {d: [1 << j for j in p] for d, p in perms.items()})


# ----------------------------------------------------------------------------
# maps


@dataclass
class ModuleMap:
    source: GradedModule
    target: GradedModule
    shift: int = 0
    matrices: Dict[int, List[int]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        for d in self.source.degrees():
            rows = self.matrices.setdefault(d, [0] * self.source.dim(d))
            if len(rows) != self.source.dim(d):
                raise ModuleError(f"map {self.name}: degree {d} has {len(rows)} rows")
            if any(rows) and not self.target.dim(d + self.shift):
                raise ModuleError(f"map {self.name}: degree {d} hits an empty target degree")

    def matrix(self, d: int) -> List[int]:
        return self.matrices.get(d, [0] * self.source.dim(d))

    def __call__(self, d: int, v: int) -> int:
        return f2.apply(self.matrix(d), v)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``other`` after ``self``."""
        mats = {d: f2.compose(self.matrix(d), other.matrix(d + self.shift)) for d in self.source.degrees()}
        return ModuleMap(self.source, other.target, self.shift + other.shift, mats, f"{other.name}.{self.name}")


def identity_map(M: GradedModule) -> ModuleMap:
    return ModuleMap(M, M, 0, {d: f2.identity(M.dim(d)) for d in M.degrees()}, "id")


def zero_map(M: GradedModule, N: GradedModule, shift: int = 0) -> ModuleMap:
    return ModuleMap(M, N, shift, {}, "0")


@dataclass
class LinearityReport:
    ok: bool
    generator: Optional[int] = None
    degree: Optional[int] = None
    element: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "linear"
        return f"Sq^{self.generator} fails on {self.element!r} in degree {self.degree}"


def check_linear(f: ModuleMap, through: Optional[int] = None) -> LinearityReport:
    S, T = f.source, f.target
    if S.side != T.side:
        return LinearityReport(False)
    gens = [k for k in S.gens if k in T.gens]
    for d in S.degrees():
        if through is not None and d > through:
            continue
        for k in gens:
            lo = d + S.step(k)
            lhs = f2.compose(S.action(k, d), f.matrix(lo)) if S.dim(lo) else [0] * S.dim(d)
            img = d + f.shift
            rhs = f2.compose(f.matrix(d), T.action(k, img)) if T.dim(img + T.step(k)) else [0] * S.dim(d)
            if lhs != rhs:
                i = next(i for i in range(S.dim(d)) if lhs[i] != rhs[i])
                return LinearityReport(False, k, d, S.basis[d][i])
    return LinearityReport(True)


def is_isomorphic_via(f: ModuleMap, through: Optional[int] = None) -> bool:
    """Degreewise bijectivity of an (already linear) map, optionally only up to a degree."""
    S, T = f.source, f.target
    degs = set(S.degrees()) | {d - f.shift for d in T.degrees()}
    for d in sorted(degs):
        if through is not None and d > through:
            continue
        n = S.dim(d)
        if n != T.dim(d + f.shift) or f2.rank(f.matrix(d)) != n:
            return False
    return True


@dataclass
class ShortExactSequence:
    i: ModuleMap
    p: ModuleMap

    def check(self) -> List[str]:
        problems = []
        A, B, C = self.i.source, self.i.target, self.p.target
        for d in sorted(set(A.degrees()) | set(B.degrees()) | set(C.degrees())):
            db = d + self.i.shift
            dc = db + self.p.shift
            if B.dim(db) != A.dim(d) + C.dim(dc):
                problems.append(f"dimension mismatch in degree {d}")
                continue
            ri = self.i.matrix(d)
            if f2.rank(ri) != A.dim(d):
                problems.append(f"i not injective in degree {d}")
            rp = self.p.matrix(db)
            if f2.rank(rp) != C.dim(dc):
                problems.append(f"p not surjective in degree {db}")
            if any(f2.apply(rp, r) for r in ri):
                problems.append(f"p.i != 0 in degree {d}")
        return problems


# ----------------------------------------------------------------------------
# Margolis homology and free summands


Q_WORDS = {0: [(1,)], 1: [(1, 2), (2, 1)]}
Q_DEGREE = {0: 1, 1: 3}


def q_matrix(M: GradedModule, i: int, d: int) -> List[int]:
    rows = [0] * M.dim(d)
    for w in Q_WORDS[i]:
        rows = [a ^ b for a, b in zip(rows, M.op(w, d))]
    return rows


def margolis_homology(M: GradedModule, i: int) -> Dict[int, int]:
    """Per-degree dimensions of H(M; Q_i), zeros omitted."""
    if i not in (0, 1):
        raise ValueError("Margolis homology is defined here for Q_0 and Q_1")
    if 1 not in M.gens or 2 not in M.gens:
        raise ModuleError("needs an A(1)-structure")
    q = Q_DEGREE[i]
    out = {}
    for d in M.degrees():
        nxt = d + M.step(q)
        prev = d - M.step(q)
        out_rank = f2.rank(q_matrix(M, i, d)) if M.dim(nxt) else 0
        in_rank = f2.rank(q_matrix(M, i, prev)) if M.dim(prev) else 0
        h = M.dim(d) - out_rank - in_rank
        if h:
            out[d] = h
    return out


def q_squares_vanish(M: GradedModule) -> bool:
    for i in (0, 1):
        q = Q_DEGREE[i]
        for d in M.degrees():
            mid = d + M.step(q)
            if not M.dim(mid) or not M.dim(mid + M.step(q)):
                continue
            if any(f2.compose(q_matrix(M, i, d), q_matrix(M, i, mid))):
                return False
    return True


def _top_word(M: GradedModule) -> Tuple[Word, int]:
    A = algebra(1)
    b = A.by_degree(A.top)
    return A.words[b[0]], A.top


def _split_free_once(M: GradedModule) -> Optional[Tuple[GradedModule, int]]:
    """Split off one free A(1) summand from a right module, if there is one."""
    word, top = _top_word(M)
    A = algebra(1)
    for g in M.degrees():
        low = g - top
        if not M.dim(low):
            continue
        tops = M.op(word, g)
        x = next((i for i, v in enumerate(tops) if v), None)
        if x is None:
            continue
        p = f2.low_bit(tops[x])  # functional: coordinate p in degree g - top
        # complement: y with coordinate p of y.b zero for every basis element b
        complement: Dict[int, List[int]] = {}
        for d in M.degrees():
            bs = [w for w, deg in zip(A.words, A.degrees) if deg == d - low]
            if not bs:
                complement[d] = f2.identity(M.dim(d))
                continue
            rows = []
            for y in range(M.dim(d)):
                v = 0
                for c, w in enumerate(bs):
                    if (M.op(w, d)[y] >> p) & 1:
                        v |= 1 << c
                rows.append(v)
            complement[d] = f2.kernel(rows, len(bs))
        basis = {
            d: [" + ".join(M.basis[d][i] for i in f2.bits(v)) for v in vecs]
            for d, vecs in complement.items()
        }
        act: Dict[int, Dict[int, List[int]]] = {}
        for k in M.gens:
            rows_k = {}
            for d, vecs in complement.items():
                tgt = d + M.step(k)
                out = []
                for v in vecs:
                    img = f2.apply(M.action(k, d), v) if M.dim(tgt) else 0
                    if not img:
                        out.append(0)
                        continue
                    c = f2.solve(complement[tgt], img, M.dim(tgt))
                    if c is None:
                        raise ArithmeticError("complement of a free summand is not a submodule")
                    out.append(c)
                rows_k[d] = out
            act[k] = rows_k
        reduced = GradedModule(M.name, basis, act, alg=M.alg, side=M.side, degree_bound=M.degree_bound)
        return reduced, low
    return None


def strip_free_summands(M: GradedModule) -> Tuple[GradedModule, List[int]]:
    """Return (reduced, bottoms) with M = reduced + free summands at the listed bottom degrees."""
    if 1 not in M.gens or 2 not in M.gens:
        raise ModuleError("needs an A(1)-structure")
    flip = M.side == "left"
    cur = dualize(M) if flip else M
    if cur.alg != 1:
        cur = restrict(cur, 1)
    free: List[int] = []
    while True:
        step = _split_free_once(cur)
        if step is None:
            break
        cur, low = step
        free.append(low)
    reduced = dualize(cur) if flip else cur
    reduced.name = M.name if not free else f"{M.name} mod free"
    return reduced, sorted(free)


# ----------------------------------------------------------------------------
# serialization


def module_to_text(M: GradedModule) -> str:
    head = f"MODULE v1 {M.name.replace(' ', '_')} bound={M.degree_bound} alg=A({M.alg})"
    if M.side == "left":
        head += " side=left"
    lines = [head]
    for d in M.degrees():
        for lab in M.basis[d]:
            lines.append(f"B {d} {lab}")
    for k in M.gens:
        for d in M.degrees():
            tgt = M.dim(d + M.step(k))
            if not tgt:
                continue
            for r in M.act[k][d]:
                lines.append(f"ACT {k} {d} {f2.to_bitstring(r, tgt)}")
    return "\n".join(lines) + "\n"


def module_from_text(text: str) -> GradedModule:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[:2] != ["MODULE", "v1"]:
        raise ModuleError("not a MODULE v1 file")
    opts = dict(tok.split("=", 1) for tok in head[3:])
    alg = int(opts["alg"][2:-1])
    side = opts.get("side", "right")
    basis: Dict[int, List[str]] = {}
    act: Dict[int, Dict[int, List[int]]] = {k: {} for k in GENERATORS[alg]}
    for ln in lines[1:]:
        kind, rest = ln.split(" ", 1)
        if kind == "B":
            d, lab = rest.split(" ", 1)
            basis.setdefault(int(d), []).append(lab)
        elif kind == "ACT":
            k, d, bitstr = rest.split()
            act[int(k)].setdefault(int(d), []).append(f2.from_bitstring(bitstr))
        else:
            raise ModuleError(f"unknown line {ln!r}")
    return GradedModule(head[2], basis, act, alg=alg, side=side, degree_bound=int(opts["bound"]))


def iter_elements(M: GradedModule) -> Iterable[Tuple[int, int, str]]:
    for d in M.degrees():
        for i, lab in enumerate(M.basis[d]):
            yield d, i, lab
