"""Minimal resolutions over A(1), Ext charts, and the chart-level checks.

Resolutions are computed for left modules (duals of the homology modules).
A free module is described by its generators; its degree-t basis is the set
of pairs (generator, algebra basis element) of total degree t, ordered by
generator and then by algebra basis index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import f2
from .homology import (
    brown_gitler,
    moore_smash_bg1,
    omega_summands,
    omega_tag,
    ring_homology,
)
from .modules import (
    GradedModule,
    ModuleError,
    dualize,
    restrict,
    strip_free_summands,
    suspend,
    tensor,
)
from .steenrod import DEFAULT_DEGREE_BOUND, OperatorAlgebra, algebra

Bidegree = Tuple[int, int]

# basis indices of Sq^1 and Sq^2 inside A(1)
_A1 = algebra(1)
SQ1 = _A1.generator_index(1)
SQ2 = _A1.generator_index(2)


class WindowError(ValueError):
    def __init__(self, message: str, minimal_degree: Optional[int] = None):
        super().__init__(message)
        self.minimal_degree = minimal_degree


def required_degree(stem_max: int, s_max: int) -> int:
    """Smallest truncation degree giving exact Ext in the window."""
    # the resolution reads the module through internal degree stem_max + s_max,
    # and truncating above D changes Ext only in stems >= D
    return max(stem_max + s_max, stem_max + 1)


class FreeModule:
    """Free left A(1)-module with generators of given degrees."""

    def __init__(self, alg: OperatorAlgebra):
        self.alg = alg
        self.gen_degrees: List[int] = []
        self._bases: Dict[int, List[Tuple[int, int]]] = {}
        self._index: Dict[int, Dict[Tuple[int, int], int]] = {}

    def add_generator(self, t: int) -> int:
        self.gen_degrees.append(t)
        self._bases.clear()
        self._index.clear()
        return len(self.gen_degrees) - 1

    def basis(self, t: int) -> List[Tuple[int, int]]:
        b = self._bases.get(t)
        if b is None:
            b = [
                (g, a)
                for g, tg in enumerate(self.gen_degrees)
                for a in range(self.alg.dimension)
                if tg + self.alg.degrees[a] == t
            ]
            self._bases[t] = b
            self._index[t] = {x: i for i, x in enumerate(b)}
        return b

    def index(self, t: int) -> Dict[Tuple[int, int], int]:
        self.basis(t)
        return self._index[t]

    def dim(self, t: int) -> int:
        return len(self.basis(t))

    def act(self, a: int, t: int, v: int) -> int:
        """Left multiplication by basis element ``a`` on a degree-t vector."""
        if not v:
            return 0
        basis = self.basis(t)
        out_t = t + self.alg.degrees[a]
        idx = self.index(out_t)
        row = self.alg.table[a]
        out = 0
        for i in f2.bits(v):
            g, b = basis[i]
            for c in f2.bits(row[b]):
                out ^= 1 << idx[(g, c)]
        return out


@dataclass
class Generator:
    s: int
    t: int
    index: int  # position among generators of F_s
    boundary: int  # d(g) in the degree-t basis of F_{s-1} (or of the module)

    @property
    def stem(self) -> int:
        return self.t - self.s


class MinimalResolution:
    """Minimal free resolution of a left A(1)-module through a window."""

    def __init__(self, module: GradedModule, s_max: int, t_max: int):
        if module.side != "left":
            raise ModuleError("resolve the dual (left) module")
        if 1 not in module.gens or 2 not in module.gens:
            raise ModuleError("needs an A(1)-structure")
        if module.alg != 1:
            module = restrict(module, 1)
        self.module = module
        self.alg = algebra(1)
        self.s_max = s_max
        self.t_max = t_max
        self.free: List[FreeModule] = []
        self.gens: List[List[Generator]] = []
        # d[s][t]: rows = images of the F_s(t) basis
        self.d: List[Dict[int, List[int]]] = []
        self._compute()

    def _module_act(self, a: int, t: int, v: int) -> int:
        if not v:
            return 0
        return f2.apply(self.module.op(self.alg.words[a], t), v)

    def _image(self, s: int, g: int, a: int) -> int:
        """d(a . g) for generator g of F_s."""
        gen = self.gens[s][g]
        if s == 0:
            return self._module_act(a, gen.t, gen.boundary)
        return self.free[s - 1].act(a, gen.t, gen.boundary)

    def _compute(self) -> None:
        M = self.module
        for s in range(self.s_max + 1):
            F = FreeModule(self.alg)
            self.free.append(F)
            self.gens.append([])
            self.d.append({})
            for t in range(self.t_max + 1):
                if s == 0:
                    kernel = f2.identity(M.dim(t))
                else:
                    width = self.free[s - 2].dim(t) if s >= 2 else M.dim(t)
                    kernel = f2.kernel(self.d[s - 1].get(t, []), width)
                rows = [self._image(s, g, a) for g, a in F.basis(t)]
                ech = f2.Echelon(rows)
                for k in kernel:
                    if ech.add(k):
                        g = F.add_generator(t)
                        self.gens[s].append(Generator(s, t, g, k))
                # new generators sit at the end of F.basis(t)
                self.d[s][t] = [self._image(s, g, a) for g, a in F.basis(t)]

    # -- queries -----------------------------------------------------------

    def generator_counts(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for s, gs in enumerate(self.gens):
            for g in gs:
                out[(s, g.t)] = out.get((s, g.t), 0) + 1
        return out

    def is_minimal(self) -> bool:
        """No boundary contains a generator with the identity coefficient."""
        unit = self.alg.index(())
        for s in range(1, self.s_max + 1):
            F = self.free[s - 1]
            for g in self.gens[s]:
                basis = F.basis(g.t)
                if any(basis[i][1] == unit for i in f2.bits(g.boundary)):
                    return False
        return True

    def euler_violations(self) -> List[Tuple[int, int]]:
        """(s, t) where rank d_s + rank d_(s+1) differs from dim F_s(t)."""
        bad = []
        for s in range(self.s_max):
            for t in range(self.t_max + 1):
                dim = self.free[s].dim(t)
                r_out = f2.rank(self.d[s][t])
                r_in = f2.rank(self.d[s + 1][t])
                if r_out + r_in != dim:
                    bad.append((s, t))
        for t in range(self.t_max + 1):
            if f2.rank(self.d[0][t]) != self.module.dim(t):
                bad.append((-1, t))
        return bad

    def product_edges(self, which: int) -> List[Tuple[Generator, Generator]]:
        """(source, target) pairs for h0 (which=SQ1) or h1 (which=SQ2)."""
        out = []
        for s in range(1, self.s_max + 1):
            F = self.free[s - 1]
            for x in self.gens[s]:
                basis = F.basis(x.t)
                for i in f2.bits(x.boundary):
                    g, a = basis[i]
                    if a == which:
                        out.append((self.gens[s - 1][g], x))
        return out


def minimal_resolution(M: GradedModule, s_max: int, t_max: int) -> MinimalResolution:
    return MinimalResolution(M, s_max, t_max)


# ----------------------------------------------------------------------------
# brute-force Ext from a non-minimal resolution


def brute_force_ext(M: GradedModule, s_max: int, t_max: int) -> Dict[Tuple[int, int], int]:
    """dim Ext^{s,t} from the resolution that is free on the whole kernel.

    F_s = A(1) (x) K_{s-1} with K_{-1} = M; Ext is the cohomology of the
    generator-dual complex, whose maps read off identity coefficients.
    """
    if M.side != "left":
        raise ModuleError("expects a left module")
    A = algebra(1)
    unit = A.index(())
    # each level: list of generator degrees and their boundaries (vectors in previous level)
    levels: List[FreeModule] = []
    boundary: List[List[int]] = []
    # kernel of the previous map, degreewise: level -1 is M itself
    prev_kernel: Dict[int, List[int]] = {t: f2.identity(M.dim(t)) for t in range(t_max + 1)}
    for s in range(s_max + 2):
        F = FreeModule(A)
        bnd = []
        for t in range(t_max + 1):
            for k in prev_kernel.get(t, []):
                F.add_generator(t)
                bnd.append(k)
        levels.append(F)
        boundary.append(bnd)
        new_kernel: Dict[int, List[int]] = {}
        for t in range(t_max + 1):
            rows = []
            for g, a in F.basis(t):
                tg = F.gen_degrees[g]
                if s == 0:
                    rows.append(f2.apply(M.op(A.words[a], tg), bnd[g]) if bnd[g] else 0)
                else:
                    rows.append(levels[s - 1].act(a, tg, bnd[g]))
            width = M.dim(t) if s == 0 else levels[s - 1].dim(t)
            new_kernel[t] = f2.kernel(rows, width)
        prev_kernel = new_kernel

    def delta(s: int, t: int) -> List[int]:
        # rows: generators of F_s in degree t; bits: generators of F_{s-1} in degree t
        F_prev = levels[s - 1]
        prev_gens = [g for g, tg in enumerate(F_prev.gen_degrees) if tg == t]
        pos = {g: i for i, g in enumerate(prev_gens)}
        basis = F_prev.basis(t)
        rows = []
        for g, tg in enumerate(levels[s].gen_degrees):
            if tg != t:
                continue
            v = 0
            for i in f2.bits(boundary[s][g]):
                pg, a = basis[i]
                if a == unit:
                    v |= 1 << pos[pg]
            rows.append(v)
        return rows

    out = {}
    for s in range(s_max + 1):
        for t in range(t_max + 1):
            n = sum(1 for tg in levels[s].gen_degrees if tg == t)
            if not n:
                continue
            r_in = f2.rank(delta(s, t)) if s >= 1 else 0
            r_out = f2.rank(delta(s + 1, t))
            dim = n - r_in - r_out
            if dim:
                out[(s, t)] = dim
    return out


# ----------------------------------------------------------------------------
# charts


@dataclass
class ExtChart:
    stem_max: int
    s_max: int
    classes: Dict[Bidegree, List[str]] = field(default_factory=dict)
    h0: Set[Tuple[str, str]] = field(default_factory=set)
    h1: Set[Tuple[str, str]] = field(default_factory=set)
    annotations: List[Tuple[str, int, int, str]] = field(default_factory=list)

    def count(self, stem: int, s: int) -> int:
        return len(self.classes.get((stem, s), ()))

    def counts(self) -> Dict[Bidegree, int]:
        return {k: len(v) for k, v in self.classes.items() if v}

    def positions(self) -> Dict[str, Bidegree]:
        return {lab: pos for pos, labs in self.classes.items() for lab in labs}

    def labels(self) -> List[str]:
        return [lab for pos in sorted(self.classes) for lab in self.classes[pos]]

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.classes.values())

    def edges(self, kind: str) -> Set[Tuple[str, str]]:
        return self.h0 if kind == "h0" else self.h1

    def product_matrix(self, kind: str, src: Bidegree) -> List[int]:
        """Rows: classes at src; bits: classes at the target bidegree."""
        stem, s = src
        tgt = (stem, s + 1) if kind == "h0" else (stem + 1, s + 1)
        tpos = {lab: i for i, lab in enumerate(self.classes.get(tgt, ()))}
        rows = []
        for lab in self.classes.get(src, ()):
            v = 0
            for a, b in self.edges(kind):
                if a == lab and b in tpos:
                    v ^= 1 << tpos[b]
            rows.append(v)
        return rows

    def signature(self):
        """Basis-independent summary: class counts and h0/h1 ranks per bidegree."""
        counts = tuple(sorted(self.counts().items()))
        ranks = []
        for pos in sorted(self.classes):
            for kind in ("h0", "h1"):
                r = f2.rank(self.product_matrix(kind, pos))
                if r:
                    ranks.append((kind, pos, r))
        return counts, tuple(ranks)

    def restricted(self, stem_max: Optional[int] = None, s_max: Optional[int] = None,
                   stem_min: int = -(10 ** 9)) -> "ExtChart":
        stem_max = self.stem_max if stem_max is None else stem_max
        s_max = self.s_max if s_max is None else s_max
        keep = {
            pos: list(labs)
            for pos, labs in self.classes.items()
            if stem_min <= pos[0] <= stem_max and pos[1] <= s_max and labs
        }
        alive = {lab for labs in keep.values() for lab in labs}
        return ExtChart(
            stem_max,
            s_max,
            keep,
            {e for e in self.h0 if e[0] in alive and e[1] in alive},
            {e for e in self.h1 if e[0] in alive and e[1] in alive},
            [a for a in self.annotations if stem_min <= a[1] <= stem_max and a[2] <= s_max],
        )

    def shifted(self, stem_shift: int, prefix: str = "") -> "ExtChart":
        ren = {lab: f"{prefix}{lab}" for lab in self.labels()}
        return ExtChart(
            self.stem_max + stem_shift,
            self.s_max,
            {(st + stem_shift, s): [ren[x] for x in labs] for (st, s), labs in self.classes.items()},
            {(ren[a], ren[b]) for a, b in self.h0},
            {(ren[a], ren[b]) for a, b in self.h1},
            [(ty, st + stem_shift, s, tx) for ty, st, s, tx in self.annotations],
        )

    def canonical(self) -> "ExtChart":
        """Relabel classes as ``stem,s,i`` in the current order."""
        ren = {}
        for (st, s), labs in self.classes.items():
            for i, lab in enumerate(labs):
                ren[lab] = f"{st},{s},{i}"
        return ExtChart(
            self.stem_max,
            self.s_max,
            {pos: [ren[x] for x in labs] for pos, labs in self.classes.items()},
            {(ren[a], ren[b]) for a, b in self.h0},
            {(ren[a], ren[b]) for a, b in self.h1},
            list(self.annotations),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtChart):
            return NotImplemented
        return chart_to_text(self) == chart_to_text(other)


def union(charts: Sequence[ExtChart], tags: Sequence[str]) -> ExtChart:
    out = ExtChart(max(c.stem_max for c in charts), max(c.s_max for c in charts))
    for c, tag in zip(charts, tags):
        c = c.shifted(0, f"{tag}/")
        for pos, labs in c.classes.items():
            out.classes.setdefault(pos, []).extend(labs)
        out.h0 |= c.h0
        out.h1 |= c.h1
        out.annotations.extend(c.annotations)
    return out


def chart_from_resolution(res: MinimalResolution, stem_max: int, s_max: int) -> ExtChart:
    chart = ExtChart(stem_max, s_max)
    label: Dict[Tuple[int, int], str] = {}
    for s in range(min(s_max, res.s_max) + 1):
        for g in res.gens[s]:
            if g.stem > stem_max:
                continue
            labs = chart.classes.setdefault((g.stem, s), [])
            lab = f"{g.stem},{s},{len(labs)}"
            labs.append(lab)
            label[(s, g.index)] = lab
    for kind, which in (("h0", SQ1), ("h1", SQ2)):
        for a, b in res.product_edges(which):
            la, lb = label.get((a.s, a.index)), label.get((b.s, b.index))
            if la and lb:
                chart.edges(kind).add((la, lb))
    return chart


def ext_chart(M: GradedModule, stem_max: int, s_max: int) -> ExtChart:
    """Chart of Ext_{A(1)}(M, F2) for a left module, or for the dual of a right one."""
    if M.side == "right":
        M = dualize(M)
    res = MinimalResolution(M, s_max, stem_max + s_max)
    chart = chart_from_resolution(res, stem_max, s_max)
    _mark_towers(chart)
    return chart


def _mark_towers(chart: ExtChart) -> None:
    chart.annotations = [a for a in chart.annotations if a[0] != "tower"]
    for stem, s in tower_bottoms(chart):
        chart.annotations.append(("tower", stem, s, "Z-tower continues above the window"))
    chart.annotations.sort()


def adams_cover(C: ExtChart, k: int) -> ExtChart:
    """Keep filtrations >= k and shift them down by k."""
    if k < 0:
        raise ValueError("cover index must be non-negative")
    if k == 0:
        return C
    keep = {(st, s - k): list(labs) for (st, s), labs in C.classes.items() if s >= k and labs}
    alive = {lab for labs in keep.values() for lab in labs}
    out = ExtChart(
        C.stem_max,
        C.s_max - k,
        keep,
        {e for e in C.h0 if e[0] in alive and e[1] in alive},
        {e for e in C.h1 if e[0] in alive and e[1] in alive},
    )
    _mark_towers(out)
    return out


# ----------------------------------------------------------------------------
# towers


def _power(chart: ExtChart, kind: str, stem: int, s: int, n: int) -> List[int]:
    """Matrix of h0^n or h1^n from (stem, s)."""
    step = 0 if kind == "h0" else 1
    rows = f2.identity(chart.count(stem, s))
    for i in range(n):
        rows = f2.compose(rows, chart.product_matrix(kind, (stem + step * i, s + i))) if rows else rows
    return rows


def _h0_power(chart: ExtChart, stem: int, s: int, n: int) -> List[int]:
    return _power(chart, "h0", stem, s, n)


def canonical_text(chart: ExtChart) -> str:
    """Basis-independent description of a chart.

    Records class counts, the rank of every h0 and h1 power leaving each
    bidegree, and the rank of x -> (h0 x, h1 x).  Reruns that only differ in
    elimination order produce the same text.
    """
    lines = [f"CANON v1 stem_max={chart.stem_max} s_max={chart.s_max}"]
    for (stem, s) in sorted(p for p, labs in chart.classes.items() if labs):
        lines.append(f"N {stem} {s} {chart.count(stem, s)}")
        for kind in ("h0", "h1"):
            for n in range(1, chart.s_max - s + 1):
                r = f2.rank(_power(chart, kind, stem, s, n))
                if not r:
                    break
                lines.append(f"R {kind}^{n} {stem} {s} {r}")
        a = chart.product_matrix("h0", (stem, s))
        b = chart.product_matrix("h1", (stem, s))
        width = chart.count(stem, s + 1)
        joint = f2.rank([x | (y << width) for x, y in zip(a, b)])
        if joint:
            lines.append(f"J {stem} {s} {joint}")
    return "\n".join(lines) + "\n"


def tower_bottoms(chart: ExtChart) -> List[Bidegree]:
    """Bidegrees where an h0-tower reaching the top of the window starts (with multiplicity)."""
    out = []
    top = chart.s_max
    stems = sorted({st for st, _ in chart.classes})
    for stem in stems:
        prev = 0
        for s in range(top + 1):
            r = f2.rank(_h0_power(chart, stem, s, top - s))
            out.extend([(stem, s)] * (r - prev))
            prev = r
    return out


def tower_supports_h1(chart: ExtChart, stem: int, s: int) -> bool:
    """Whether every tower generator born at (stem, s) has a nonzero h1 product.

    h1 is compared on the whole bidegree and on its non-tower part; h1
    vanishes on h0-multiples, so the difference is basis independent.
    """
    top = chart.s_max
    h1 = chart.product_matrix("h1", (stem, s))
    tower_map = _h0_power(chart, stem, s, top - s)
    n = chart.count(stem, s)
    non_tower = f2.kernel(tower_map, chart.count(stem, top)) if n else []
    h1_non_tower = [f2.apply(h1, v) for v in non_tower]
    return f2.rank(h1) > f2.rank(h1_non_tower)


# ----------------------------------------------------------------------------
# serialization


def chart_to_text(C: ExtChart) -> str:
    lines = [f"CHART v1 stem_max={C.stem_max} s_max={C.s_max}"]
    rows = sorted((st, s, lab) for (st, s), labs in C.classes.items() for lab in labs)
    lines += [f"C {st} {s} {lab}" for st, s, lab in rows]
    edges = sorted([("h0", a, b) for a, b in C.h0] + [("h1", a, b) for a, b in C.h1])
    lines += [f"E {k} {a} {b}" for k, a, b in edges]
    lines += [f"A {ty} {st} {s} {tx}" for ty, st, s, tx in sorted(C.annotations)]
    return "\n".join(lines) + "\n"


def chart_from_text(text: str) -> ExtChart:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[:2] != ["CHART", "v1"]:
        raise ValueError("not a CHART v1 file")
    opts = dict(tok.split("=", 1) for tok in head[2:])
    C = ExtChart(int(opts["stem_max"]), int(opts["s_max"]))
    for ln in lines[1:]:
        kind, rest = ln.split(" ", 1)
        if kind == "C":
            st, s, lab = rest.split(" ", 2)
            C.classes.setdefault((int(st), int(s)), []).append(lab)
        elif kind == "E":
            k, a, b = rest.split(" ")
            C.edges(k).add((a, b))
        elif kind == "A":
            ty, st, s, tx = rest.split(" ", 3)
            C.annotations.append((ty, int(st), int(s), tx))
        else:
            raise ValueError(f"unknown chart line {ln!r}")
    # keep the in-bidegree order used by the serializer
    for pos in C.classes:
        C.classes[pos].sort()
    return C


def normalized(C: ExtChart) -> ExtChart:
    """Chart with each bidegree's labels sorted, as after a serialization round trip."""
    return chart_from_text(chart_to_text(C))


# ----------------------------------------------------------------------------
# reference charts and Davis comparisons


def bo_chart(stem_max: int, s_max: int) -> ExtChart:
    from .modules import trivial

    return ext_chart(trivial(0, side="left"), stem_max, s_max)


def bsp_chart(stem_max: int, s_max: int) -> ExtChart:
    """Stripped BG(1) chart, which serves as the bsp reference."""
    reduced, _ = strip_free_summands(brown_gitler(1))
    return ext_chart(reduced, stem_max, s_max)


def alpha(n: int) -> int:
    return bin(n).count("1")


def davis_prediction(ns: Sequence[int]) -> Tuple[str, int]:
    total = sum(ns)
    a = sum(alpha(n) for n in ns)
    if total % 2 == 0:
        return "bo", 2 * total - a
    return "bsp", 2 * total - 1 - a


@dataclass
class DavisReport:
    ns: Tuple[int, ...]
    reference: str
    cover: int
    free_bottoms: List[int]
    stripped: ExtChart
    predicted: ExtChart
    first_difference: Optional[Bidegree]

    @property
    def ok(self) -> bool:
        return self.first_difference is None

    def __str__(self) -> str:
        head = f"n={list(self.ns)}: stripped chart vs {self.reference}<{self.cover}>"
        if self.ok:
            return head + " agree"
        return head + f" differ first at {self.first_difference}"


def first_difference(a: ExtChart, b: ExtChart) -> Optional[Bidegree]:
    sa, sb = a.signature(), b.signature()
    if sa == sb:
        return None
    counts_a, counts_b = dict(sa[0]), dict(sb[0])
    ranks_a = {(k, p): r for k, p, r in sa[1]}
    ranks_b = {(k, p): r for k, p, r in sb[1]}
    bad = [p for p in set(counts_a) | set(counts_b) if counts_a.get(p) != counts_b.get(p)]
    bad += [p for k, p in set(ranks_a) | set(ranks_b) if ranks_a.get((k, p)) != ranks_b.get((k, p))]
    return min(bad, key=lambda p: (p[0], p[1]))


def tensor_of_bg(ns: Sequence[int]) -> GradedModule:
    M = brown_gitler(ns[0])
    for n in ns[1:]:
        M = tensor(M, brown_gitler(n))
    return M


def davis_compare(ns: Sequence[int], stem_max: int = 24, s_max: int = 12) -> DavisReport:
    ns = tuple(ns)
    if not ns or any(n <= 0 for n in ns):
        raise ValueError("Davis comparison needs positive integers")
    reference, cover = davis_prediction(ns)
    reduced, free = strip_free_summands(tensor_of_bg(ns))
    stripped = ext_chart(reduced, stem_max, s_max)
    base = bo_chart if reference == "bo" else bsp_chart
    predicted = adams_cover(base(stem_max, s_max + cover), cover)
    predicted = predicted.restricted(stem_max, s_max)
    return DavisReport(ns, reference, cover, free, stripped, predicted, first_difference(stripped, predicted))


# ----------------------------------------------------------------------------
# the bo ^ tmf chart


@dataclass
class Census:
    tower_bottoms: List[Bidegree]
    eta_towers: List[Bidegree]
    positive_in_vacant_stems: List[Bidegree]
    free_bottoms: List[int]

    def checks(self) -> Dict[str, bool]:
        return {
            "towers.stem0mod4": all(st % 4 == 0 for st, _ in self.tower_bottoms),
            "eta-towers.stem4mod8": all(st % 8 == 4 for st, _ in self.eta_towers),
            "vacant.3567mod8": not self.positive_in_vacant_stems,
        }


def census(chart: ExtChart, free_bottoms: Sequence[int] = ()) -> Census:
    bottoms = tower_bottoms(chart)
    eta = sorted({p for p in bottoms if tower_supports_h1(chart, *p)})
    vacant = sorted(
        (st, s) for (st, s), labs in chart.classes.items() if labs and s > 0 and st % 8 in (3, 5, 6, 7)
    )
    return Census(bottoms, eta, vacant, list(free_bottoms))


@dataclass
class BoTmfChart:
    chart: ExtChart
    reduced_chart: ExtChart
    census: Census
    max_degree: int


def bo_tmf_chart(max_degree: int = DEFAULT_DEGREE_BOUND, stem_max: int = 32, s_max: int = 16) -> BoTmfChart:
    need = required_degree(stem_max, s_max)
    if max_degree < need:
        raise WindowError(f"degree bound {max_degree} too small for the window", need)
    H = ring_homology("tmf", max_degree).module
    H1 = restrict(H, 1)
    chart = ext_chart(H1, stem_max, s_max)
    reduced, free = strip_free_summands(H1)
    reduced_chart = ext_chart(reduced, stem_max, s_max)
    return BoTmfChart(chart, reduced_chart, census(chart, free), max_degree)


def omega_chart(max_degree: int = DEFAULT_DEGREE_BOUND, stem_max: int = 32, s_max: int = 16) -> ExtChart:
    """Union of the shifted Brown-Gitler charts over the Omega summands."""
    charts, tags = [], []
    cache: Dict[int, ExtChart] = {}
    for j, k in omega_summands(max_degree):
        shift = 8 * k + 12 * j
        if shift > stem_max:
            continue
        if j not in cache:
            cache[j] = ext_chart(brown_gitler(j), stem_max, s_max)
        charts.append(cache[j].restricted(stem_max - shift, s_max).shifted(shift))
        tags.append(omega_tag(j, k))
    out = union(charts, tags)
    out.stem_max = stem_max
    out.s_max = s_max
    _mark_towers(out)
    return out


# ----------------------------------------------------------------------------
# cofiber reconciliation


def free_bottoms_from_dims(excess: Dict[int, int]) -> Optional[List[int]]:
    """Deconvolve a dimension excess by the Poincare series of A(1)."""
    A = algebra(1)
    series = [len(A.by_degree(d)) for d in range(A.top + 1)]
    rest = dict(excess)
    out = []
    for d in sorted(rest):
        while rest.get(d, 0) > 0:
            out.append(d)
            for i, c in enumerate(series):
                rest[d + i] = rest.get(d + i, 0) - c
        if rest.get(d, 0) < 0:
            return None
    if any(v for v in rest.values()):
        return None
    return out


@dataclass
class CofiberReport:
    i: int
    shift: int
    black: ExtChart
    red: ExtChart
    target: ExtChart
    free_bottoms: List[int]
    cancellations: Dict[Bidegree, int]
    residue: List[Bidegree]
    new_generators: List[Bidegree]
    b_position: Bidegree
    mu_readings: Dict[str, Tuple[Bidegree, bool]]
    annotations: List[Tuple[str, int, int, str]]

    @property
    def ok(self) -> bool:
        return not self.residue and self.free_bottoms is not None


def cofiber_reconciliation(i: int, stem_max: Optional[int] = None, s_max: int = 16) -> CofiberReport:
    """Rebuild the chart of B(2^(i+1)) from the smash square and the Moore-space cofiber.

    Positions are reported in B-coordinates, B(j) = Sigma^(12j) BG(j).
    """
    if i < 0:
        raise ValueError("i must be non-negative")
    m = 1 << i
    shift = 24 * m  # B(2m) sits 12 * 2m above BG(2m)
    moore_shift = (1 << (i + 5)) - 4 - shift
    if stem_max is None:
        stem_max = (1 << (i + 5)) + 4
    lo = stem_max - shift  # window in BG coordinates
    if lo < 0:
        raise WindowError(f"window ends below B({2 * m})")
    black_mod = tensor(brown_gitler(m), brown_gitler(m))
    red_mod = suspend(moore_smash_bg1(), moore_shift)
    target_mod = brown_gitler(2 * m)

    degrees = set(black_mod.degrees()) | set(red_mod.degrees()) | set(target_mod.degrees())
    excess = {d: black_mod.dim(d) + red_mod.dim(d) - target_mod.dim(d) for d in degrees}
    free = free_bottoms_from_dims(excess)

    # one extra stem and filtration so every pairing partner is visible
    black = ext_chart(black_mod, lo + 1, s_max + 1)
    red = ext_chart(red_mod, lo + 1, s_max + 1)
    target = ext_chart(target_mod, lo + 1, s_max + 1)

    free_count: Dict[int, int] = {}
    for b in free or []:
        free_count[b] = free_count.get(b, 0) + 1
    cancel: Dict[Bidegree, int] = {}
    residue: List[Bidegree] = []
    for s in range(s_max + 1):
        for n in range(0, lo + 1):
            ex = black.count(n, s) + red.count(n, s) - target.count(n, s)
            if s == 0:
                ex -= free_count.get(n, 0)
            c = ex - (cancel.get((n + 1, s - 1), 0) if s >= 1 else 0)
            if c < 0 or c > min(red.count(n, s), black.count(n - 1, s + 1)):
                residue.append((n + shift, s))
                c = max(0, c)
            if c:
                cancel[(n, s)] = c
    new = []
    for (n, s), labs in sorted(red.classes.items()):
        if n > lo or s > s_max:
            continue
        survivors = len(labs) - cancel.get((n, s), 0)
        new.extend([(n + shift, s)] * survivors)
    # new generators: surviving red classes not reached by h0 or h1 from a surviving red class
    generators = []
    for pos in sorted(set(new)):
        st, s = pos[0] - shift, pos[1]
        incoming = 0
        for kind, src in (("h0", (st, s - 1)), ("h1", (st - 1, s - 1))):
            if src[1] >= 0 and red.count(*src) - cancel.get(src, 0) > 0:
                incoming = max(incoming, f2.rank(red.product_matrix(kind, src)))
        survivors = new.count(pos)
        generators.extend([pos] * max(0, survivors - incoming))
    b_pos = ((1 << (i + 5)) - 4, 0)
    readings = {
        "stem 2^(i+4)": ((1 << (i + 4)), 1),
        "stem 2^(i+5)": ((1 << (i + 5)), 1),
    }
    mu = {name: (pos, pos in new) for name, pos in readings.items()}
    notes = []
    for (n, s) in sorted(set(new)):
        below = (n - shift, s + 1)
        black_survivors = black.count(*below) - cancel.get((n - shift + 1, s), 0)
        if black_survivors > 0:
            notes.append(("extension", n, s, "possible hidden 2-extension to the smash-square tower (unverified)"))
    return CofiberReport(
        i=i,
        shift=shift,
        black=black.restricted(lo, s_max).shifted(shift),
        red=red.restricted(lo, s_max).shifted(shift),
        target=target.restricted(lo, s_max).shifted(shift),
        free_bottoms=[b + shift for b in free] if free is not None else None,
        cancellations={(n + shift, s): c for (n, s), c in cancel.items()},
        residue=residue,
        new_generators=generators,
        b_position=b_pos,
        mu_readings=mu,
        annotations=notes,
    )


# ----------------------------------------------------------------------------
# ring-structure shadows


@dataclass
class RingReport:
    checks: Dict[str, bool]
    notes: List[str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def ring_presentation_report(bt: BoTmfChart) -> RingReport:
    C = bt.chart
    checks: Dict[str, bool] = {}
    notes: List[str] = []
    checks["sigma.8.0"] = C.count(8, 0) > 0
    i = 0
    while (1 << (i + 4)) - 4 <= C.stem_max:
        b = ((1 << (i + 4)) - 4, 0)
        checks[f"b{i}.present"] = C.count(*b) > 0
        checks[f"b{i}.no-h1"] = f2.rank(C.product_matrix("h1", b)) == 0
        checks[f"b{i}.tower"] = b in tower_bottoms(C)
        mu = (1 << (i + 4), 1)
        if mu[0] <= C.stem_max:
            checks[f"mu{i}.present"] = C.count(*mu) > 0
        if i >= 1:
            sq = ((1 << (i + 4)) - 8, 0)
            checks[f"b{i - 1}^2.tower"] = sq in tower_bottoms(C)
        i += 1
    notes.append("hidden extensions mu*b_i^2 = 8 b_(i+1) and mu*b_i = 4 mu_i are not visible on E2; unverified")
    return RingReport(checks, notes)
