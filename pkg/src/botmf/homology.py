"""Truncated homology of HZ, bo and tmf as right modules, and the splitting.

All modules here have monomial bases labelled in the ``z1^8 z2^4`` text
form.  The splitting of H_*tmf is assembled from explicit maps: projection
to a weight component, V into H_*bo, projection to a bo-weight component,
then V into H_*HZ, where the result lies in a Brown-Gitler module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import f2
from .modules import (
    GradedModule,
    LinearityReport,
    ModuleError,
    ModuleMap,
    check_linear,
    direct_sum,
    is_isomorphic_via,
    moore,
    restrict,
    suspend,
    tensor,
)
from .steenrod import (
    DEFAULT_DEGREE_BOUND,
    Monomial,
    ZetaPolynomial,
    degree_of,
    format_monomial,
    generator_monomials,
    monomial_key,
    monomials_in,
    parse_monomial,
    sq_monomial,
    weight_of,
)

RINGS = {"hz": ("hz", 1, 2), "bo": ("bo", 1, 4), "tmf": ("tmf", 2, 8)}
# certified range margin: top degree of A(1)
MARGIN = 6


def monomial_module(
    name: str, monos: Sequence[Monomial], alg: int, bound: int
) -> GradedModule:
    """Right module spanned by ``monos``; raises if the span is not closed."""
    monos = sorted(set(monos), key=monomial_key)
    basis: Dict[int, List[Monomial]] = {}
    for m in monos:
        basis.setdefault(degree_of(m), []).append(m)
    index = {d: {m: i for i, m in enumerate(ms)} for d, ms in basis.items()}
    gens = (1, 2) if alg == 1 else (1, 2, 4)
    act: Dict[int, Dict[int, List[int]]] = {}
    for k in gens:
        rows_k = {}
        for d, ms in basis.items():
            rows = []
            for m in ms:
                v = 0
                for t in sq_monomial(m, k):
                    try:
                        v ^= 1 << index[d - k][t]
                    except KeyError:
                        raise ModuleError(
                            f"{name} is not closed: {format_monomial(m)} . Sq^{k} contains {format_monomial(t)}"
                        ) from None
                rows.append(v)
            rows_k[d] = rows
        act[k] = rows_k
    labels = {d: [format_monomial(m) for m in ms] for d, ms in basis.items()}
    return GradedModule(name, labels, act, alg=alg, side="right", degree_bound=bound)


def monomials_of(M: GradedModule, d: int) -> List[Monomial]:
    return [parse_monomial(lab) for lab in M.basis.get(d, ())]


@dataclass
class RingHomology:
    which: str
    module: GradedModule
    monomials: Dict[int, List[Monomial]]

    @property
    def max_degree(self) -> int:
        return self.module.degree_bound


@lru_cache(maxsize=None)
def ring_homology(which: str, max_degree: int = DEFAULT_DEGREE_BOUND) -> RingHomology:
    if which not in RINGS:
        raise ValueError(f"unknown ring {which!r}")
    if max_degree < 0:
        raise ValueError("degree bound must be non-negative")
    kind, alg, _ = RINGS[which]
    monos = monomials_in(generator_monomials(kind, max_degree), max_degree)
    M = monomial_module(which, monos, alg, max_degree)
    by_deg: Dict[int, List[Monomial]] = {}
    for m in monos:
        by_deg.setdefault(degree_of(m), []).append(m)
    return RingHomology(which, M, by_deg)


def poincare_series(generator_degrees: Sequence[int], max_degree: int) -> List[int]:
    """Coefficients of prod 1/(1 - x^d) through ``max_degree``."""
    coeffs = [1] + [0] * max_degree
    for g in generator_degrees:
        for n in range(g, max_degree + 1):
            coeffs[n] += coeffs[n - g]
    return coeffs


@dataclass
class WeightComponent:
    parent: RingHomology
    k: int
    module: GradedModule


def weight_component(R: RingHomology, k: int) -> WeightComponent:
    if k < 0:
        raise ValueError("weight must be non-negative")
    monos = [m for ms in R.monomials.values() for m in ms if weight_of(m) == k]
    alg = RINGS[R.which][1]
    M = monomial_module(f"N_{k}({R.which})", monos, alg, R.max_degree)
    return WeightComponent(R, k, M)


def verschiebung_monomial(m: Monomial) -> Monomial:
    return tuple(m[1:]) if len(m) > 1 else ()


def verschiebung(x: ZetaPolynomial) -> ZetaPolynomial:
    """Ring map zeta_1 -> 1, zeta_i -> zeta_(i-1)."""
    return ZetaPolynomial(verschiebung_monomial(m) for m in x.terms)


@lru_cache(maxsize=None)
def brown_gitler(j: int) -> GradedModule:
    """Span of monomials of weight <= 2j in H_*HZ."""
    if j < 0:
        raise ValueError("j must be non-negative")
    top = 4 * j
    monos = [m for m in monomials_in(generator_monomials("hz", top), top) if weight_of(m) <= 2 * j]
    return monomial_module(f"BG({j})", monos, 1, top)


@lru_cache(maxsize=None)
def bo_brown_gitler(i: int) -> GradedModule:
    """Span of monomials of weight <= 4i in H_*bo."""
    if i < 0:
        raise ValueError("i must be non-negative")
    top = 8 * i
    monos = [m for m in monomials_in(generator_monomials("bo", top), top) if weight_of(m) <= 4 * i]
    return monomial_module(f"Mbo({i})", monos, 1, top)


def bo_brown_gitler_a2(i: int) -> GradedModule:
    """M_bo(4i) with its A(2)-action (it is an A(2)-submodule of H_*bo)."""
    M = bo_brown_gitler(i)
    monos = [m for d in M.degrees() for m in monomials_of(M, d)]
    return monomial_module(f"Mbo({i})", monos, 2, M.degree_bound)


def _monomial_map(
    source: GradedModule,
    target: GradedModule,
    shift: int,
    fn,
    name: str,
) -> ModuleMap:
    mats = {}
    for d in source.degrees():
        idx = target.label_index(d + shift)
        rows = []
        for m in monomials_of(source, d):
            img = fn(m)
            if img is None:
                rows.append(0)
                continue
            lab = format_monomial(img)
            if lab not in idx:
                raise ModuleError(f"{name}: {format_monomial(m)} maps outside the target ({lab})")
            rows.append(1 << idx[lab])
        mats[d] = rows
    return ModuleMap(source, target, shift, mats, name)


def v_tmf(i: int, max_degree: int = DEFAULT_DEGREE_BOUND) -> ModuleMap:
    """V restricted to N_{8i}(tmf), landing in M_bo(4i) with degree shift -8i."""
    N = weight_component(ring_homology("tmf", max_degree), 8 * i).module
    return _monomial_map(N, bo_brown_gitler_a2(i), -8 * i, verschiebung_monomial, f"V_tmf[{i}]")


def v_bo(j: int, max_degree: int = DEFAULT_DEGREE_BOUND) -> ModuleMap:
    """V restricted to N_{4j}(bo), landing in BG(j) with degree shift -4j."""
    N = weight_component(ring_homology("bo", max_degree), 4 * j).module
    return _monomial_map(N, brown_gitler(j), -4 * j, verschiebung_monomial, f"V_bo[{j}]")


def pairing_multiplication(m: int, n: int) -> ModuleMap:
    """BG(m) (x) BG(n) -> BG(m+n), induced by multiplication in H_*HZ."""
    A, B, C = brown_gitler(m), brown_gitler(n), brown_gitler(m + n)
    T = tensor(A, B)
    mats = {}
    for d in T.degrees():
        idx = C.label_index(d)
        rows = []
        for lab in T.basis[d]:
            left, right = lab.split(" (x) ")
            prod = tuple(
                a + b
                for a, b in _zip_pad(parse_monomial(left), parse_monomial(right))
            )
            key = format_monomial(_trimmed(prod))
            if key not in idx:
                raise ModuleError(f"product {key} exceeds BG({m + n})")
            rows.append(1 << idx[key])
        mats[d] = rows
    return ModuleMap(T, C, 0, mats, f"mu[{m},{n}]")


def _zip_pad(a: Monomial, b: Monomial):
    n = max(len(a), len(b))
    return zip(a + (0,) * (n - len(a)), b + (0,) * (n - len(b)))


def _trimmed(m: Tuple[int, ...]) -> Monomial:
    m = list(m)
    while m and not m[-1]:
        m.pop()
    return tuple(m)


def cokernel_dims(f: ModuleMap) -> Dict[int, int]:
    out = {}
    for d in f.target.degrees():
        src = d - f.shift
        r = f2.rank(f.matrix(src)) if f.source.dim(src) else 0
        c = f.target.dim(d) - r
        if c:
            out[d] = c
    return out


def omega_summands(max_degree: int) -> List[Tuple[int, int]]:
    """(j, k) with the summand Sigma^(8k+12j) BG(j) starting at or below the bound."""
    out = []
    j = 0
    while 12 * j <= max_degree:
        k = 0
        while 8 * k + 12 * j <= max_degree:
            out.append((j, k))
            k += 1
        j += 1
    return out


def omega_tag(j: int, k: int) -> str:
    return f"j={j},k={k}"


@lru_cache(maxsize=None)
def omega_model(max_degree: int = DEFAULT_DEGREE_BOUND) -> GradedModule:
    parts, tags = [], []
    for j, k in omega_summands(max_degree):
        S = suspend(brown_gitler(j), 8 * k + 12 * j)
        basis = {d: b for d, b in S.basis.items() if d <= max_degree}
        act = {g: {d: r for d, r in S.act[g].items() if d <= max_degree} for g in S.gens}
        parts.append(GradedModule(S.name, basis, act, alg=1, side="right", degree_bound=max_degree))
        tags.append(omega_tag(j, k))
    M = direct_sum(parts, tags, name="Omega")
    M.degree_bound = max_degree
    return M


@dataclass
class SplittingCertificate:
    map: ModuleMap
    linear: LinearityReport
    bijective: bool
    certified_through: int

    @property
    def ok(self) -> bool:
        return bool(self.linear) and self.bijective


def splitting_image(m: Monomial) -> Tuple[int, int, Monomial]:
    """(j, k, w): where the tmf monomial m lands in the Omega model."""
    i = weight_of(m) // 8
    u = verschiebung_monomial(m)
    j = weight_of(u) // 4
    w = verschiebung_monomial(u)
    return j, i - j, w


def splitting_map(max_degree: int = DEFAULT_DEGREE_BOUND) -> ModuleMap:
    R = ring_homology("tmf", max_degree)
    src = restrict(R.module, 1)
    tgt = omega_model(max_degree)
    mats = {}
    for d in src.degrees():
        idx = tgt.label_index(d)
        rows = []
        for m in R.monomials[d]:
            j, k, w = splitting_image(m)
            lab = f"[{omega_tag(j, k)}] {format_monomial(w)}"
            if lab not in idx:
                raise ModuleError(f"{format_monomial(m)} -> {lab} is not a basis element of Omega")
            rows.append(1 << idx[lab])
        mats[d] = rows
    return ModuleMap(src, tgt, 0, mats, "split")


def verify_tmf_splitting(max_degree: int = DEFAULT_DEGREE_BOUND) -> SplittingCertificate:
    f = splitting_map(max_degree)
    through = max_degree - MARGIN
    return SplittingCertificate(
        map=f,
        linear=check_linear(f, through=through),
        bijective=is_isomorphic_via(f, through=through),
        certified_through=through,
    )


def moore_smash_bg1() -> GradedModule:
    M = tensor(moore(), brown_gitler(1))
    M.name = "M(x)BG(1)"
    return M


def construction(name: str, max_degree: int = DEFAULT_DEGREE_BOUND) -> GradedModule:
    """Look up a module by its command-line name."""
    if name in RINGS:
        return ring_homology(name, max_degree).module
    if name == "omega":
        return omega_model(max_degree)
    if name == "moore-bg1":
        return moore_smash_bg1()
    head, _, rest = name.partition(":")
    try:
        if head == "bg":
            return brown_gitler(int(rest))
        if head == "bobg":
            return bo_brown_gitler(int(rest))
        if head == "n":
            ring, _, k = rest.partition(":")
            if ring in RINGS:
                return weight_component(ring_homology(ring, max_degree), int(k)).module
    except ValueError as exc:
        raise ValueError(f"bad construction {name!r}: {exc}") from None
    raise ValueError(f"unknown construction {name!r}")


# ----------------------------------------------------------------------------
# weight checks

# Sq^k lies in A(n) exactly for k < 2^(n+1)
RING_SQ_RANGE = {"hz": range(1, 2), "bo": range(1, 4), "tmf": range(1, 8)}


def weight_violations(which: str = "tmf", max_degree: int = DEFAULT_DEGREE_BOUND,
                      ks: Optional[Iterable[int]] = None) -> List[Tuple[Monomial, int, Monomial]]:
    """Terms of m.Sq^k whose weight differs from that of m."""
    R = ring_homology(which, max_degree)
    ks = list(RING_SQ_RANGE[which] if ks is None else ks)
    bad = []
    for ms in R.monomials.values():
        for m in ms:
            w = weight_of(m)
            for k in ks:
                for term in sorted(sq_monomial(m, k), key=monomial_key):
                    if weight_of(term) != w:
                        bad.append((m, k, term))
    return bad


def block_diagonal(which: str, k: int, max_degree: int = DEFAULT_DEGREE_BOUND) -> bool:
    """Whether the stored Sq^k matrix only joins monomials of equal weight."""
    R = ring_homology(which, max_degree)
    M = R.module
    for d in M.degrees():
        rows = M.action(k, d)
        tgt = R.monomials.get(d + M.step(k), [])
        for m, row in zip(R.monomials[d], rows):
            if any(weight_of(tgt[j]) != weight_of(m) for j in f2.bits(row)):
                return False
    return True
