"""Command-line entry point: build modules, run verification suites, compute charts."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from . import ext, homology, render
from .modules import module_to_text, suspend
from .steenrod import DEFAULT_DEGREE_BOUND

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

Check = Tuple[str, bool, str]  # id, passed, detail

# constructions whose modules are cut off at the degree bound
TRUNCATED = ("tmf", "bo", "hz", "omega", "n:")


class UsageError(Exception):
    pass


def write_output(text: str, path: Optional[str]) -> None:
    if not path:
        sys.stdout.write(text)
        return
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".botmf-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _module(name: str, max_degree: int):
    if max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    try:
        return homology.construction(name, max_degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_window(name: str, args) -> None:
    if args.stem_max < 0 or args.s_max < 0:
        raise UsageError("window bounds must be non-negative")
    if name.startswith(TRUNCATED) or name in TRUNCATED:
        need = ext.required_degree(args.stem_max - args.suspend, args.s_max)
        if args.max_degree < need:
            raise UsageError(
                f"--max-degree {args.max_degree} cannot certify stems <= {args.stem_max} "
                f"with s <= {args.s_max}; minimal admissible --max-degree is {need}"
            )


def _chart(args) -> ext.ExtChart:
    _check_window(args.construction, args)
    M = _module(args.construction, args.max_degree)
    if args.suspend:
        M = suspend(M, args.suspend)
    return ext.ext_chart(M, args.stem_max, args.s_max)


# ----------------------------------------------------------------------------
# verification suites


def suite_splitting(args) -> Iterator[Check]:
    cert = homology.verify_tmf_splitting(args.max_degree)
    through = cert.certified_through
    yield "splitting.tmf.linear", bool(cert.linear), f"A(1)-linear through degree {through}"
    yield "splitting.tmf.bijective", cert.bijective, f"degreewise bijective through degree {through}"
    for i in range(1, 5):
        if 8 * i <= through:
            f = homology.v_tmf(i, args.max_degree)
            ok = bool(homology.check_linear(f, through)) and homology.is_isomorphic_via(f, through)
            yield f"splitting.v-tmf.{i}", ok, f"N_{8 * i}(tmf) ~ S^{8 * i} M_bo({4 * i})"
    for j in range(0, 5):
        if 4 * j <= through:
            f = homology.v_bo(j, args.max_degree)
            ok = bool(homology.check_linear(f, through)) and homology.is_isomorphic_via(f, through)
            yield f"splitting.v-bo.{j}", ok, f"N_{4 * j}(bo) ~ S^{4 * j} BG({j})"


def suite_weights(args) -> Iterator[Check]:
    for ring in ("tmf", "bo", "hz"):
        bad = homology.weight_violations(ring, args.max_degree)
        ks = homology.RING_SQ_RANGE[ring]
        detail = f"Sq^{ks.start}..Sq^{ks.stop - 1}, {len(bad)} weight-changing terms"
        yield f"weights.{ring}.stability", not bad, detail
    for k in (1, 2, 4):
        ok = homology.block_diagonal("tmf", k, args.max_degree)
        yield f"weights.tmf.sq{k}.blockdiag", ok, f"Sq^{k} preserves weight components"
    R = homology.ring_homology("tmf", args.max_degree)
    lists = {"tmf": (8, 12, 14, 15, 31), "bo": (4, 6, 7, 15, 31), "hz": (2, 3, 7, 15, 31)}
    for ring, gens in lists.items():
        R = homology.ring_homology(ring, args.max_degree)
        got = R.module.dims(0, args.max_degree)
        want = homology.poincare_series(gens, args.max_degree)
        yield f"weights.{ring}.poincare", got == want, f"dimensions through {args.max_degree}"


DAVIS_CASES = [(1,), (2,), (1, 1), (3,)]


def _parse_case(text: str) -> Tuple[int, ...]:
    try:
        ns = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"bad --case {text!r}") from None
    if not ns or any(n <= 0 for n in ns):
        raise UsageError("--case needs positive integers")
    return ns


def suite_davis(args) -> Iterator[Check]:
    cases = [_parse_case(c) for c in args.case] if args.case else DAVIS_CASES
    stem_max = min(args.stem_max, 24)
    s_max = min(args.s_max, 12)
    for ns in cases:
        rep = ext.davis_compare(ns, stem_max, s_max)
        yield f"davis.case-{'-'.join(map(str, ns))}", rep.ok, str(rep)


def suite_census(args) -> Iterator[Check]:
    need = ext.required_degree(args.stem_max, args.s_max)
    if args.max_degree < need:
        raise UsageError(f"minimal admissible --max-degree is {need}")
    bt = ext.bo_tmf_chart(args.max_degree, args.stem_max, args.s_max)
    c = bt.census
    checks = c.checks()
    yield "census.towers.stem0mod4", checks["towers.stem0mod4"], f"tower bottoms {sorted(set(c.tower_bottoms))}"
    yield "census.eta-towers.stem4mod8", checks["eta-towers.stem4mod8"], f"eta-supporting tower bottoms {c.eta_towers}"
    yield "census.vacant.3567mod8", checks["vacant.3567mod8"], f"positive-filtration classes there: {c.positive_in_vacant_stems}"
    om = ext.omega_chart(args.max_degree, args.stem_max, args.s_max)
    diff = ext.first_difference(bt.chart, om)
    yield "census.change-of-rings", diff is None, "tmf chart equals the union of shifted BG(j) charts" + (
        "" if diff is None else f"; first difference at {diff}"
    )
    yield "census.free-summands", True, f"free A(1) summands with bottoms {c.free_bottoms} (reported only)"


def suite_cofiber(args) -> Iterator[Check]:
    cases = [int(c) for c in args.case] if args.case else [0, 1]
    for i in cases:
        if i not in (0, 1):
            raise UsageError("cofiber cases are 0 and 1")
        rep = ext.cofiber_reconciliation(i, s_max=args.s_max)
        pre = f"cofiber.i{i}"
        yield f"{pre}.free-split", rep.free_bottoms is not None, f"free A(1) summands at {rep.free_bottoms}"
        yield f"{pre}.pairing", not rep.residue, f"cancellations {sorted(rep.cancellations.items())}" + (
            f"; residue {rep.residue}" if rep.residue else ""
        )
        yield f"{pre}.b-new", rep.b_position in rep.new_generators, f"b_{i + 1} expected at {rep.b_position}; new generators {rep.new_generators}"
        found = [name for name, (pos, hit) in rep.mu_readings.items() if hit]
        yield f"{pre}.mu-located", bool(found), "mu_%d readings: %s" % (
            i + 1,
            "; ".join(f"{n} at {p}: {'found' if h else 'absent'}" for n, (p, h) in rep.mu_readings.items()),
        )
        sq = ((1 << (i + 5)) - 8, 0)
        towers = ext.tower_bottoms(rep.black)
        yield f"{pre}.square-tower", sq in towers, f"b_{i}^2 at {sq} starts an h0-tower"


def suite_ring(args) -> Iterator[Check]:
    bt = ext.bo_tmf_chart(args.max_degree, args.stem_max, args.s_max)
    rep = ext.ring_presentation_report(bt)
    for key, ok in rep.checks.items():
        yield f"ring.{key}", ok, ""
    for note in rep.notes:
        print(f"note: {note}")


SUITES: Dict[str, Callable[..., Iterator[Check]]] = {
    "splitting": suite_splitting,
    "weights": suite_weights,
    "davis": suite_davis,
    "chart-census": suite_census,
    "cofiber": suite_cofiber,
    "ring": suite_ring,
}


def run_suites(names: Sequence[str], args) -> Tuple[List[Check], List[str]]:
    results = []
    lines = []
    for name in names:
        for cid, ok, detail in SUITES[name](args):
            results.append((cid, ok, detail))
            lines.append(f"{'PASS' if ok else 'FAIL'} {cid}" + (f"  # {detail}" if detail else ""))
    return results, lines


# ----------------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    M = _module(args.construction, args.max_degree)
    if args.suspend:
        M = suspend(M, args.suspend)
    write_output(module_to_text(M), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results, lines = run_suites(names, args)
    for ln in lines:
        print(ln)
    failed = sum(1 for _, ok, _ in results if not ok)
    print(f"{len(results) - failed} passed, {failed} failed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_ext(args) -> int:
    C = _chart(args)
    write_output(ext.chart_to_text(C), args.out)
    return EXIT_OK


def cmd_chart(args) -> int:
    C = _chart(args)
    spec = render.RenderSpec(elide_above=args.elide)
    if args.format == "chart":
        text = ext.chart_to_text(C)
    elif args.format == "svg":
        text = render.render_svg(C, spec)
    else:
        text = render.render_ascii(C, spec)
    write_output(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="botmf", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window=True):
        sp.add_argument("--max-degree", type=int, default=DEFAULT_DEGREE_BOUND)
        sp.add_argument("--out", default=None, help="write here (atomically) instead of stdout")
        if window:
            sp.add_argument("--stem-max", type=int, default=32)
            sp.add_argument("--s-max", type=int, default=16)

    b = sub.add_parser("build", help="serialize a module (MODULE v1)")
    b.add_argument("construction", help="tmf, bo, hz, omega, moore-bg1, bg:<j>, bobg:<i>, n:<ring>:<k>")
    b.add_argument("--suspend", type=int, default=0)
    common(b, window=False)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.add_argument("--case", action="append", help="davis: comma list such as 1,1; cofiber: 0 or 1")
    common(v)
    v.set_defaults(func=cmd_verify, suspend=0)

    for name, func, helptext in (("ext", cmd_ext, "compute a CHART v1 file"), ("chart", cmd_chart, "render a chart")):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("construction")
        c.add_argument("--suspend", type=int, default=0)
        common(c)
        if name == "chart":
            c.add_argument("--format", choices=["txt", "svg", "chart"], default="txt")
            c.add_argument("--elide", type=int, default=None, help="tower segment length before the elision marker")
        c.set_defaults(func=func)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ext.WindowError) as exc:
        parser.print_usage(sys.stderr)
        print(f"botmf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
