"""Command-line surface: compute, enumerate, bounds, census, verify.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 invalid
triangulation.  JSON output never includes wall-clock times, so it is
byte-identical across runs and thread counts; timings appear only in
the human-readable form.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from itertools import product
from pathlib import Path

import mpmath

from .census import enumerate_census
from .colourings import (
    WeightSystem,
    _checked_skeleton,
    admissible_colouring,
    enumerate_admissible,
    state_sum,
)
from .cyclotomic import field_init, numeric_eval
from .fastalgo import adm4_structured, bounds, tv_odd_fast
from .homology import cocycle_space_1
from .loopcoords import (
    IntersectionSymbol,
    decompose_symbol,
    intersection_symbol,
    symbol_of,
    tet_weight_loop,
)
from .colourings import tetrahedron_weight, tv_at_class
from .triangulation import parse_triangulation, serialise_triangulation

USAGE = 2
INVALID_INPUT = 3
VERIFY_FAILED = 1


def _fail_usage(message: str) -> int:
    print(f"tv: error: {message}", file=sys.stderr)
    return USAGE


def _load_skeleton(path: str):
    """Parse and validate; returns a Skeleton or an exit code."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        print(f"tv: cannot read {path}: {exc}", file=sys.stderr)
        return INVALID_INPUT
    try:
        tri = parse_triangulation(text)
        return _checked_skeleton(tri)
    except ValueError as exc:
        print(f"tv: invalid triangulation in {path}: {exc}", file=sys.stderr)
        return INVALID_INPUT


@dataclass
class ResultDocument:
    """One computed invariant value plus how it was obtained."""

    input_path: str
    r: int
    q: int
    algorithm: str
    class_bits: str | None
    digits: int
    exact: list
    decimal_real: str
    decimal_imag: str
    admissible: int
    nodes_visited: int
    wall_seconds: float

    def to_json(self) -> str:
        doc = {
            "input": self.input_path,
            "r": self.r,
            "q": self.q,
            "algorithm": self.algorithm,
            "class": self.class_bits,
            "digits": self.digits,
            "exact": self.exact,
            "decimal": {"real": self.decimal_real,
                        "imag": self.decimal_imag},
            "counts": {"admissible": self.admissible,
                       "nodes_visited": self.nodes_visited},
        }
        return json.dumps(doc, sort_keys=True)

    def human_lines(self):
        yield f"input:      {self.input_path}"
        yield f"level:      r={self.r} q={self.q}"
        yield f"algorithm:  {self.algorithm}"
        if self.class_bits is not None:
            yield f"class:      [{self.class_bits}]"
        yield f"exact:      {self.exact}"
        yield (f"decimal:    {self.decimal_real} + {self.decimal_imag}i"
               f"  ({self.digits} digits)")
        yield (f"counts:     {self.admissible} admissible, "
               f"{self.nodes_visited} nodes visited")
        yield f"wall time:  {self.wall_seconds:.3f}s"


def _choose_algorithm(args, skel) -> str | None:
    """Resolve --algorithm, or return None after printing a usage error."""
    explicit = args.algorithm
    if args.class_bits is not None and explicit in ("tv4", "odd-fast"):
        _fail_usage("--class only works with the naive algorithm")
        return None
    if explicit == "tv4":
        if args.r != 4:
            _fail_usage("--algorithm tv4 requires --r 4")
            return None
        return "tv4"
    if explicit == "odd-fast":
        if args.r % 2 == 0 or args.r < 3:
            _fail_usage("--algorithm odd-fast requires odd r >= 3")
            return None
        if args.q != 1:
            _fail_usage("--algorithm odd-fast is only defined for q = 1")
            return None
        if skel.v != 1:
            _fail_usage("--algorithm odd-fast needs a one-vertex "
                        "triangulation; rerun without --algorithm")
            return None
        return "odd-fast"
    if explicit == "naive":
        return "naive"
    # auto selection
    if args.class_bits is not None:
        return "naive"
    if args.r == 4:
        return "tv4"
    if args.r % 2 == 1 and args.q == 1:
        if skel.v == 1:
            return "odd-fast"
        print("tv: note: fast odd-r path needs a one-vertex triangulation; "
              "using the naive state sum", file=sys.stderr)
    return "naive"


def _cmd_compute(args) -> int:
    skel = _load_skeleton(args.file)
    if isinstance(skel, int):
        return skel
    try:
        field_init(args.r, args.q)
    except ValueError as exc:
        return _fail_usage(str(exc))
    if args.threads < 1:
        return _fail_usage("--threads must be >= 1")

    class_coords = None
    if args.class_bits is not None:
        basis = cocycle_space_1(skel)
        bits = args.class_bits
        if len(bits) != basis.beta1 or any(ch not in "01" for ch in bits):
            return _fail_usage(
                f"--class needs a bit string of length {basis.beta1}")
        class_coords = tuple(int(ch) for ch in bits)

    algorithm = _choose_algorithm(args, skel)
    if algorithm is None:
        return USAGE

    start = time.perf_counter()
    if algorithm == "tv4":
        colourings, stats = adm4_structured(skel, threads=args.threads)
        weights = WeightSystem(skel, 4, args.q)
        value = weights.ctx.zero
        for col in colourings:
            value = value + weights.colouring_weight(col)
    elif algorithm == "odd-fast":
        value = tv_odd_fast(skel, args.r)
        # counts describe the level-r integer-only search the fast path runs
        _, stats = enumerate_admissible(skel, args.r, integer_only=True)
    else:
        value, stats = state_sum(skel, args.r, args.q,
                                 class_coords=class_coords,
                                 threads=args.threads)
    wall = time.perf_counter() - start

    approx = numeric_eval(value, args.digits)
    doc = ResultDocument(
        input_path=args.file, r=args.r, q=args.q, algorithm=algorithm,
        class_bits=args.class_bits, digits=args.digits,
        exact=value.to_strings(),
        decimal_real=mpmath.nstr(approx.real, args.digits),
        decimal_imag=mpmath.nstr(approx.imag, args.digits),
        admissible=stats.admissible_count,
        nodes_visited=stats.nodes_visited,
        wall_seconds=wall)
    if args.json:
        print(doc.to_json())
    else:
        for line in doc.human_lines():
            print(line)
    return 0


def _cmd_enumerate(args) -> int:
    skel = _load_skeleton(args.file)
    if isinstance(skel, int):
        return skel
    try:
        field_init(args.r, 1)
    except ValueError as exc:
        return _fail_usage(str(exc))
    colourings, stats = enumerate_admissible(
        skel, args.r, integer_only=args.integer_only)
    if args.count_only:
        print(f"admissible: {len(colourings)}")
        print(f"nodes visited: {stats.nodes_visited}")
        return 0
    for col in colourings:
        print(" ".join(str(a) for a in col.doubled))
    return 0


def _cmd_bounds(args) -> int:
    skel = _load_skeleton(args.file)
    if isinstance(skel, int):
        return skel
    try:
        field_init(args.r, 1)
    except ValueError as exc:
        return _fail_usage(str(exc))
    print(bounds(skel, args.r).to_json())
    return 0


def _cmd_census(args) -> int:
    if args.tets < 1:
        return _fail_usage("--tets must be >= 1")
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"tv: cannot create {out}: {exc}", file=sys.stderr)
        return INVALID_INPUT
    count = 0
    for index, tri in enumerate(enumerate_census(
            args.tets, one_vertex=args.one_vertex,
            z2_homology_sphere=args.z2hs)):
        path = out / f"census_t{args.tets}_{index:04d}.tri"
        path.write_text(serialise_triangulation(tri))
        print(path)
        count += 1
    print(f"wrote {count} file(s) to {out}")
    return 0


def _run_verify(skel, r: int) -> int:
    failures = 0

    def check(name: str, passed: bool, detail: str = ""):
        nonlocal failures
        tag = "ok" if passed else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"{tag}: {name}{suffix}")
        if not passed:
            failures += 1

    basis = cocycle_space_1(skel)
    level3, _ = enumerate_admissible(skel, 3)
    check("level-3 count is 2^(v-1+beta1)",
          len(level3) == 1 << (skel.v - 1 + basis.beta1),
          f"{len(level3)} colourings, beta1={basis.beta1}")

    colourings, stats = enumerate_admissible(skel, r)
    check(f"level-{r} enumeration self-consistent",
          all(admissible_colouring(skel, col.doubled, r)
              for col in colourings),
          f"{len(colourings)} colourings, {stats.nodes_visited} nodes")

    domain_size = (r - 1) ** skel.e
    if domain_size <= 200_000:
        direct = sum(
            1 for cand in product(range(r - 1), repeat=skel.e)
            if admissible_colouring(skel, cand, r))
        check("enumeration matches the direct filter",
              direct == len(colourings), f"{domain_size} candidates")
    else:
        print(f"ok: direct filter skipped ({domain_size} candidates)")

    ctx = field_init(r, 1)
    n_tets = len(skel.triangulation.gluings)
    symbols = {}
    recon_ok = True
    for col in colourings:
        for tet in range(n_tets):
            sym = intersection_symbol(skel, col, tet)
            dec = decompose_symbol(sym)
            if symbol_of(dec).rows != sym.rows:
                recon_ok = False
            symbols.setdefault(sym.rows, dec)
    check("every symbol decomposes and reconstructs", recon_ok,
          f"{len(symbols)} distinct symbols")
    weights_ok = True
    for rows, dec in sorted(symbols.items()):
        sym = IntersectionSymbol(rows)
        same = tet_weight_loop(ctx, dec) == tetrahedron_weight(
            ctx, sym.doubled_colours())
        if not same:
            weights_ok = False
        counts = f"vertex loops {dec.vertex_counts}"
        if dec.p:
            counts += f" + {dec.p} x ({dec.i},{dec.j}) loop"
        print(f"    {sym}  ->  {counts}  "
              f"[weights {'agree' if same else 'DIFFER'}]")
    check("loop weights equal edge-colour weights", weights_ok)

    weights = WeightSystem(skel, r, 1)
    total = weights.ctx.zero
    for col in colourings:
        total = total + weights.colouring_weight(col)
    by_class = weights.ctx.zero
    for bits in range(1 << basis.beta1):
        coords = tuple((bits >> k) & 1 for k in range(basis.beta1))
        by_class = by_class + tv_at_class(skel, r, 1, coords)
    check("class-wise sums add up to the state sum", by_class == total)

    if r == 4:
        fast, _ = adm4_structured(skel)
        check("structured level-4 enumeration matches",
              {c.doubled for c in fast} == {c.doubled for c in colourings})
    if r % 2 == 1 and skel.v == 1:
        check("fast odd-r value matches the state sum",
              tv_odd_fast(skel, r) == total)

    report = bounds(skel, r)
    applicable = [b for b in (report.naive, report.kernel_sum_bound,
                              report.coarse_cocycle_bound,
                              report.integer_colour_bound,
                              report.small_level_bound) if b is not None]
    check("count within every applicable bound",
          all(report.actual <= b for b in applicable),
          report.to_json())

    _, int_stats = enumerate_admissible(skel, r, integer_only=True)
    check("integer-only search visits no more nodes",
          int_stats.nodes_visited <= stats.nodes_visited,
          f"{int_stats.nodes_visited} <= {stats.nodes_visited}")

    if failures:
        print(f"{failures} check(s) failed")
        return VERIFY_FAILED
    print("all checks passed")
    return 0


def _cmd_verify(args) -> int:
    skel = _load_skeleton(args.file)
    if isinstance(skel, int):
        return skel
    try:
        field_init(args.r, 1)
    except ValueError as exc:
        return _fail_usage(str(exc))
    return _run_verify(skel, args.r)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tv",
        description="Exact Turaev-Viro-type invariants of closed "
                    "3-manifold triangulations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate the invariant")
    p.add_argument("--file", required=True, help="gluing-table file")
    p.add_argument("--r", type=int, required=True, help="level, >= 3")
    p.add_argument("--q", type=int, default=1,
                   help="root choice, 0 < q < 2r, gcd(r, q) = 1")
    p.add_argument("--algorithm", choices=["naive", "tv4", "odd-fast"],
                   help="default: auto-select")
    p.add_argument("--class", dest="class_bits", metavar="BITS",
                   help="restrict to one cohomology class "
                        "(bit string of length beta1)")
    p.add_argument("--json", action="store_true",
                   help="machine-readable output, no timings")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--digits", type=int, default=12,
                   help="decimal display precision")
    p.set_defaults(handler=_cmd_compute)

    p = sub.add_parser("enumerate", help="list admissible colourings")
    p.add_argument("--file", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--integer-only", action="store_true",
                   help="even doubled colours only")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("bounds", help="colouring-count bounds as JSON")
    p.add_argument("--file", required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("census", help="write all closed triangulations "
                                      "with the given tetrahedron count")
    p.add_argument("--tets", type=int, required=True)
    p.add_argument("--one-vertex", action="store_true")
    p.add_argument("--z2hs", action="store_true",
                   help="keep Z/2-homology spheres only")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(handler=_cmd_census)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("--file", required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
