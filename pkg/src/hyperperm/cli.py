"""Command-line interface: ``hyperperm <subcommand> ...``.

Exit codes: 0 success, 1 domain or input error, 2 resource budget exhausted.
Reports are plain text with ``key: value`` lines.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import bounds, combinat, genfun, htformat, permanent, polytope
from ._parallel import default_workers
from .exceptions import DomainError, ResourceLimitExceeded


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Output:
    """Formats scalars in exact or fixed-precision decimal mode."""

    def __init__(self, stream, digits=None):
        self.stream = stream
        self.digits = digits
        if digits is not None:
            self.line(f"# decimal mode: {digits} significant digits")

    def value(self, x) -> str:
        if self.digits is None or not isinstance(x, Fraction):
            return str(x)
        with localcontext() as ctx:
            ctx.prec = self.digits
            return str(Decimal(x.numerator) / Decimal(x.denominator))

    def line(self, text=""):
        self.stream.write(text + "\n")

    def kv(self, key, val):
        self.line(f"{key}: {self.value(val)}")


def _stochastic_level(s: str):
    if s in ("line", "plane"):
        return s
    if s.isdigit():
        return int(s)
    raise UsageError(f"--stochastic expects line, plane or an integer, got {s!r}")


def _load_chars(spec: str, n: int, d: int):
    parts = spec.split(",")
    out = []
    for part in parts:
        part = part.strip()
        if part == "sign":
            out.append(genfun.CharacterSpec.sign(n))
        elif part == "trivial":
            out.append(genfun.CharacterSpec.trivial(n))
        else:
            out.append(genfun.CharacterSpec.parse(Path(part).read_text()))
    if len(out) == 1:
        out = out * d
    return out


def _load_generators(path: str):
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.ht"))
        if not files:
            raise DomainError(f"no .ht files in {path}")
        return [htformat.load(f) for f in files]
    text = p.read_text()
    if text.lstrip().startswith("vertexset"):
        return htformat.loads_archive(text)
    return [htformat.loads(text)]


def cmd_per(args, out):
    A = htformat.load(args.file)
    if args.k == 1:
        fn = permanent.per1 if args.definition == "eq1" else permanent.per1_min
        out.line(out.value(fn(A, workers=args.workers)))
    else:
        if args.definition != "eq1":
            raise UsageError("--def eq2 applies to k = 1 only")
        out.line(out.value(permanent.kper(A, args.k, workers=args.workers)))


def cmd_det(args, out):
    out.line(out.value(genfun.hyperdet(htformat.load(args.file))))


def cmd_gtf(args, out):
    A = htformat.load(args.file)
    if not A.cubical:
        raise DomainError("gtf needs a cubical tensor")
    chars = _load_chars(args.chars, A.n, A.order)
    if args.mode == "full":
        out.line(out.value(genfun.gtf(A, chars)))
    else:
        per_slice = None
        if len(args.chars.split(",")) > 1:
            per_slice = chars
        out.line(out.value(genfun.gtf2_3d(A, chars[0], per_slice)))


def cmd_kgtf(args, out):
    A = htformat.load(args.file)
    if args.weight not in genfun.WEIGHTS:
        raise UsageError(f"unknown weight {args.weight!r}; choose from {sorted(genfun.WEIGHTS)}")
    out.line(out.value(genfun.kgtf(A, args.k, args.weight)))


def cmd_check(args, out):
    A = htformat.load(args.file)
    level = _stochastic_level(args.stochastic)
    name = level if isinstance(level, str) else f"{level}"
    try:
        stoch = polytope.is_k_stochastic(A, level)
    except polytope.NegativeEntryError:
        out.kv(f"{name}-stochastic", "false")
        out.kv("reason", "negative entries")
        return
    out.kv(f"{name}-stochastic", str(stoch).lower())
    out.kv(f"{name}-permutation", str(stoch and A.is_zero_one()).lower())


def _spec(args):
    return polytope.PolytopeSpec(args.n, args.d, _stochastic_level(args.kind))


def cmd_vertices(args, out):
    vs = polytope.enumerate_vertices(_spec(args))
    out.line(vs.summary())
    out.kv("total", vs.total)
    out.kv("zero_one", vs.zero_one)
    out.kv("non_zero_one", vs.non_zero_one)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for i, T in enumerate(vs.vertices, start=1):
            htformat.save(T, d / f"vertex_{i:04d}.ht")
        (d / "vertices.vset").write_text(htformat.dumps_archive(vs.vertices))
        out.kv("written", str(d))


def cmd_extreme(args, out):
    A = htformat.load(args.file)
    out.kv("extreme", str(polytope.is_extreme(A, _spec(args))).lower())


def cmd_hull(args, out):
    A = htformat.load(args.file)
    gens = _load_generators(args.generators)
    w = polytope.in_convex_hull(A, gens)
    out.kv("generators", len(gens))
    if w is None:
        out.kv("in_hull", "false")
    else:
        out.kv("in_hull", "true")
        out.kv("weights", " ".join(out.value(x) for x in w))


def cmd_latin(args, out):
    if args.count_only:
        out.kv("latin_squares", combinat.count_latin_squares(args.n))
        return
    count = 0
    for sq in combinat.latin_squares(args.n):
        count += 1
        out.line(f"square {count}")
        for row in sq:
            out.line(" ".join(map(str, row)))
    out.kv("latin_squares", count)


def cmd_patterns(args, out):
    if args.count_only:
        out.kv("patterns", sum(1 for _ in combinat.diagonal_patterns(args.d, args.n, args.k)))
        return
    count = 0
    for p in combinat.diagonal_patterns(args.d, args.n, args.k):
        count += 1
        out.line(f"pattern {count}: " + " ".join("".join(map(str, c)) for c in p.cells))
    out.kv("patterns", count)


def cmd_bounds(args, out):
    A = htformat.load(args.file)
    which = [args.which] if args.which else ["prop1", "prop2", "mb1", "mb2"]
    for w in which:
        if w == "prop1":
            cert = bounds.find_zero_block(A)
            out.kv("bound", "zero_block")
            if cert is None:
                out.kv("certificate", "none")
            else:
                out.kv("certificate", "; ".join(" ".join(map(str, s)) for s in cert.subsets))
                out.kv("per", permanent.per1(A, workers=args.workers))
        else:
            fn = {"prop2": bounds.lower_bound_01, "mb1": bounds.minc_bregman_1,
                  "mb2": bounds.minc_bregman_2}[w]
            for line in fn(A).lines():
                out.line(line)


def cmd_builtin(args, out):
    T = polytope.builtin_tensor(args.name)
    text = htformat.dumps(T)
    if args.out:
        Path(args.out).write_text(text)
        out.kv("written", args.out)
    else:
        out.stream.write(text)


def cmd_probe(args, out):
    rep = bounds.probe_conjectures(args.conjecture, args.d, args.n, args.samples, args.seed,
                                   sampler=args.sampler)
    for line in rep.lines():
        out.line(line)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperperm", description="Exact permanents and stochastic polytopes of tensors.")
    p.add_argument("--decimal", type=int, metavar="P", help="print values as P-digit decimals")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: all cores)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("per", help="k-permanent of a tensor")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--def", dest="definition", choices=["eq1", "eq2"], default="eq1")
    s.set_defaults(func=cmd_per)

    s = sub.add_parser("det", help="combinatorial hyperdeterminant")
    s.add_argument("file")
    s.set_defaults(func=cmd_det)

    s = sub.add_parser("gtf", help="generalized tensor function")
    s.add_argument("file")
    s.add_argument("--chars", required=True,
                   help="'sign', 'trivial', a character-table file, or a comma list per axis")
    s.add_argument("--mode", choices=["full", "2per"], default="full")
    s.set_defaults(func=cmd_gtf)

    s = sub.add_parser("kgtf", help="k-generalized tensor function")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--weight", required=True)
    s.set_defaults(func=cmd_kgtf)

    s = sub.add_parser("check", help="stochasticity test")
    s.add_argument("file")
    s.add_argument("--stochastic", required=True)
    s.set_defaults(func=cmd_check)

    for name, func in (("vertices", cmd_vertices), ("extreme", cmd_extreme)):
        s = sub.add_parser(name)
        if name == "extreme":
            s.add_argument("file")
        s.add_argument("--kind", required=True)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--d", type=int, default=3)
        if name == "vertices":
            s.add_argument("--out")
        s.set_defaults(func=func)

    s = sub.add_parser("hull", help="convex hull membership")
    s.add_argument("file")
    s.add_argument("--generators", required=True, help="directory of .ht files or a vertex archive")
    s.set_defaults(func=cmd_hull)

    s = sub.add_parser("latin")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_latin)

    s = sub.add_parser("patterns")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_patterns)

    s = sub.add_parser("bounds")
    s.add_argument("file")
    s.add_argument("--which", choices=["prop1", "prop2", "mb1", "mb2"])
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("builtin")
    s.add_argument("--name", choices=["C", "D"], required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_builtin)

    s = sub.add_parser("probe")
    s.add_argument("--conjecture", type=int, choices=[4, 5], required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sampler", choices=["convex", "sinkhorn"], default="convex")
    s.set_defaults(func=cmd_probe)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.workers is None:
            args.workers = default_workers()
        out = Output(stdout, args.decimal)
        args.func(args, out)
    except ResourceLimitExceeded as exc:
        stderr.write(f"error: resource limit: {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
