"""``odtool`` command line.

Exit codes: 0 pass or exists, 1 fail or does not exist, 2 undecided,
3 usage or parse error.

Matrix files are plain text::

    od 4 vars a b
    a b 0 0
    -b a 0 0
    ...

Entries are ``0``, ``x``, ``-x``, ``<int>*x`` or an integer, and several
terms may be joined with ``+`` (``a+-2*b``).  Lines starting with ``#``
are ignored.
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .algebra import DEFAULT_REGISTRY, PolyMatrix, Polynomial, mono_exponents
from .constructions import ConstructionError, catalog, get_entry
from .designs import (
    TypeVector, VerificationReport, is_full, type_of, verify_amicable,
    verify_aod, verify_disjoint, verify_od, verify_pd,
)
from .numtheory import (
    decide_pd133, radon_hurwitz, rational_family_exists, rho_t_bound,
    wolfe_bound,
)

__all__ = ["MatrixFile", "ParseError", "parse_matrix", "serialize_matrix",
           "read_matrix", "write_matrix", "main"]

EXIT_OK, EXIT_FAIL, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_TERM = re.compile(r"(-?)(?:(\d+)\*)?([A-Za-z_][A-Za-z0-9_']*)|(-?\d+)")


class ParseError(ValueError):
    pass


class UsageError(Exception):
    pass


# ------------------------------------------------------------ file format

@dataclass(frozen=True)
class MatrixFile:
    names: tuple[str, ...]
    matrix: PolyMatrix


def _format_entry(p: Polynomial, index: dict[int, int]) -> str:
    if not p:
        return "0"
    terms = []
    for m, c in p.items():
        if type(c) is not int:
            raise ValueError(f"entry {p} has a non-integer coefficient")
        exps = mono_exponents(m)
        if not exps:
            terms.append((len(index), str(c)))
            continue
        if len(exps) != 1 or list(exps.values()) != [1]:
            raise ValueError(f"entry {p} is not linear")
        (vid,) = exps
        if vid not in index:
            raise ValueError(f"entry {p} uses an undeclared variable")
        name = DEFAULT_REGISTRY.name(vid)
        tok = name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}"
        terms.append((index[vid], tok))
    return "+".join(t for _, t in sorted(terms))


def serialize_matrix(M: PolyMatrix, names: Sequence[str] | None = None) -> str:
    """Text form of ``M``; ``names`` fixes the header order of variables."""
    if names is None:
        names = sorted(DEFAULT_REGISTRY.name(v) for v in M.variables())
    ids = [DEFAULT_REGISTRY.var(n).id for n in names]
    missing = M.variables() - set(ids)
    if missing:
        raise ValueError("header misses variables "
                         + ", ".join(DEFAULT_REGISTRY.name(v) for v in sorted(missing)))
    index = {vid: k for k, vid in enumerate(ids)}
    cache: dict[int, str] = {}
    lines = [" ".join(["od", str(M.order), "vars", *names]).rstrip()]
    for row in M.rows:
        toks = []
        for p in row:
            s = cache.get(id(p))
            if s is None:
                s = cache[id(p)] = _format_entry(p, index)
            toks.append(s)
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def _parse_entry(tok: str, declared: dict[str, Polynomial]) -> Polynomial:
    out = Polynomial()
    for part in tok.split("+"):
        m = _TERM.fullmatch(part)
        if m is None:
            raise ParseError(f"bad entry {tok!r}")
        sign, coeff, name, const = m.groups()
        if const is not None:
            out = out + int(const)
            continue
        if name not in declared:
            raise ParseError(f"variable {name!r} used but not declared")
        c = int(coeff) if coeff else 1
        out = out + declared[name] * (-c if sign else c)
    return out


def parse_matrix(text: str) -> MatrixFile:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty file")
    head = lines[0].split()
    if len(head) < 3 or head[0] != "od" or head[2] != "vars":
        raise ParseError("header must read 'od <n> vars <names...>'")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad order {head[1]!r}") from None
    if n < 1:
        raise ParseError("order must be positive")
    names = tuple(head[3:])
    for name in names:
        if not _NAME.fullmatch(name):
            raise ParseError(f"bad variable name {name!r}")
    if len(set(names)) != len(names):
        raise ParseError("variable declared twice")
    declared = {name: Polynomial.variable(DEFAULT_REGISTRY.var(name)) for name in names}
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, found {len(body)}")
    cache: dict[str, Polynomial] = {}
    rows = []
    for i, line in enumerate(body):
        toks = line.split()
        if len(toks) != n:
            raise ParseError(f"row {i} has {len(toks)} entries, expected {n}")
        row = []
        for tok in toks:
            p = cache.get(tok)
            if p is None:
                p = cache[tok] = _parse_entry(tok, declared)
            row.append(p)
        rows.append(row)
    return MatrixFile(names, PolyMatrix(rows))


def read_matrix(path) -> MatrixFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    try:
        return parse_matrix(text)
    except ParseError as e:
        raise ParseError(f"{path}: {e}") from None


def write_matrix(path, M: PolyMatrix, names: Sequence[str] | None = None) -> None:
    Path(path).write_text(serialize_matrix(M, names), encoding="utf-8", newline="\n")


# ---------------------------------------------------------------- output

class _Out:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def __call__(self, *args):
        if not self.quiet:
            print(*args)


# ------------------------------------------------------------------ build

_PARTS = {"od": ("",), "aod": (".C", ".D"), "pd": (".M1", ".M2", ".N")}


def cmd_build(args) -> int:
    out = _Out(args.quiet)
    try:
        entry = get_entry(args.name)
    except KeyError:
        print(f"odtool: unknown design {args.name!r}; see 'odtool catalog'", file=sys.stderr)
        return EXIT_USAGE
    try:
        design = entry.build_verified()
    except ConstructionError as e:
        print(f"odtool: {e}", file=sys.stderr)
        return EXIT_FAIL
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    for suffix, M, t in zip(_PARTS[design.kind], design.matrices, design.types):
        path = outdir / f"{entry.name}{suffix}.od"
        write_matrix(path, M, [v.name for v in t.sorted().vars])
        out(f"wrote {path}  type {t.sorted().describe()}")
    out(f"PASS {entry.claim()}")
    return EXIT_OK


# ----------------------------------------------------------------- verify

_ARITY = {"od": (1, 1), "aod": (2, 2), "pd": (3, 3), "full": (1, None),
          "amicable": (2, 2), "disjoint": (2, 2)}


def _parse_type(spec: str, mf: MatrixFile) -> TypeVector:
    items = [s for s in spec.split(",") if s.strip()]
    if not items:
        raise UsageError("empty type")
    pairs = []
    try:
        if all("=" in s for s in items):
            for s in items:
                name, w = s.split("=", 1)
                name = name.strip()
                if name not in mf.names:
                    raise UsageError(f"type names undeclared variable {name!r}")
                pairs.append((name, int(w)))
        elif any("=" in s for s in items):
            raise UsageError("mix of positional and named weights")
        else:
            weights = [int(s) for s in items]
            if len(weights) != len(mf.names):
                raise UsageError(f"type has {len(weights)} weights but the file "
                                 f"declares {len(mf.names)} variables")
            pairs = list(zip(mf.names, weights))
        return TypeVector.of(pairs)
    except ValueError as e:
        raise UsageError(f"bad type {spec!r}: {e}") from None


def _types_for(args, files: list[MatrixFile]) -> list[TypeVector]:
    if args.types is None:
        out = []
        for path, mf in zip(args.files, files):
            t = type_of(mf.matrix)
            if t is None:
                raise _Failed(VerificationReport(
                    False, "od", (path,), "no --types given and the Gram matrix "
                    "is not a positive diagonal form"))
            out.append(t)
        return out
    specs = args.types.split("/")
    if len(specs) != len(files):
        raise UsageError(f"--types needs {len(files)} '/'-separated parts")
    return [_parse_type(s, mf) for s, mf in zip(specs, files)]


class _Failed(Exception):
    def __init__(self, report):
        self.report = report


def cmd_verify(args) -> int:
    out = _Out(args.quiet)
    lo, hi = _ARITY[args.claim]
    if len(args.files) < lo or (hi is not None and len(args.files) > hi):
        want = f"{lo}" if lo == hi else f"at least {lo}"
        raise UsageError(f"'{args.claim}' takes {want} file(s)")
    files = [read_matrix(p) for p in args.files]
    mats = [f.matrix for f in files]
    if len({M.order for M in mats}) != 1:
        raise UsageError("matrices have different orders")
    try:
        if args.claim == "od":
            (t,) = _types_for(args, files)
            reports = [verify_od(mats[0], t)]
        elif args.claim == "aod":
            tc, td = _types_for(args, files)
            reports = [verify_aod(mats[0], mats[1], tc, td)]
        elif args.claim == "pd":
            reports = [verify_pd(*mats, *_types_for(args, files))]
        elif args.claim == "full":
            reports = [is_full(M) for M in mats]
        elif args.claim == "amicable":
            reports = [verify_amicable(*mats)]
        else:
            reports = [verify_disjoint(*mats)]
    except _Failed as f:
        reports = [f.report]
    for r in reports:
        out(r.format())
    return EXIT_OK if all(reports) else EXIT_FAIL


# ----------------------------------------------------------------- decide

def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {s!r}") from None


def cmd_decide(args) -> int:
    out = _Out(args.quiet)
    q = args.query
    if q in ("rho", "wolfe", "rho-t"):
        if args.n < 1:
            raise UsageError("n must be positive")
        if q == "rho":
            out(radon_hurwitz(args.n))
        elif q == "wolfe":
            out(wolfe_bound(args.n))
        else:
            if args.t < 1:
                raise UsageError("--t must be positive")
            out(rho_t_bound(args.n, args.t))
        return EXIT_OK
    if q == "pd133":
        if args.n < 1:
            raise UsageError("n must be positive")
        v = decide_pd133(args.n)
    else:
        entries = _int_list(args.entries)
        if not entries or any(s <= 0 for s in entries):
            raise UsageError("type entries must be positive")
        if args.order < 1:
            raise UsageError("--order must be positive")
        v = rational_family_exists(entries, args.order)
    out(v.format(explain=args.explain))
    return v.status.exit_code


# ---------------------------------------------------------------- catalog

def cmd_catalog(args) -> int:
    for e in catalog():
        full = " full" if e.full else ""
        print(f"{e.name:28s} {e.claim()}{full}")
        if e.description:
            print(f"{'':28s}   {e.description}")
    return EXIT_OK


# ----------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="odtool", description="Build and verify orthogonal designs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="write a catalog design to files")
    b.add_argument("name")
    b.add_argument("-o", "--output", default=".", help="output directory")
    b.add_argument("-q", "--quiet", action="store_true")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check matrix files against a claim")
    v.add_argument("claim", choices=sorted(_ARITY))
    v.add_argument("files", nargs="+", metavar="FILE")
    v.add_argument("--types", help="weights per file, e.g. 4,10,34/4,44 or a=4,x=10")
    v.add_argument("-q", "--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decide", help="existence questions and bounds")
    dq = d.add_subparsers(dest="query", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--explain", action="store_true", help="print the rule chain")
    common.add_argument("-q", "--quiet", action="store_true")
    x = dq.add_parser("pd133", parents=[common], help="PD(n; 1,1,1; 1,1,1; n-3)")
    x.add_argument("n", type=int)
    x = dq.add_parser("rational-family", parents=[common])
    x.add_argument("entries", help="comma-separated type, e.g. 1,1,1,3,3,3,17,17,34")
    x.add_argument("--order", type=int, required=True)
    for name, helptext in (("rho", "Radon-Hurwitz number"), ("wolfe", "AOD variable bound")):
        x = dq.add_parser(name, parents=[common], help=helptext)
        x.add_argument("n", type=int)
    x = dq.add_parser("rho-t", parents=[common], help="AOD bound with t variables on one side")
    x.add_argument("n", type=int)
    x.add_argument("--t", type=int, required=True)
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("catalog", help="list buildable designs")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError) as e:
        print(f"odtool: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
