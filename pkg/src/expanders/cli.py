"""Command-line entry point: ``expanders <command> ...``.

Exit codes: 0 success, 1 a verification found a counterexample, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .cayley import (
    cayley_graph,
    random_permutation_bigraph,
    sl_generators,
    znp_graph,
)
from .concentrators import (
    Concentrator,
    build_bounded_concentrator,
    build_superconcentrator,
    circulant_bigraph,
    parse_dag,
    serialize_dag,
    verify_concentrator,
    verify_superconcentrator,
)
from .expansion_metrics import (
    bi_expander_constant,
    cheeger_h,
    cheeger_h_bounds,
    cheeger_h_prime,
    expander_constant,
    fixed_expander_constant,
)
from .graph_core import (
    BipartiteGraph,
    Graph,
    GraphFormatError,
    Partition,
    make_rng,
    parse_bipartite,
    parse_edge_list,
    random_connected_regular_graph,
    serialize,
    serialize_bipartite,
    to_dot,
)
from .hurwitz import divisor_sum, enumerate_norm, m2fp_ideal_census
from .matching import ContractError, hall_violator, koenig_decomposition, maximum_matching
from .regularize import circulant_regular, make_k_regular
from .so3_free import certify_free
from .spectral import (
    alon_boppana_lower_bound,
    is_ramanujan,
    lambda1,
    markov_second_norm,
    tree_norm,
)
from .transforms import bi_to_fixed, fixed_to_bi, quotient_graph, torus_band, torus_graph, torus_shear_partition

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class VerificationFailed(Exception):
    """Raised with the report text when a check finds a counterexample."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        _usage_exit(message)


def _usage_exit(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------- I/O helpers

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_graph(path: str) -> Graph:
    return parse_edge_list(_read_text(path))


def _read_bigraph(path: str) -> BipartiteGraph:
    return parse_bipartite(_read_text(path))


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(round(x, 12))
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _csv(header: Sequence[str], rows: Sequence[Sequence], seed: int | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    buf.write(f"# seed={'none' if seed is None else seed},version={__version__}\n")
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


# ---------------------------------------------------------------- gen

def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.family
    if kind == "cayley":
        gens = sl_generators(args.n)
        _emit(args, serialize(cayley_graph(gens.symmetric(), args.p).graph))
    elif kind == "znp":
        _emit(args, serialize(znp_graph(args.n, args.p)))
    elif kind == "circulant":
        _emit(args, serialize(circulant_regular(args.n, args.k)))
    elif kind == "torus":
        _emit(args, serialize(torus_graph(args.m)))
    elif kind == "random-regular":
        _emit(args, serialize(random_connected_regular_graph(args.n, args.k, make_rng(args.seed))))
    elif kind == "randperm":
        draw = random_permutation_bigraph(args.n, args.k, args.seed)
        head = f"# seed={args.seed},version={__version__},is_latin={_fmt(draw.is_latin)}\n"
        _emit(args, head + serialize_bipartite(draw.collapsed()))
    return EXIT_OK


# ---------------------------------------------------------------- metrics

def cmd_metrics(args: argparse.Namespace) -> int:
    G = _read_graph(args.graph)
    if not (args.cheeger or args.expansion or args.spectral):
        args.cheeger = args.expansion = True
    header: list[str] = ["n", "k_max"]
    row: list = [G.n, G.max_degree]
    if args.expansion:
        header += ["c_expander", "c_fixed"]
        row += [expander_constant(G), fixed_expander_constant(G)]
    if args.cheeger:
        header += ["h", "h_prime"]
        row += [cheeger_h(G), cheeger_h_prime(G)]
    if args.spectral:
        k = G.max_degree
        header = header[:1] + ["k"] + header[2:] + ["lambda1", "second_norm", "tree_norm", "ab_lower_bound", "is_ramanujan"]
        row = row[:1] + [k] + row[2:]
        try:
            ab = alon_boppana_lower_bound(G)
        except ValueError:
            ab = ""
        row += [lambda1(G), markov_second_norm(G), tree_norm(k), ab, is_ramanujan(G)]
    _emit(args, _csv(header, [row]))
    return EXIT_OK


# ---------------------------------------------------------------- transform

def _read_partition(path: str, n: int) -> Partition:
    labels = [int(t) for t in _read_text(path).split()]
    if len(labels) != n:
        raise GraphFormatError(f"partition lists {len(labels)} labels for {n} vertices")
    return Partition.from_labels(labels)


def cmd_transform(args: argparse.Namespace) -> int:
    if args.kind == "fixed-to-bi":
        _emit(args, serialize_bipartite(fixed_to_bi(_read_graph(args.input))))
    elif args.kind == "bi-to-fixed":
        _emit(args, serialize(bi_to_fixed(_read_bigraph(args.input))))
    elif args.kind == "quotient":
        if not args.partition:
            _usage_exit("quotient needs --partition FILE")
        G = _read_graph(args.input)
        _emit(args, serialize(quotient_graph(G, _read_partition(args.partition, G.n))))
    elif args.kind == "torus":
        if args.m is None:
            _usage_exit("torus needs --m")
        _emit(args, serialize(quotient_graph(torus_graph(args.m), torus_shear_partition(args.m))))
    return EXIT_OK


# ---------------------------------------------------------------- regularize

def cmd_regularize(args: argparse.Namespace) -> int:
    G = _read_graph(args.graph)
    rep = make_k_regular(G, args.k)
    lines = [
        f"# k={args.k}",
        f"# added_vertices={rep.added_vertices}",
        f"# added_edges={rep.added_edges}",
        f"# contains_input={_fmt(rep.contains_input)}",
    ]
    _emit(args, "\n".join(lines) + "\n" + serialize(rep.output) + "\n" + to_dot(rep.output, "regularized"))
    return EXIT_OK


# ---------------------------------------------------------------- build

def cmd_build(args: argparse.Namespace) -> int:
    if args.kind == "superconcentrator":
        D = build_superconcentrator(args.n, args.r, args.k, args.base_size)
        _emit(args, serialize_dag(D))
    else:
        C = build_bounded_concentrator(circulant_bigraph(args.n, args.k), args.r)
        head = f"# n={C.n},theta={C.theta},k_density={C.k_density},alpha={C.alpha}\n"
        _emit(args, head + serialize_bipartite(C.graph))
    return EXIT_OK


# ---------------------------------------------------------------- verify

def cmd_verify(args: argparse.Namespace) -> int:
    if args.kind == "so3-free":
        cert = certify_free(args.max_length, residue_only=args.residue)
        _emit(args, cert.to_json() + "\n")
        if not cert.passed:
            raise VerificationFailed(f"counterexample: {cert.first_failure}")
        return EXIT_OK
    if args.input is None:
        _usage_exit(f"verify {args.kind} needs an input file")
    if args.kind == "hall":
        B = _read_bigraph(args.input)
        bad = hall_violator(B)
        if bad is not None:
            nb = sorted(B.boundary(bad))
            raise VerificationFailed(f"Hall violator A={sorted(bad)} with neighbourhood {nb}")
        pairs = sorted(maximum_matching(B).pairs)
        _emit(args, "matching " + " ".join(f"{i}-{o}" for i, o in pairs) + "\n")
    elif args.kind == "superconcentrator":
        D = parse_dag(_read_text(args.input))
        res = verify_superconcentrator(D, samples=args.samples, seed=args.seed)
        report = {"ok": res.ok, "exhaustive": res.exhaustive, "tested": res.tested, "total_pairs": res.total}
        if not res.ok:
            A, B, r = res.counterexample
            report["counterexample"] = {"inputs": sorted(A), "outputs": sorted(B), "size": r}
        _emit(args, json.dumps(report, indent=2) + "\n")
        if not res.ok:
            raise VerificationFailed("superconcentrator property fails")
    elif args.kind == "concentrator":
        B = _read_bigraph(args.input)
        C = Concentrator(B, B.n_in, Fraction(B.n_out, B.n_in), Fraction(len(B.edges), B.n_in))
        res = verify_concentrator(C, samples=args.samples, seed=args.seed)
        report = {"ok": res.ok, "exhaustive": res.exhaustive, "tested": res.tested}
        if not res.ok:
            report["violator"] = sorted(res.violator)
        _emit(args, json.dumps(report, indent=2) + "\n")
        if not res.ok:
            raise VerificationFailed("concentrator property fails")
    return EXIT_OK


# ---------------------------------------------------------------- decompose

def cmd_decompose(args: argparse.Namespace) -> int:
    B = _read_bigraph(args.input)
    degs = set(B.input_degrees()) | set(B.output_degrees())
    if len(degs) != 1:
        raise ContractError("graph is not regular")
    perms = koenig_decomposition(B, degs.pop())
    _emit(args, "".join(" ".join(map(str, p)) + "\n" for p in perms))
    return EXIT_OK


# ---------------------------------------------------------------- quaternion

def cmd_quaternion(args: argparse.Namespace) -> int:
    if args.kind == "count":
        if args.norm is None:
            _usage_exit("count needs --norm")
        _emit(args, f"{len(enumerate_norm(args.norm, args.ring))}\n")
    elif args.kind == "jacobi":
        if args.p is None:
            _usage_exit("jacobi needs --p")
        N = args.p ** args.k
        got = len(enumerate_norm(N))
        expected = 8 * divisor_sum(N) if N % 2 else None
        _emit(args, f"{got}\n")
        if expected is not None and got != expected:
            raise VerificationFailed(f"enumerated {got}, expected {expected}")
    elif args.kind == "census":
        if args.p is None:
            _usage_exit("census needs --p")
        c = m2fp_ideal_census(args.p)
        _emit(args, _csv(["p", "singular_nonzero", "ideals", "orbit_size"],
                         [[args.p, c.singular_nonzero, c.principal_proper_ideals, c.orbit_size]]))
    return EXIT_OK


# ---------------------------------------------------------------- experiments

def experiment_randperm(n: int, k: int, trials: int, seed: int) -> list[list]:
    """One row per trial; trial t uses seed ``seed + t``."""
    rows = []
    for t in range(trials):
        s = seed + t
        draw = random_permutation_bigraph(n, k, s)
        rows.append([s, n, k, draw.is_latin, collapsed_fixed_constant(draw.collapsed())])
    return rows


def collapsed_fixed_constant(B: BipartiteGraph) -> Fraction:
    # min |∂A|/|A| over input sets with 2|A| ≤ n equals 1 + (bi-expander constant)
    return 1 + bi_expander_constant(B)


def experiment_torus_cheeger(ms: Sequence[int]) -> list[list]:
    rows = []
    for m in ms:
        G = torus_graph(m)
        lower, upper = cheeger_h_bounds(G, [torus_band(m)])
        rows.append([m, G.n, lower, upper, lower == upper])
    return rows


def experiment_alon_boppana(trials: int, k: int, n_min: int, n_max: int, seed: int) -> list[list]:
    rng = make_rng(seed)
    rows = []
    while len(rows) < trials:
        n = int(rng.integers(n_min, n_max + 1))
        if n * k % 2:
            continue
        G = random_connected_regular_graph(n, k, rng)
        try:
            bound = alon_boppana_lower_bound(G)
        except ValueError:
            continue  # diameter below 4
        norm = markov_second_norm(G)
        rows.append([seed, n, k, norm, bound, tree_norm(k), norm >= bound - 1e-8])
    return rows


def cmd_experiment(args: argparse.Namespace) -> int:
    if args.kind == "randperm":
        rows = experiment_randperm(args.n, args.k, args.trials, args.seed)
        _emit(args, _csv(["seed", "n", "k", "is_latin", "c_fixed"], rows, args.seed))
    elif args.kind == "torus-cheeger":
        ms = [int(x) for x in args.m_values.split(",")]
        _emit(args, _csv(["m", "n", "h_lower", "h_upper", "exact"], experiment_torus_cheeger(ms)))
    elif args.kind == "alon-boppana":
        rows = experiment_alon_boppana(args.trials, args.k, args.n_min, args.n_max, args.seed)
        _emit(args, _csv(["seed", "n", "k", "second_norm", "ab_lower_bound", "tree_norm", "holds"], rows, args.seed))
        if not all(r[-1] for r in rows):
            raise VerificationFailed("a sampled graph violates the diameter bound")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of standard output")

    p = _Parser(prog="expanders", description="Expander graph constructions and certificates.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a graph family")
    g.add_argument("family", choices=["cayley", "znp", "randperm", "circulant", "torus", "random-regular"])
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--seed", type=int)
    g.set_defaults(func=cmd_gen, needs={
        "cayley": ("n", "p"), "znp": ("n", "p"), "randperm": ("n", "k", "seed"),
        "circulant": ("n", "k"), "torus": ("m",), "random-regular": ("n", "k", "seed"),
    }, selector="family")

    m = sub.add_parser("metrics", parents=[common], help="exact expansion, Cheeger and spectral metrics")
    m.add_argument("graph", help="edge-list file or - for standard input")
    m.add_argument("--cheeger", action="store_true")
    m.add_argument("--expansion", action="store_true")
    m.add_argument("--spectral", action="store_true")
    m.set_defaults(func=cmd_metrics)

    t = sub.add_parser("transform", parents=[common], help="graph conversions and quotients")
    t.add_argument("kind", choices=["fixed-to-bi", "bi-to-fixed", "quotient", "torus"])
    t.add_argument("input", nargs="?")
    t.add_argument("--partition")
    t.add_argument("--m", type=int)
    t.set_defaults(func=cmd_transform, needs={
        "fixed-to-bi": ("input",), "bi-to-fixed": ("input",), "quotient": ("input",), "torus": (),
    }, selector="kind")

    r = sub.add_parser("regularize", parents=[common], help="embed a bounded-degree graph into a k-regular one")
    r.add_argument("graph")
    r.add_argument("--k", type=int, required=True)
    r.set_defaults(func=cmd_regularize)

    b = sub.add_parser("build", parents=[common], help="build concentrator networks")
    b.add_argument("kind", choices=["superconcentrator", "concentrator"])
    b.add_argument("--n", type=int, required=True, help="inputs (superconcentrator) or bi-expander size (concentrator)")
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--base-size", type=int)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="exhaustive or sampled certificates")
    v.add_argument("kind", choices=["hall", "so3-free", "superconcentrator", "concentrator"])
    v.add_argument("input", nargs="?")
    v.add_argument("--max-length", type=int, default=12)
    v.add_argument("--residue", action="store_true", help="residue-only certification (long words)")
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0, help="seed for sampled checks on large inputs")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decompose", parents=[common], help="split a regular bipartite graph into perfect matchings")
    d.add_argument("kind", choices=["koenig"])
    d.add_argument("input")
    d.set_defaults(func=cmd_decompose)

    q = sub.add_parser("quaternion", parents=[common], help="Hurwitz quaternion counts and the ideal census")
    q.add_argument("kind", choices=["count", "jacobi", "census"])
    q.add_argument("--norm", type=int)
    q.add_argument("--ring", choices=["integral", "hurwitz"], default="integral")
    q.add_argument("--p", type=int)
    q.add_argument("--k", type=int, default=1)
    q.set_defaults(func=cmd_quaternion)

    e = sub.add_parser("experiment", parents=[common], help="reproducible experiments emitting CSV")
    e.add_argument("kind", choices=["randperm", "torus-cheeger", "alon-boppana"])
    e.add_argument("--n", type=int, default=12)
    e.add_argument("--k", type=int, default=3)
    e.add_argument("--trials", type=int, default=100)
    e.add_argument("--seed", type=int)
    e.add_argument("--m-values", default="4,6,8,10")
    e.add_argument("--n-min", type=int, default=10)
    e.add_argument("--n-max", type=int, default=60)
    e.set_defaults(func=cmd_experiment, needs={
        "randperm": ("seed",), "alon-boppana": ("seed",), "torus-cheeger": (),
    }, selector="kind")
    return p


def _check_required(args: argparse.Namespace) -> None:
    needs = getattr(args, "needs", None)
    if not needs:
        return
    missing = [f for f in needs[getattr(args, args.selector)] if getattr(args, f) is None]
    if missing:
        _usage_exit(f"{args.command} {getattr(args, args.selector)} needs " + ", ".join("--" + f if f != "input" else "an input file" for f in missing))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_required(args)
        func: Callable[[argparse.Namespace], int] = args.func
        return func(args)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (OSError, GraphFormatError, ContractError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
