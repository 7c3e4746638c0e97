"""Command-line front end.

Subcommands tie the generators, diameter and eccentricity pipelines,
checkers, split pruning, planar embedding, and benchmarks together.
Every run ends in a line-oriented report ("key: value") on stdout so
results diff cleanly and replay from the recorded seed.

Exit status: 0 on success; 2 when the run produced a class certificate
or a failing check verdict (the certificate is serialized into the
report); 1 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import secrets
import statistics
import sys
import time

import numpy as np

from . import instrument
from .bipartite import diameter_absolute_bipartite
from .chordal import (all_eccentricities_chordal_bipartite, clique_tree,
                      dump_clique_tree)
from .errors import CertificateError, GraphError
from .generators import gen_chordal_bipartite, gen_split
from .graph import (Graph, diameter_oracle, dump_graph,
                    eccentricities_oracle, parse_graph)
from .halfsquare import side_views
from .kchromatic import (ColoredGraph, check_characterization,
                         color_absolute_retract, diameter_k_chromatic,
                         parse_colored_graph)
from .planar import (dump_embedded, embed_into_retract,
                     is_absolute_planar_retract, parse_embedded)
from .split import prune_to_retract, recognize_absolute_split, split_diameter
from .verify import (half_ball_helly_sample, is_chordal_bipartite_small,
                     is_helly_small)

KCHROM_DISCLAIMER = ("outside the admitted class this value may be wrong "
                     "with no certificate raised")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract wants 1
    def error(self, message):
        raise UsageError(message)


class Report:
    """Ordered key: value lines accumulated during a run."""

    def __init__(self):
        self.rows = []

    def add(self, key, value):
        self.rows.append((str(key), str(value)))

    def emit(self, out=None):
        # resolve the stream per call so redirected stdout is honored
        out = sys.stdout if out is None else out
        for key, value in self.rows:
            print("%s: %s" % (key, value), file=out)


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_json_safe(v) for v in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _serial_certificate(cert):
    return json.dumps(_json_safe(cert), sort_keys=True)


def _read_text(path: str, rep: Report) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    rep.add("input-sha256", hashlib.sha256(text.encode()).hexdigest())
    return text


def _require(args, name: str):
    attr = "in_" if name == "in" else name.replace("-", "_")
    value = getattr(args, attr, None)
    if value is None:
        raise UsageError("--%s is required for this command" % name)
    return value


def _seed_for(args, rep: Report) -> int:
    seed = args.seed if args.seed is not None else secrets.randbits(32)
    rep.add("seed", seed)
    return int(seed)


def _load_colored(args, rep: Report) -> ColoredGraph:
    """Colored input: a colored file, or a plain graph plus --colors."""
    text = _read_text(_require(args, "in"), rep)
    if getattr(args, "colors", None):
        g = parse_graph(text)
        with open(args.colors, "r", encoding="utf-8") as fh:
            tokens = fh.read().split()
        if tokens and tokens[0] == "colors":
            tokens = tokens[1:]
        try:
            colour = [int(t) for t in tokens]
        except ValueError:
            raise UsageError("colour file must hold integers")
        return ColoredGraph(g, colour)
    return parse_colored_graph(text)


# ---------------------------------------------------------------- handlers

def _cmd_gen(args, rep: Report) -> int:
    out = _require(args, "out")
    n = _require(args, "n")
    seed = _seed_for(args, rep)
    rep.add("family", args.family)
    if args.family == "chordal-bipartite":
        g = gen_chordal_bipartite(n, seed)
    else:
        g = gen_split(n, args.density, seed).graph
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(g))
    rep.add("out", out)
    rep.add("result", "n=%d m=%d" % (g.n, g.m))
    return 0


def _cmd_diam(args, rep: Report) -> int:
    rep.add("class", args.cls)
    if args.cls == "k-chromatic-retract":
        if args.colors:
            cg = _load_colored(args, rep)
            g = cg.base
        else:
            text = _read_text(_require(args, "in"), rep)
            try:
                cg = parse_colored_graph(text)
                g = cg.base
            except GraphError:
                g = parse_graph(text)
                cg = None
        seed = _seed_for(args, rep)
        rep.add("note", KCHROM_DISCLAIMER)
        value = diameter_k_chromatic(g, seed, colouring=cg)
    else:
        g = parse_graph(_read_text(_require(args, "in"), rep))
        if args.cls == "oracle":
            value = diameter_oracle(g)
        elif args.cls == "split":
            value = split_diameter(g)
        else:
            seed = _seed_for(args, rep)
            value = diameter_absolute_bipartite(g, seed, threads=args.threads)
    rep.add("result", int(value))
    return 0


def _cmd_ecc(args, rep: Report) -> int:
    rep.add("class", args.cls)
    g = parse_graph(_read_text(_require(args, "in"), rep))
    if args.cls == "oracle":
        ecc = eccentricities_oracle(g)
    else:
        ecc = all_eccentricities_chordal_bipartite(g)
        if args.dump_trees:
            views = side_views(g)
            parts = []
            for i, view in enumerate(views):
                parts.append("side %d" % i)
                parts.append(dump_clique_tree(clique_tree(view)).rstrip("\n"))
            with open(args.dump_trees, "w", encoding="utf-8") as fh:
                fh.write("\n".join(parts) + "\n")
            rep.add("trees", args.dump_trees)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.writelines("%d\n" % v for v in ecc)
        rep.add("out", args.out)
    rep.add("result", " ".join(str(int(v)) for v in ecc))
    return 0


def _cmd_check(args, rep: Report) -> int:
    rep.add("property", args.property)
    if args.property == "kchrom-characterization":
        cg = _load_colored(args, rep)
        seed = _seed_for(args, rep)
        mode = "exhaustive" if cg.base.n <= 8 else "sampled"
        verdict = check_characterization(cg, mode=mode,
                                         budget=args.trials, seed=seed)
    elif args.property == "half-ball-helly":
        g = parse_graph(_read_text(_require(args, "in"), rep))
        seed = _seed_for(args, rep)
        verdict = half_ball_helly_sample(g, trials=args.trials, seed=seed)
    elif args.property == "helly":
        g = parse_graph(_read_text(_require(args, "in"), rep))
        verdict = is_helly_small(g)
    elif args.property == "chordal-bipartite":
        g = parse_graph(_read_text(_require(args, "in"), rep))
        verdict = is_chordal_bipartite_small(g)
    elif args.property == "planar-retract":
        e = parse_embedded(_read_text(_require(args, "in"), rep))
        ok = is_absolute_planar_retract(e)
        rep.add("verdict", "pass" if ok else "fail")
        return 0 if ok else 2
    else:
        g = parse_graph(_read_text(_require(args, "in"), rep))
        ok = recognize_absolute_split(g)
        rep.add("verdict", "pass" if ok else "fail")
        return 0 if ok else 2
    rep.add("verdict", verdict.outcome)
    if verdict.witness is not None:
        rep.add("certificate", _serial_certificate(verdict.witness))
    return 0 if verdict.ok else 2


def _cmd_reduce_split(args, rep: Report) -> int:
    g = parse_graph(_read_text(_require(args, "in"), rep))
    out = _require(args, "out")
    log_path = _require(args, "log")
    residual, removed = prune_to_retract(g)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(residual))
    with open(log_path, "w", encoding="utf-8") as fh:
        fh.writelines("%d\n" % v for v in removed)
    rep.add("out", out)
    rep.add("log", log_path)
    rep.add("result", "n=%d m=%d removed=%d"
            % (residual.n, residual.m, len(removed)))
    return 0


def _cmd_planar_embed(args, rep: Report) -> int:
    e = parse_embedded(_read_text(_require(args, "in"), rep))
    out = _require(args, "out")
    map_path = _require(args, "map")
    host, emb = embed_into_retract(e)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(dump_embedded(host))
    with open(map_path, "w", encoding="utf-8") as fh:
        fh.writelines("%d %d\n" % (i, int(v))
                      for i, v in enumerate(emb.vertex_map))
    for name, n, m in emb.stages:
        rep.add("stage.%s" % name, "n=%d m=%d" % (n, m))
    rep.add("out", out)
    rep.add("map", map_path)
    rep.add("result", "n=%d m=%d" % (host.base.n, host.base.m))
    return 0


def _bench_round(fast, oracle, warmups=1, reps=5):
    for _ in range(warmups):
        fast()
    fast_ms, oracle_ms = [], []
    for _ in range(reps):
        t0 = time.monotonic()
        fast()
        fast_ms.append((time.monotonic() - t0) * 1000.0)
    for _ in range(reps):
        t0 = time.monotonic()
        oracle()
        oracle_ms.append((time.monotonic() - t0) * 1000.0)
    return statistics.median(fast_ms), statistics.median(oracle_ms)


def _cmd_bench(args, rep: Report) -> int:
    seed = _seed_for(args, rep)
    rep.add("family", args.family)
    top = args.n if args.n is not None else 1024
    sizes = [s for s in (128, 256, 512, 1024, 2048, 4096) if s <= top]
    if not sizes:
        sizes = [top]
    for size in sizes:
        if args.family == "chordal-bipartite":
            g = gen_chordal_bipartite(size, seed + size)
            fast = lambda: all_eccentricities_chordal_bipartite(g)
            oracle = lambda: eccentricities_oracle(g)
        else:
            g = gen_split(size, 0.5, seed + size).graph
            fast = lambda: split_diameter(g)
            oracle = lambda: diameter_oracle(g)
        f_ms, o_ms = _bench_round(fast, oracle, reps=args.trials)
        rep.add("bench.%d" % size,
                "n=%d m=%d fast-ms=%.3f oracle-ms=%.3f"
                % (g.n, g.m, f_ms, o_ms))
    rep.add("result", "sizes=%s" % ",".join(str(s) for s in sizes))
    return 0


# ------------------------------------------------------------------ parser

def _build_parser() -> _Parser:
    parser = _Parser(prog="retracts",
                     description="diameters and eccentricities of absolute "
                                 "retracts of four graph classes")
    sub = parser.add_subparsers(dest="cmd", metavar="command")

    def common(p, seed=True, infile=True):
        if infile:
            p.add_argument("--in", dest="in_", metavar="FILE")
        if seed:
            p.add_argument("--seed", type=int)
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("gen", description="write a generated instance")
    p.add_argument("--family", required=True,
                   choices=["chordal-bipartite", "split"])
    p.add_argument("--n", type=int)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--out")
    common(p, infile=False)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("diam", description="diameter of the input graph")
    p.add_argument("--class", dest="cls", required=True,
                   choices=["bipartite-retract", "k-chromatic-retract",
                            "split", "oracle"])
    p.add_argument("--colors", metavar="FILE")
    common(p)
    p.set_defaults(func=_cmd_diam)

    p = sub.add_parser("ecc", description="all vertex eccentricities")
    p.add_argument("--class", dest="cls", required=True,
                   choices=["chordal-bipartite", "oracle"])
    p.add_argument("--out")
    p.add_argument("--dump-trees", metavar="FILE")
    common(p, seed=False)
    p.set_defaults(func=_cmd_ecc)

    p = sub.add_parser("check", description="run a class or property check")
    p.add_argument("--property", required=True,
                   choices=["half-ball-helly", "helly", "chordal-bipartite",
                            "planar-retract", "split-retract",
                            "kchrom-characterization"])
    p.add_argument("--colors", metavar="FILE")
    p.add_argument("--trials", type=int, default=2000)
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("reduce-split",
                       description="prune to the split-retract core")
    p.add_argument("--out")
    p.add_argument("--log")
    common(p, seed=False)
    p.set_defaults(func=_cmd_reduce_split)

    p = sub.add_parser("planar-embed",
                       description="embed into a planar absolute retract")
    p.add_argument("--out")
    p.add_argument("--map")
    common(p, seed=False)
    p.set_defaults(func=_cmd_planar_embed)

    p = sub.add_parser("bench",
                       description="timing table against the oracle")
    p.add_argument("--family", default="chordal-bipartite",
                   choices=["chordal-bipartite", "split"])
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=5)
    common(p, infile=False)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as ex:
        print("usage error: %s" % ex, file=sys.stderr)
        return 1
    if getattr(args, "cmd", None) is None:
        print("usage error: a command is required", file=sys.stderr)
        return 1

    rep = Report()
    rep.add("command", args.cmd)
    if getattr(args, "threads", 1) != 1:
        rep.add("threads", args.threads)
    start = time.monotonic()
    try:
        with instrument.tally() as ops:
            code = args.func(args, rep)
    except UsageError as ex:
        print("usage error: %s" % ex, file=sys.stderr)
        return 1
    except OSError as ex:
        print("io error: %s" % ex, file=sys.stderr)
        return 1
    except CertificateError as ex:
        rep.add("result", "certificate")
        rep.add("certificate", _serial_certificate(ex.certificate))
        code = 2
    except (GraphError, ValueError) as ex:
        print("input error: %s" % ex, file=sys.stderr)
        return 1
    rep.add("wall-ms", "%.3f" % ((time.monotonic() - start) * 1000.0))
    for key in sorted(ops):
        rep.add("ops.%s" % key, ops[key])
    rep.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
