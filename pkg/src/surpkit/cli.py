"""Command-line front end.

One deterministic RNG per run is derived from --seed; each subsystem
draws from its own labeled sub-stream so that adding draws in one place
never shifts another.  Summary output is machine-parseable key=value
pairs on a single line; failures exit nonzero with a one-line diagnostic.
"""

from __future__ import annotations

import argparse
import sys
import zlib

import numpy as np

from surpkit.benchmarks import build_benchmark, pielouer_nodes, rc_degrade
from surpkit.embedding import (
    EmbeddingConfig,
    embed,
    load_distance_matrix,
    peak_walk,
)
from surpkit.exhaustive import best_partitions, best_surprise_partitions
from surpkit.graph import load_edge_list, save_edge_list
from surpkit.metrics import fragmentation, modularity, pielou, vi
from surpkit.optimizer import SurpriseState
from surpkit.partition import load_partition, save_partition
from surpkit.randoms import (
    gamma_mle_continuous,
    gamma_mle_discrete,
    lnL_continuous,
    lnL_discrete,
)
from surpkit.surprise import partition_stats


def sub_rng(seed: int, label: str) -> np.random.Generator:
    """A reproducible RNG stream tied to (seed, label)."""
    return np.random.default_rng(
        np.random.SeedSequence([seed, zlib.crc32(label.encode())])
    )


def _print_kv(**kv) -> None:
    print(" ".join(f"{k}={v}" for k, v in kv.items()))


def cmd_detect(args) -> int:
    graph = load_edge_list(args.graph)
    state = SurpriseState(graph, rng=sub_rng(args.seed, "detect"))
    state.stepper()
    if args.anneal_steps > 0:
        for _ in range(args.anneal_steps):
            state.anneal_step(args.anneal_T)
        state.stepper()
    if args.out:
        save_partition(state.partition, args.out)
    _print_kv(
        K=graph.K,
        n=graph.n,
        Nc=state.partition.Nc,
        M=state.M,
        ell=state.ell,
        S=f"{state.S:.9f}",
    )
    return 0


def cmd_bench_our(args) -> int:
    target_sum = round(args.nodes * (1.0 - args.r))
    sizes = pielouer_nodes(
        args.ncliques,
        args.pielou,
        (target_sum, target_sum),
        rng=sub_rng(args.seed, "bench.sizes"),
    )
    net = build_benchmark(
        sizes, args.r, args.cycle, rng=sub_rng(args.seed, "bench.build")
    )
    if args.p > 0:
        net.degrade_p(args.p)
    if args.q > 0:
        net.degrade_q(args.q)
    graph = net.graph
    save_edge_list(graph, args.out_edges)
    save_partition(net.truth, args.out_truth)
    _print_kv(
        K=net.K,
        Nc=net.truth.Nc,
        n=graph.n,
        inclique=net.inclique_count,
        between=net.between_count,
        pielou=f"{pielou(sizes):.4f}",
    )
    return 0


def cmd_bench_rc(args) -> int:
    graph = load_edge_list(args.graph)
    degraded = rc_degrade(graph, args.R, rng=sub_rng(args.seed, "bench.rc"))
    save_edge_list(degraded, args.out)
    _print_kv(K=degraded.K, n_before=graph.n, n_after=degraded.n)
    return 0


def cmd_eval(args) -> int:
    if args.kind == "vi":
        print(f"{vi(load_partition(args.a), load_partition(args.b), args.normalized):.9f}")
    elif args.kind == "pielou":
        print(f"{pielou(load_partition(args.partition).sizes):.9f}")
    elif args.kind == "frag":
        report = fragmentation(load_partition(args.initial), load_partition(args.found))
        print(report.as_csv())
    elif args.kind == "surprise":
        graph = load_edge_list(args.graph)
        _, _, S = partition_stats(graph, load_partition(args.partition))
        print(f"{S:.9f}")
    elif args.kind == "modularity":
        graph = load_edge_list(args.graph)
        print(f"{modularity(graph, load_partition(args.partition)):.9f}")
    return 0


def cmd_oracle(args) -> int:
    graph = load_edge_list(args.graph)
    if args.quality == "surprise":
        best, argmax = best_surprise_partitions(graph)
    else:
        best, argmax = best_partitions(graph, modularity)
    _print_kv(quality=args.quality, value=f"{best:.9f}", maximizers=len(argmax))
    for p in argmax:
        print(" ".join(str(c) for c in p.assign))
    return 0


def cmd_mle(args) -> int:
    samples = np.loadtxt(args.samples, ndmin=1)
    if args.discrete:
        samples = samples.astype(int)
        gamma = gamma_mle_discrete(samples, int(args.x0))
        ll = lnL_discrete(gamma, samples, int(args.x0))
    else:
        gamma = gamma_mle_continuous(samples, args.x0)
        ll = lnL_continuous(gamma, samples, args.x0)
    _print_kv(gamma=f"{gamma:.8f}", lnL=f"{ll:.6f}", N=samples.size)
    return 0


def cmd_landscape_embed(args) -> int:
    D = load_distance_matrix(args.dist)
    config = EmbeddingConfig(gamma_exp=args.gamma, d_lim=args.dlim)
    coords, chi2, gnorm, reason = embed(D, config, rng=sub_rng(args.seed, "embed"))
    with open(args.out, "w") as fh:
        for i, (x, y) in enumerate(coords):
            fh.write(f"{i}\t{x:.12g}\t{y:.12g}\n")
    _print_kv(N=D.shape[0], chi2=f"{chi2:.6g}", grad=f"{gnorm:.6g}", stop=reason.replace(" ", "_"))
    return 0


def cmd_landscape_walk(args) -> int:
    D = load_distance_matrix(args.dist)
    values = np.loadtxt(args.values, ndmin=1)
    walk = peak_walk(values, D, args.top)
    with open(args.out, "w") as fh:
        fh.write("cum_distance,height\n")
        for cum, height in walk:
            fh.write(f"{cum:.12g},{height:.12g}\n")
    _print_kv(top=len(walk), total_distance=f"{walk[-1][0]:.6g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surpkit", description="Community detection by surprise maximization."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="find a high-surprise partition of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--anneal-T", type=float, default=0.05)
    p.add_argument("--anneal-steps", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_detect)

    bench = sub.add_parser("bench", help="benchmark generation and degradation")
    bench_sub = bench.add_subparsers(dest="bench_kind", required=True)

    p = bench_sub.add_parser("our", help="degraded-clique benchmark with ground truth")
    p.add_argument("--ncliques", type=int, required=True)
    p.add_argument("--pielou", type=float, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--cycle", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-edges", required=True)
    p.add_argument("--out-truth", required=True)
    p.set_defaults(func=cmd_bench_our)

    p = bench_sub.add_parser("rc", help="remove and rewire a percentage of links")
    p.add_argument("--graph", required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench_rc)

    ev = sub.add_parser("eval", help="partition quality and comparison measures")
    ev_sub = ev.add_subparsers(dest="kind", required=True)
    p = ev_sub.add_parser("vi")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_eval)
    p = ev_sub.add_parser("pielou")
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_eval)
    p = ev_sub.add_parser("frag")
    p.add_argument("--initial", required=True)
    p.add_argument("--found", required=True)
    p.set_defaults(func=cmd_eval)
    p = ev_sub.add_parser("surprise")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_eval)
    p = ev_sub.add_parser("modularity")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", help="exhaustive maximization on a small graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--quality", choices=("surprise", "modularity"), default="surprise")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("mle", help="power-law exponent by maximum likelihood")
    p.add_argument("--samples", required=True)
    p.add_argument("--discrete", action="store_true")
    p.add_argument("--x0", type=float, default=1.0)
    p.set_defaults(func=cmd_mle)

    land = sub.add_parser("landscape", help="partition-space embedding tools")
    land_sub = land.add_subparsers(dest="land_kind", required=True)
    p = land_sub.add_parser("embed")
    p.add_argument("--dist", required=True)
    p.add_argument("--gamma", type=float, default=-1.0)
    p.add_argument("--dlim", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_landscape_embed)
    p = land_sub.add_parser("walk")
    p.add_argument("--values", required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--top", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_landscape_walk)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
