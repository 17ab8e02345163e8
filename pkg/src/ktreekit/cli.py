"""Command-line interface.

Subcommands: generate, analyze, communities, sample, fit, theory,
pipeline, compare. Exit codes: 0 success, 2 validation failure,
3 a preset's embedded pass/fail check failed.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import communities as communities_mod
from . import fitting, metrics, pipeline, theory
from .generators import (RNG_ID, BASpec, KTreeSpec, MixedKTreeSpec,
                         PartialKTreeSpec)
from .graph_core import (EdgeListParseError, Histogram, read_edge_list,
                         write_edge_list, write_id_map)
from .sampling import WalkConfig, mhrw_walk

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CHECK_FAILED = 3


def _cmd_generate(args) -> int:
    if args.model == "ktree":
        spec = KTreeSpec(k=_require(args, "k"), n=args.n, seed=args.seed)
    elif args.model == "mixed":
        probs = tuple(float(x) for x in _require(args, "probs").split(","))
        spec = MixedKTreeSpec(k1=_require(args, "k1"),
                              k2=_require(args, "k2"),
                              probs=probs, n=args.n, seed=args.seed)
    elif args.model == "partial":
        spec = PartialKTreeSpec(k=_require(args, "k"), n=args.n,
                                r=_require(args, "r"), seed=args.seed)
    else:
        spec = BASpec(m=_require(args, "m"), n=args.n, seed=args.seed)
    g = spec.build()
    write_edge_list(g, args.out, comments=[spec.describe(), f"rng={RNG_ID}"])
    print(f"wrote {args.out}: n={g.n} m={g.edge_count()}")
    return EXIT_OK


def _require(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise ValueError(f"--{name} is required for model {args.model!r}")
    return value


def _cmd_analyze(args) -> int:
    g = read_edge_list(args.infile, relabel=args.relabel)
    if args.relabel and g.original_ids is not None:
        write_id_map(g, args.out + ".idmap")
    if args.metric == "degree":
        metrics.degree_distribution(g).to_csv(args.out)
    elif args.metric == "embeddedness":
        metrics.embeddedness_distribution(g).to_csv(args.out)
    elif args.metric == "clique-embeddedness":
        metrics.clique_embeddedness_distribution(g, args.h).to_csv(args.out)
    else:  # contact-strength
        means = metrics.contact_strength_by_embeddedness(
            g, missing_as_zero=(args.missing_weights == "zero"))
        metrics.write_contact_strength_csv(means, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_communities(args) -> int:
    g = read_edge_list(args.infile)
    cover = communities_mod.k_clique_communities(g, args.k)
    min_size = args.k + 1 if args.suppress_singletons else 0
    communities_mod.write_communities_csv(cover, args.out,
                                          min_size=min_size)
    hist_out = args.hist_out or (args.out + ".hist.csv")
    communities_mod.community_size_distribution(cover).to_csv(hist_out)
    if args.dump_members:
        communities_mod.write_members(cover, args.dump_members,
                                      min_size=min_size)
    print(f"wrote {args.out} ({cover.n_communities} communities) "
          f"and {hist_out}")
    return EXIT_OK


def _cmd_sample(args) -> int:
    g = read_edge_list(args.infile)
    start = "random" if args.start is None else args.start
    cfg = WalkConfig(steps=args.steps, burn_in=args.burn_in, start=start,
                     seed=args.seed)
    visits, sub = mhrw_walk(g, cfg)
    write_edge_list(sub, args.out,
                    comments=[f"mhrw steps={args.steps} "
                              f"burn_in={cfg.effective_burn_in()} "
                              f"seed={args.seed}", f"rng={RNG_ID}"])
    write_id_map(sub, args.out + ".idmap")
    print(f"wrote {args.out}: visited {sub.n} distinct vertices, "
          f"{sub.edge_count()} induced edges")
    return EXIT_OK


def _cmd_fit(args) -> int:
    hist = Histogram.from_csv(args.infile)
    if args.mode == "single":
        fit = fitting.fit_power_law(hist, xmin=args.xmin, xmax=args.xmax)
        fitting.write_fit_csv(args.out, [fit])
        print(f"alpha_mle={fit.alpha_mle:.4f} alpha_ols={fit.alpha_ols:.4f} "
              f"r2={fit.r2:.4f} over [{fit.xmin}, {fit.xmax}]")
    elif args.mode == "two-regime":
        rfit = fitting.fit_two_regime(hist, xmin=args.xmin, xmax=args.xmax)
        fitting.write_fit_csv(args.out,
                              fitting.two_regime_report(hist, rfit))
        print(f"breakpoint={rfit.breakpoint} "
              f"alphas={rfit.regimes[0].alpha:.4f}/"
              f"{rfit.regimes[1].alpha:.4f} "
              f"residual drop={rfit.sse_improvement:.1%} "
              f"r2 gain={rfit.r2_gain:.2%}")
    else:  # geometric
        lo = args.xmin if args.xmin is not None else min(hist.values())
        hi = args.xmax if args.xmax is not None else max(hist.values())
        ratio = fitting.geometric_ratio(hist, dmin=lo, dmax=hi)
        fitting.write_geometric_csv(args.out, lo, hi, ratio)
        print(f"geometric ratio over [{lo}, {hi}]: {ratio:.4f}")
    return EXIT_OK


def _cmd_theory(args) -> int:
    k = args.k
    c = theory.KTreeConstants(k)
    print(f"k={k}: a_k={c.a_k} b_k={c.b_k}")
    if k > 2:
        print(f"edge embeddedness exponent: "
              f"{theory.embeddedness_exponent(k):.6g}")
        for h in range(3, k):
            print(f"{h}-clique embeddedness exponent: "
                  f"{theory.embeddedness_exponent(k, h):.6g}")
    else:
        print("2-tree embeddedness follows the exponential law 3^-d")
    if args.n is not None:
        print(f"clique_count(n={args.n}) = {theory.clique_count(k, args.n)}")
        print(f"c_k(n={args.n}) = {c.c_k(args.n)!r}")
    if args.out is not None:
        if k > 2:
            ds, betas, power = theory.reference_curve(k, args.dmax)
        else:
            ds = np.arange(1, args.dmax + 1)
            betas = np.array([theory.two_tree_law(int(d)) for d in ds])
            power = betas
        with open(args.out, "w") as f:
            f.write("d,beta_d,powerlaw\n")
            for d, b, p in zip(ds.tolist(), betas.tolist(), power.tolist()):
                f.write(f"{d},{b!r},{p!r}\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    if args.preset is None and args.config is None:
        raise ValueError("pipeline needs --preset or --config")
    if args.preset is not None and args.config is not None:
        raise ValueError("--preset and --config are mutually exclusive")
    if args.preset:
        checks = pipeline.run_preset(args.preset, args.out, seed=args.seed,
                                     n=args.n)
        failed = False
        for check in checks:
            status = "PASS" if check.passed else "FAIL"
            print(f"[{status}] {check.name}: {check.detail}")
            failed = failed or not check.passed
        return EXIT_CHECK_FAILED if failed else EXIT_OK
    with open(args.config) as f:
        text = f.read()
    cfg = pipeline.parse_config(text)
    if args.seed is not None:
        raise ValueError("--seed override applies to presets only; "
                         "set seed= in the config file")
    pipeline.run_pipeline(cfg, args.out)
    print(f"pipeline artifacts in {args.out}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    out = pipeline.compare(args.run_a, args.run_b, args.out)
    print(f"comparison written to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktreekit",
        description="Random k-tree graph generation and higher-order "
                    "structure analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a random graph")
    p.add_argument("--model", required=True,
                   choices=["ktree", "mixed", "partial", "ba"])
    p.add_argument("--k", type=int)
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--probs", type=str,
                   help="comma-separated attachment-size probabilities")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("analyze", help="histogram a structural metric")
    p.add_argument("--metric", required=True,
                   choices=["degree", "embeddedness", "clique-embeddedness",
                            "contact-strength"])
    p.add_argument("--h", type=int, default=3,
                   help="clique size for clique-embeddedness")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--relabel", action="store_true",
                   help="map sparse external ids to dense ids "
                        "(writes <out>.idmap)")
    p.add_argument("--missing-weights", choices=["zero", "exclude"],
                   default="zero",
                   help="contact-strength policy for unweighted edges")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("communities",
                       help="k-clique communities (clique percolation)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--hist-out",
                   help="community size histogram CSV "
                        "(default <out>.hist.csv)")
    p.add_argument("--dump-members", metavar="PATH",
                   help="also write full vertex lists")
    p.add_argument("--suppress-singletons", action="store_true",
                   help="drop communities made of a single clique")
    p.set_defaults(func=_cmd_communities)

    p = sub.add_parser("sample", help="Metropolis-Hastings random walk "
                                      "subsample")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--burn-in", type=int, dest="burn_in")
    p.add_argument("--start", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("fit", help="fit a distribution law to a histogram")
    p.add_argument("--mode", required=True,
                   choices=["single", "two-regime", "geometric"])
    p.add_argument("--xmin", type=int)
    p.add_argument("--xmax", type=int)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("theory", help="closed-form oracle values and "
                                      "reference curves")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--dmax", type=int, default=1000)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("pipeline", help="run a preset or configured "
                                        "end-to-end reproduction")
    p.add_argument("--preset", choices=pipeline.preset_names())
    p.add_argument("--config", help="key=value pipeline config file")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, help="preset seed override")
    p.add_argument("--n", type=int, help="preset size override")
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("compare", help="join and summarize two run "
                                       "directories")
    p.add_argument("run_a")
    p.add_argument("run_b")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        # EdgeListParseError and PipelineError are ValueErrors too
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
