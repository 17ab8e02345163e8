"""End-to-end reproduction pipelines and run comparison.

A pipeline run is described by a line-oriented key=value config
(unknown keys rejected), produces a self-contained artifact directory
(edge list, histogram CSVs, fit reports, theory reference curve,
manifest), and is byte-for-byte reproducible from the same config.
Named presets bundle the desk-scale experiment configurations together
with their pass/fail checks.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import communities as communities_mod
from . import fitting, metrics, theory
from .generators import (RNG_ID, BASpec, KTreeSpec, MixedKTreeSpec,
                         ModelSpec, PartialKTreeSpec)
from .graph_core import Graph, Histogram, read_edge_list, write_edge_list


class PipelineError(ValueError):
    """Configuration or stage failure; message carries the stage name."""


_KNOWN_KEYS = {
    "model", "k", "k1", "k2", "m", "n", "r", "probs", "seed",
    "metrics", "h", "communities",
    "fit_degree", "fit_embeddedness", "fit_clique_embeddedness",
    "fit_community_size",
}
_METRIC_NAMES = {"degree", "embeddedness", "clique-embeddedness",
                 "contact-strength"}
_FIT_TARGETS = {
    "fit_degree": "degree",
    "fit_embeddedness": "embeddedness",
    "fit_clique_embeddedness": "clique_embeddedness",
    "fit_community_size": "community_sizes",
}


@dataclass(frozen=True)
class FitRequest:
    mode: str                 # single | two-regime | geometric
    xmin: int | None = None
    xmax: int | str | None = None   # int, or "pNN" mass percentile


@dataclass
class PipelineConfig:
    model_spec: ModelSpec
    metrics: list[str] = field(default_factory=list)
    h: int = 3
    communities_k: int | None = None
    fits: dict[str, FitRequest] = field(default_factory=dict)
    raw_lines: list[str] = field(default_factory=list)


def _parse_fit_request(value: str) -> FitRequest:
    parts = value.split(":")
    mode = parts[0]
    if mode not in ("single", "two-regime", "geometric"):
        raise PipelineError(f"config: unknown fit mode {mode!r}")
    xmin: int | None = None
    xmax: int | str | None = None
    if len(parts) > 1 and parts[1] not in ("", "min"):
        xmin = int(parts[1])
    if len(parts) > 2 and parts[2] not in ("", "max"):
        tok = parts[2]
        if tok.startswith("p"):
            float(tok[1:])  # validate now
            xmax = tok
        else:
            xmax = int(tok)
    if len(parts) > 3:
        raise PipelineError(f"config: malformed fit value {value!r}")
    return FitRequest(mode=mode, xmin=xmin, xmax=xmax)


def parse_config(text: str) -> PipelineConfig:
    """Parse the key=value pipeline description."""
    kv: dict[str, str] = {}
    raw_lines: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        raw_lines.append(line)
        if "=" not in line:
            raise PipelineError(f"config line {lineno}: expected key=value, "
                                f"got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise PipelineError(f"config line {lineno}: unknown key {key!r}")
        if key in kv:
            raise PipelineError(f"config line {lineno}: duplicate key "
                                f"{key!r}")
        kv[key] = value

    if "model" not in kv:
        raise PipelineError("config: missing required key 'model'")
    model = kv["model"]
    seed = int(kv.get("seed", "0"))

    def need(key: str) -> str:
        if key not in kv:
            raise PipelineError(f"config: model {model!r} requires "
                                f"key {key!r}")
        return kv[key]

    n = int(need("n"))
    if model == "ktree":
        spec: ModelSpec = KTreeSpec(k=int(need("k")), n=n, seed=seed)
    elif model == "mixed":
        probs = tuple(float(x) for x in need("probs").split(","))
        spec = MixedKTreeSpec(k1=int(need("k1")), k2=int(need("k2")),
                              probs=probs, n=n, seed=seed)
    elif model == "partial":
        k = int(need("k"))
        rtext = need("r")
        full = k * (n - k) + k * (k - 1) // 2
        if rtext.endswith("%"):
            r = round(full * float(rtext[:-1]) / 100.0)
        else:
            r = int(rtext)
        spec = PartialKTreeSpec(k=k, n=n, r=r, seed=seed)
    elif model == "ba":
        spec = BASpec(m=int(need("m")), n=n, seed=seed)
    else:
        raise PipelineError(f"config: unknown model {model!r}")

    metric_list: list[str] = []
    if kv.get("metrics"):
        for name in kv["metrics"].split(","):
            name = name.strip()
            if name not in _METRIC_NAMES:
                raise PipelineError(f"config: unknown metric {name!r}")
            metric_list.append(name)

    fits: dict[str, FitRequest] = {}
    for key, target in _FIT_TARGETS.items():
        if key in kv:
            fits[target] = _parse_fit_request(kv[key])

    return PipelineConfig(
        model_spec=spec,
        metrics=metric_list,
        h=int(kv.get("h", "3")),
        communities_k=int(kv["communities"]) if "communities" in kv else None,
        fits=fits,
        raw_lines=raw_lines,
    )


@dataclass
class RunResult:
    """In-memory mirror of one pipeline run's artifact directory."""

    out_dir: Path
    graph: Graph
    histograms: dict[str, Histogram] = field(default_factory=dict)
    fits: dict[str, fitting.PowerLawFit] = field(default_factory=dict)
    two_regime: dict[str, fitting.RegimeFit] = field(default_factory=dict)
    geometric: dict[str, float] = field(default_factory=dict)
    cover: communities_mod.CommunityCover | None = None


def _resolve_bound(bound, hist: Histogram):
    if isinstance(bound, str):
        return hist.percentile_value(float(bound[1:]) / 100.0)
    return bound


def _stage(name: str):
    """Re-raise stage failures with the stage name attached."""
    class _ctx:
        def __enter__(self):
            return None

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and not isinstance(exc, PipelineError):
                raise PipelineError(f"stage {name!r} failed: {exc}") from exc
            return False

    return _ctx()


def run_pipeline(cfg: PipelineConfig, out_dir) -> RunResult:
    """Execute one configured run into out_dir; see module docstring."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result = RunResult(out_dir=out, graph=None)  # type: ignore[arg-type]

    with _stage("generate"):
        g = result.graph = cfg.model_spec.build()
        write_edge_list(g, out / "graph.edges",
                        comments=[cfg.model_spec.describe(),
                                  f"rng={RNG_ID}"])

    with _stage("metrics"):
        for name in cfg.metrics:
            if name == "degree":
                hist = metrics.degree_distribution(g)
                hist.to_csv(out / "degree.csv")
                result.histograms["degree"] = hist
            elif name == "embeddedness":
                hist = metrics.embeddedness_distribution(g)
                hist.to_csv(out / "embeddedness.csv")
                result.histograms["embeddedness"] = hist
            elif name == "clique-embeddedness":
                hist = metrics.clique_embeddedness_distribution(g, cfg.h)
                hist.to_csv(out / "clique_embeddedness.csv")
                result.histograms["clique_embeddedness"] = hist
            elif name == "contact-strength":
                means = metrics.contact_strength_by_embeddedness(g)
                metrics.write_contact_strength_csv(
                    means, out / "contact_strength.csv")

    with _stage("communities"):
        if cfg.communities_k is not None:
            cover = communities_mod.k_clique_communities(
                g, cfg.communities_k)
            result.cover = cover
            communities_mod.write_communities_csv(
                cover, out / "communities.csv")
            hist = communities_mod.community_size_distribution(cover)
            hist.to_csv(out / "community_sizes.csv")
            result.histograms["community_sizes"] = hist

    with _stage("fit"):
        for target, req in cfg.fits.items():
            hist = result.histograms.get(target)
            if hist is None:
                raise PipelineError(
                    f"stage 'fit' failed: no {target} histogram was "
                    f"produced; add the metric to the config")
            xmax = _resolve_bound(req.xmax, hist)
            path = out / f"fit_{target}.csv"
            if req.mode == "single":
                fit = fitting.fit_power_law(hist, xmin=req.xmin, xmax=xmax)
                fitting.write_fit_csv(path, [fit])
                result.fits[target] = fit
            elif req.mode == "two-regime":
                rfit = fitting.fit_two_regime(hist, xmin=req.xmin,
                                              xmax=xmax)
                fitting.write_fit_csv(path,
                                      fitting.two_regime_report(hist, rfit))
                result.two_regime[target] = rfit
            else:
                ratio = fitting.geometric_ratio(hist, dmin=req.xmin,
                                                dmax=xmax)
                fitting.write_geometric_csv(path, req.xmin or -1,
                                            xmax or -1, ratio)
                result.geometric[target] = ratio

    with _stage("theory"):
        spec = cfg.model_spec
        if isinstance(spec, (KTreeSpec, PartialKTreeSpec)) and spec.k > 2:
            emb = result.histograms.get("embeddedness")
            dmax = max(emb.values()) if emb and emb.counts else spec.k + 100
            ds, betas, power = theory.reference_curve(spec.k, dmax)
            with open(out / "theory_embeddedness.csv", "w") as f:
                f.write("d,beta_d,powerlaw\n")
                for d, b, p in zip(ds.tolist(), betas.tolist(),
                                   power.tolist()):
                    f.write(f"{d},{b!r},{p!r}\n")

    with _stage("manifest"):
        files = sorted(p.name for p in out.iterdir()
                       if p.is_file() and p.name != "manifest.json")
        digests = {}
        for name in files:
            digests[name] = hashlib.sha256(
                (out / name).read_bytes()).hexdigest()
        manifest = {
            "config": cfg.raw_lines,
            "model": cfg.model_spec.describe(),
            "rng": RNG_ID,
            "version": _package_version(),
            "outputs": digests,
        }
        with open(out / "manifest.json", "w") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
            f.write("\n")

    return result


def _package_version() -> str:
    from importlib import metadata as im

    try:
        return im.version("ktreekit")
    except im.PackageNotFoundError:
        return "0.0.0+local"


# ---------------------------------------------------------------------------
# run comparison


_COMPARABLE_HISTOGRAMS = ("degree.csv", "embeddedness.csv",
                          "clique_embeddedness.csv", "community_sizes.csv")


def compare(run_a, run_b, out_dir) -> Path:
    """Join two artifact directories' histograms and summarize.

    Writes comparison_<metric>.csv per common histogram and a
    summary.csv of headline numbers (counts, community structure,
    fitted exponents).
    """
    a, b = Path(run_a), Path(run_b)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    common = [name for name in _COMPARABLE_HISTOGRAMS
              if (a / name).is_file() and (b / name).is_file()]
    if not common:
        raise PipelineError(
            f"no comparable histogram outputs between {a} and {b}")

    for name in common:
        ha = Histogram.from_csv(a / name)
        hb = Histogram.from_csv(b / name)
        pa, pb = ha.proportions(), hb.proportions()
        values = sorted(set(ha.counts) | set(hb.counts))
        stem = name[:-len(".csv")]
        with open(out / f"comparison_{stem}.csv", "w") as f:
            f.write("value,count_a,proportion_a,count_b,proportion_b\n")
            for v in values:
                f.write(f"{v},{ha.counts.get(v, 0)},{pa.get(v, 0.0)!r},"
                        f"{hb.counts.get(v, 0)},{pb.get(v, 0.0)!r}\n")

    rows: list[tuple[str, str, str]] = []

    def add_run_stats(tag: str, d: Path, acc: dict[str, str]) -> None:
        g = read_edge_list(d / "graph.edges")
        acc["vertices"] = str(g.n)
        acc["edges"] = str(g.edge_count())
        comms = d / "communities.csv"
        if comms.is_file():
            sizes = []
            with open(comms) as f:
                f.readline()
                for line in f:
                    if line.strip():
                        sizes.append(int(line.split(",")[1]))
            sizes.sort()
            acc["community_count"] = str(len(sizes))
            if sizes:
                acc["max_community_size"] = str(sizes[-1])
                acc["median_community_size"] = str(
                    sizes[len(sizes) // 2])
        for fit_file in sorted(d.glob("fit_*.csv")):
            with open(fit_file) as f:
                header = f.readline().strip().split(",")
                for i, line in enumerate(f):
                    parts = line.strip().split(",")
                    if len(parts) == len(header) and "alpha_mle" in header:
                        acc[f"{fit_file.stem}_alpha_mle_{i}"] = parts[
                            header.index("alpha_mle")]

    stats_a: dict[str, str] = {}
    stats_b: dict[str, str] = {}
    add_run_stats("a", a, stats_a)
    add_run_stats("b", b, stats_b)
    for key in sorted(set(stats_a) | set(stats_b)):
        rows.append((key, stats_a.get(key, ""), stats_b.get(key, "")))

    summary = out / "summary.csv"
    with open(summary, "w") as f:
        f.write("key,run_a,run_b\n")
        for key, va, vb in rows:
            f.write(f"{key},{va},{vb}\n")
    return out


# ---------------------------------------------------------------------------
# presets


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _theorem1_preset(k: int):
    def run(out_dir: Path, seed: int, n: int) -> list[CheckResult]:
        cfg = parse_config(
            f"model=ktree\nk={k}\nn={n}\nseed={seed}\n"
            f"metrics=embeddedness\n"
            f"fit_embeddedness=single:{k - 1}:p95\n")
        res = run_pipeline(cfg, out_dir)
        fit = res.fits["embeddedness"]
        target = theory.embeddedness_exponent(k)
        ok = abs(fit.alpha_mle - target) <= 0.3
        hist = res.histograms["embeddedness"]
        diag = fitting.fit_power_law(
            hist, xmin=k - 1, xmax=hist.percentile_value(0.999))
        return [CheckResult(
            name=f"theorem1-k{k}: MLE alpha in [{k - 1}, p95] within 0.3 "
                 f"of {target:.2f}",
            passed=ok,
            detail=(f"alpha_mle={fit.alpha_mle:.3f} "
                    f"(tail OLS over [{k - 1}, p99.9]: "
                    f"{diag.alpha_ols:.3f})"))]

    return run, 100_000, 1


def _theorem2_preset():
    def run(out_dir: Path, seed: int, n: int) -> list[CheckResult]:
        cfg = parse_config(
            f"model=ktree\nk=2\nn={n}\nseed={seed}\n"
            f"metrics=embeddedness\n"
            f"fit_embeddedness=geometric:1:6\n")
        res = run_pipeline(cfg, out_dir)
        ratio = res.geometric["embeddedness"]
        ok = abs(ratio - 1 / 3) <= 0.03
        return [CheckResult(
            name="theorem2-2tree: geometric ratio over d=1..6 within "
                 "0.03 of 1/3",
            passed=ok, detail=f"ratio={ratio:.4f}")]

    return run, 100_000, 2


def _theorem3_preset():
    def run(out_dir: Path, seed: int, n: int) -> list[CheckResult]:
        cfg = parse_config(
            f"model=ktree\nk=5\nn={n}\nseed={seed}\n"
            f"metrics=clique-embeddedness\nh=3\n"
            f"fit_clique_embeddedness=single:3:p99\n")
        res = run_pipeline(cfg, out_dir)
        fit = res.fits["clique_embeddedness"]
        target = theory.embeddedness_exponent(5, h=3)
        ok = abs(fit.alpha_ols - target) <= 0.4
        return [CheckResult(
            name="theorem3-k5h3: OLS alpha over [3, p99] within 0.4 "
                 f"of {target:.2f}",
            passed=ok, detail=f"alpha_ols={fit.alpha_ols:.3f}")]

    return run, 50_000, 3


def _fig5_preset():
    def run(out_dir: Path, seed: int, n: int) -> list[CheckResult]:
        cfg_a = parse_config(f"model=ktree\nk=3\nn={n}\nseed={seed}\n"
                             f"metrics=degree,embeddedness\n")
        cfg_b = parse_config(f"model=ba\nm=3\nn={n}\nseed={seed}\n"
                             f"metrics=degree,embeddedness\n")
        res_a = run_pipeline(cfg_a, out_dir / "ktree3")
        res_b = run_pipeline(cfg_b, out_dir / "ba3")
        compare(out_dir / "ktree3", out_dir / "ba3", out_dir / "comparison")
        ha = res_a.histograms["embeddedness"]
        hb = res_b.histograms["embeddedness"]
        pa, pb = ha.percentile_value(0.95), hb.percentile_value(0.95)
        ok = pb <= 2 and pa >= 4
        return [CheckResult(
            name="fig5: same-density preferential attachment has "
                 "near-zero embeddedness support",
            passed=ok,
            detail=f"ktree emb p95={pa}, ba emb p95={pb}")]

    return run, 20_000, 5


def _fig67_preset():
    def run(out_dir: Path, seed: int, n: int) -> list[CheckResult]:
        probs = "0.30,0.20,0.16,0.11,0.06,0.05,0.04,0.03,0.03,0.02"
        cfg = parse_config(
            f"model=mixed\nk1=3\nk2=12\nprobs={probs}\nn={n}\n"
            f"seed={seed}\nmetrics=degree,embeddedness\n"
            f"fit_degree=two-regime:1:p99\n"
            f"fit_embeddedness=two-regime:1:p99\n")
        res = run_pipeline(cfg, out_dir)
        out = []
        for target in ("degree", "embeddedness"):
            rfit = res.two_regime[target]
            dalpha = abs(rfit.regimes[0].alpha - rfit.regimes[1].alpha)
            ok = rfit.sse_improvement >= 0.20 and dalpha >= 0.5
            out.append(CheckResult(
                name=f"fig6-7 mixed {target}: two-regime residual drop "
                     ">= 20% with exponents apart >= 0.5",
                passed=ok,
                detail=(f"improvement={rfit.sse_improvement:.1%}, "
                        f"break={rfit.breakpoint}, "
                        f"alphas={rfit.regimes[0].alpha:.2f}/"
                        f"{rfit.regimes[1].alpha:.2f}")))
        return out

    return run, 100_000, 8


def _fig89_preset():
    def run(out_dir: Path, seed: int, n: int) -> list[CheckResult]:
        cfg_a = parse_config(f"model=partial\nk=4\nn={n}\nr=5%\n"
                             f"seed={seed}\nmetrics=embeddedness\n"
                             f"communities=5\n")
        res_a = run_pipeline(cfg_a, out_dir / "partial4tree")
        density = res_a.graph.edge_count() / res_a.graph.n
        m = max(1, round(density))
        cfg_b = parse_config(f"model=ba\nm={m}\nn={n}\nseed={seed}\n"
                             f"metrics=embeddedness\ncommunities=5\n")
        res_b = run_pipeline(cfg_b, out_dir / "ba")
        compare(out_dir / "partial4tree", out_dir / "ba",
                out_dir / "comparison")
        sizes = sorted(res_a.cover.sizes().tolist())
        n_a = len(sizes)
        mx = sizes[-1] if sizes else 0
        med = sizes[len(sizes) // 2] if sizes else 0
        n_b = res_b.cover.n_communities
        ok = n_a >= 20 and mx >= 10 * med and n_b < 5
        return [CheckResult(
            name="fig8-9: partial 4-tree grows rich 5-clique communities, "
                 "matched-density preferential attachment does not",
            passed=ok,
            detail=(f"partial: {n_a} communities, max={mx}, median={med}; "
                    f"ba(m={m}): {n_b} communities"))]

    return run, 2000, 13


_PRESETS = {
    "theorem1-k3": _theorem1_preset(3),
    "theorem1-k4": _theorem1_preset(4),
    "theorem1-k5": _theorem1_preset(5),
    "theorem2-2tree": _theorem2_preset(),
    "theorem3-k5h3": _theorem3_preset(),
    "fig5-embeddedness": _fig5_preset(),
    "fig6-7-mixed": _fig67_preset(),
    "fig8-9-communities": _fig89_preset(),
}


def preset_names() -> list[str]:
    return sorted(_PRESETS)


def run_preset(name: str, out_dir, seed: int | None = None,
               n: int | None = None) -> list[CheckResult]:
    """Run a named preset; optional seed/n override the defaults."""
    if name not in _PRESETS:
        raise PipelineError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    fn, default_n, default_seed = _PRESETS[name]
    return fn(Path(out_dir),
              default_seed if seed is None else seed,
              default_n if n is None else n)
