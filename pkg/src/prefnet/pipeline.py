"""End-to-end orchestration: evolve networks, simulate walk ensembles,
measure pair overlap, and report distributions.

Stages communicate through files under the run's output directory, so each
CLI subcommand can also be run on its own:

    networks/<name>.edges              evolved underlying networks
    imprints/<name>/h##_r#.edges       one traversal imprint per repetition
    measures/<source>.csv              pair measures (simulated + data)
    report/summary.json, hist_*.csv    distributions, bands, KS matrix

Simulated pairing scheme (stated here and in summary.json): the ensemble of
n_hashtags x reps imprints is paired per repetition scheme e as
(hashtag a, rep e) vs (hashtag b, rep (e+1) mod reps) over all unordered
hashtag pairs. The headline distribution uses schemes 0 and 1, which for 16
hashtags x 8 reps yields 240 pairs, matching the halved real-data pair
count; error bands use all reps schemes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import serialize
from .diffusion import DiffusionConfig, budgets_from_ratios, run_ensemble
from .errors import PrefnetError, UndefinedMeasureError
from .evolution import EvolutionConfig, Model, evolve
from .ingest import build_networks, enumerate_pairs, parse_log
from .measures import Half, measure_pair
from .network import WeightedNetwork
from .stats import histogram, ks_statistic
from .svgplot import HistSeries, render_histograms
from .util import derive_seed, derived_rng

log = logging.getLogger(__name__)

_STREAM_EVOLUTION = 1
_STREAM_DIFFUSION = 2
_STREAM_BUDGETS = 3

DEFAULT_SEED = 20210429

# Default retweets-per-user ratios for the 16 simulated hashtags; used when
# no real dataset supplies the empirical distribution.
DEFAULT_RATIOS = (
    4.0, 6.0, 8.0, 10.0, 12.0, 15.0, 18.0, 22.0,
    26.0, 30.0, 34.0, 38.0, 42.0, 46.0, 50.0, 55.0,
)

MEASURE_COLUMNS = [
    "source", "id_a", "half_a", "rep_a", "id_b", "half_b", "rep_b",
    "ensemble", "jaccard", "mean_similarity", "nodes_compared", "note",
]

MEASURES = ("jaccard", "mean_similarity")
MEASURE_TITLES = {"jaccard": "weighted route overlap", "mean_similarity": "mean node similarity"}

PAIRING_NOTE = (
    "simulated pairing: per repetition scheme e, hashtag pair (a, b) compares "
    "(a, rep e) with (b, rep (e+1) mod reps); headline distribution uses "
    "schemes 0-1 to match the halved real-data pair count, bands use all schemes"
)
BAND_NOTE = (
    "error bands are the per-bin mean density +/- standard error across "
    "repetition schemes (a declared convention)"
)


@dataclass(frozen=True)
class NetworkSpec:
    name: str
    config: EvolutionConfig


@dataclass(frozen=True)
class RunConfig:
    """Resolved configuration of one full pipeline run."""

    output_dir: Path
    seed: int = DEFAULT_SEED
    networks: tuple[NetworkSpec, ...] = ()
    n_hashtags: int = 16
    reps_per_hashtag: int = 8
    initiator_fraction: float = 0.25
    noise_mean: float = 0.3
    noise_std: float = 0.15
    chain_length: int = 20
    ratio_list: tuple[float, ...] = DEFAULT_RATIOS
    data_path: Optional[str] = None
    emit_svg: bool = False

    def to_dict(self) -> dict:
        nets = []
        for spec in self.networks:
            c = spec.config
            nets.append({
                "name": spec.name, "model": c.model.value, "n_nodes": c.n_nodes,
                "timesteps": c.timesteps, "m_events": c.m_events,
                "increment": c.increment, "m0_links": c.m0_links, "l0": c.l0,
                "null_weight": c.null_weight,
            })
        return {
            "seed": self.seed,
            "networks": nets,
            "diffusion": {
                "n_hashtags": self.n_hashtags,
                "reps_per_hashtag": self.reps_per_hashtag,
                "initiator_fraction": self.initiator_fraction,
                "noise_mean": self.noise_mean,
                "noise_std": self.noise_std,
                "chain_length": self.chain_length,
                "ratio_list": list(self.ratio_list),
            },
            "data_path": self.data_path,
            "emit_svg": self.emit_svg,
        }

    @property
    def run_hash(self) -> str:
        return serialize.config_hash(self.to_dict())


_NETWORK_KEYS = {
    "name", "model", "n_nodes", "timesteps", "m_events", "increment",
    "m0_links", "l0", "null_weight",
}
_DIFFUSION_KEYS = {
    "n_hashtags", "reps_per_hashtag", "initiator_fraction", "noise_mean",
    "noise_std", "chain_length", "ratio_list",
}
_TOP_KEYS = {"seed", "networks", "diffusion", "data_path", "emit_svg"}


def default_network_specs() -> list[dict]:
    return [
        {"name": "global", "model": "global", "n_nodes": 400, "timesteps": 300,
         "m_events": 3, "increment": 10.0, "m0_links": 5},
        {"name": "local", "model": "local", "n_nodes": 400, "timesteps": 500,
         "m_events": 3, "increment": 10.0, "l0": 0.01},
        {"name": "null", "model": "null", "n_nodes": 400, "null_weight": 1.0},
    ]


def build_run_config(
    raw: Optional[dict],
    output_dir,
    seed: Optional[int] = None,
    data_path: Optional[str] = None,
    emit_svg: Optional[bool] = None,
) -> RunConfig:
    """Resolve a config dict (plus flag overrides) into a RunConfig.

    Unknown keys are rejected so typos fail loudly. Per-network seeds are
    always derived from the master seed.
    """
    raw = dict(raw) if raw else {}
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    master = int(seed if seed is not None else raw.get("seed", DEFAULT_SEED))

    net_dicts = raw.get("networks") or default_network_specs()
    specs = []
    seen = set()
    for i, nd in enumerate(net_dicts):
        nd = dict(nd)
        unknown = set(nd) - _NETWORK_KEYS
        if unknown:
            raise ValueError(f"unknown network config keys: {sorted(unknown)}")
        name = str(nd.pop("name", nd.get("model", f"net{i}")))
        if name in seen:
            raise ValueError(f"duplicate network name {name!r}")
        seen.add(name)
        model = Model(nd.pop("model"))
        cfg = EvolutionConfig(model=model, seed=derive_seed(master, _STREAM_EVOLUTION, i), **nd)
        specs.append(NetworkSpec(name=name, config=cfg))

    diff = dict(raw.get("diffusion") or {})
    unknown = set(diff) - _DIFFUSION_KEYS
    if unknown:
        raise ValueError(f"unknown diffusion config keys: {sorted(unknown)}")
    ratio_list = tuple(float(r) for r in diff.get("ratio_list", DEFAULT_RATIOS))

    cfg = RunConfig(
        output_dir=Path(output_dir),
        seed=master,
        networks=tuple(specs),
        n_hashtags=int(diff.get("n_hashtags", 16)),
        reps_per_hashtag=int(diff.get("reps_per_hashtag", 8)),
        initiator_fraction=float(diff.get("initiator_fraction", 0.25)),
        noise_mean=float(diff.get("noise_mean", 0.3)),
        noise_std=float(diff.get("noise_std", 0.15)),
        chain_length=int(diff.get("chain_length", 20)),
        ratio_list=ratio_list,
        data_path=data_path if data_path is not None else raw.get("data_path"),
        emit_svg=bool(emit_svg if emit_svg is not None else raw.get("emit_svg", False)),
    )
    if cfg.n_hashtags < 1 or cfg.reps_per_hashtag < 1:
        raise ValueError("n_hashtags and reps_per_hashtag must be >= 1")
    if not cfg.networks:
        raise ValueError("at least one network must be configured")
    return cfg


# ---------------------------------------------------------------------------
# Stage paths
# ---------------------------------------------------------------------------

def networks_dir(cfg: RunConfig) -> Path:
    return cfg.output_dir / "networks"


def imprints_dir(cfg: RunConfig, name: str) -> Path:
    return cfg.output_dir / "imprints" / name


def measures_path(cfg: RunConfig, source: str) -> Path:
    return cfg.output_dir / "measures" / f"{source}.csv"


def report_dir(cfg: RunConfig) -> Path:
    return cfg.output_dir / "report"


# ---------------------------------------------------------------------------
# Budgets
# ---------------------------------------------------------------------------

def resolve_ratios(cfg: RunConfig) -> tuple[float, ...]:
    """Hashtag step-budget ratios: empirical when a dataset is supplied
    (sampled with replacement if counts differ), else the configured list."""
    if cfg.data_path is None:
        ratios = cfg.ratio_list
        if len(ratios) != cfg.n_hashtags:
            raise ValueError(
                f"ratio_list has {len(ratios)} entries for {cfg.n_hashtags} hashtags"
            )
        return ratios
    parsed = parse_log(cfg.data_path)
    wholes = build_networks(parsed.records, halving=False)
    empirical = [d.retweet_user_ratio for d in wholes]
    if len(empirical) == cfg.n_hashtags:
        return tuple(empirical)
    rng = derived_rng(cfg.seed, _STREAM_BUDGETS)
    picks = rng.choice(len(empirical), size=cfg.n_hashtags, replace=True)
    return tuple(empirical[int(p)] for p in picks)


# ---------------------------------------------------------------------------
# Stage: evolve
# ---------------------------------------------------------------------------

def cmd_evolve(cfg: RunConfig) -> list[Path]:
    """Evolve every configured network and write it to networks/."""
    out = networks_dir(cfg)
    out.mkdir(parents=True, exist_ok=True)
    run_hash = cfg.run_hash
    written = []
    for spec in cfg.networks:
        net = evolve(spec.config)
        c = spec.config
        meta = {
            "kind": "underlying",
            "name": spec.name,
            "model": c.model.value,
            "config": {
                "n_nodes": c.n_nodes, "timesteps": c.timesteps, "m_events": c.m_events,
                "increment": c.increment, "m0_links": c.m0_links, "l0": c.l0,
                "null_weight": c.null_weight,
            },
            "seed": c.seed,
            "config_hash": run_hash,
            "total_weight": net.total_weight,
        }
        path = out / f"{spec.name}.edges"
        serialize.write_network(path, net, meta)
        log.info("evolved %s: total weight %s -> %s", spec.name, net.total_weight, path)
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# Stage: simulate
# ---------------------------------------------------------------------------

def cmd_simulate(cfg: RunConfig) -> list[Path]:
    """Run the walk ensemble on every evolved network; write imprints."""
    ratios = resolve_ratios(cfg)
    run_hash = cfg.run_hash
    written = []
    for i, spec in enumerate(cfg.networks):
        net_path = networks_dir(cfg) / f"{spec.name}.edges"
        if not net_path.exists():
            raise FileNotFoundError(f"missing evolved network {net_path}; run evolve first")
        net, _ = serialize.read_network(net_path)
        net.labels = tuple(f"n{k:04d}" for k in range(net.n_nodes))
        budgets = budgets_from_ratios(ratios, net.n_nodes)
        dcfg = DiffusionConfig(
            n_hashtags=cfg.n_hashtags,
            reps_per_hashtag=cfg.reps_per_hashtag,
            step_budgets=budgets,
            initiator_fraction=cfg.initiator_fraction,
            noise_mean=cfg.noise_mean,
            noise_std=cfg.noise_std,
            chain_length=cfg.chain_length,
            seed=derive_seed(cfg.seed, _STREAM_DIFFUSION, i),
        )
        imprints = run_ensemble(net, dcfg)
        out = imprints_dir(cfg, spec.name)
        out.mkdir(parents=True, exist_ok=True)
        index = {
            "network": spec.name,
            "n_hashtags": cfg.n_hashtags,
            "reps_per_hashtag": cfg.reps_per_hashtag,
            "step_budgets": list(budgets),
            "seed": dcfg.seed,
            "config_hash": run_hash,
        }
        serialize.write_json(out / "index.json", index)
        for pos, imp in enumerate(imprints):
            rep = pos % cfg.reps_per_hashtag
            meta = {
                "kind": "imprint",
                "network": spec.name,
                "hashtag": imp.hashtag_id,
                "rep": rep,
                "eta": imp.eta_used,
                "budget": cfg_budget(budgets, imp.hashtag_id),
                "steps": imp.steps_taken,
                "seed": dcfg.seed,
                "seed_path": [dcfg.seed, 1, imp.hashtag_id, rep],
                "config_hash": run_hash,
            }
            path = out / f"h{imp.hashtag_id:02d}_r{rep}.edges"
            serialize.write_network(path, imp.network, meta)
            written.append(path)
        log.info("simulated %d imprints on %s", len(imprints), spec.name)
    return written


def cfg_budget(budgets: Sequence[int], h: int) -> int:
    return int(budgets[h])


# ---------------------------------------------------------------------------
# Stage: measure
# ---------------------------------------------------------------------------

def simulated_pair_schemes(n_hashtags: int, reps: int):
    """Yield (scheme, hashtag_a, rep_a, hashtag_b, rep_b) for every
    repetition scheme; see the module docstring for the pairing rule."""
    for e in range(reps):
        for a, b in combinations(range(n_hashtags), 2):
            yield e, a, e, b, (e + 1) % reps


def headline_schemes(reps: int) -> set[int]:
    return {0, 1} if reps >= 2 else {0}


def _measure_one(net_a, net_b, id_a, id_b, half_a, half_b, preprocess):
    try:
        res = measure_pair(net_a, net_b, id_a, id_b, half_a, half_b, preprocess=preprocess)
        return res.jaccard, res.mean_similarity, res.nodes_compared, ""
    except PrefnetError as exc:
        return None, None, None, f"{type(exc).__name__}: {exc}"


def cmd_measure(cfg: RunConfig) -> list[Path]:
    """Compute pair measures for every simulated network and, when a dataset
    is configured, for the halved real data. Failed pairs become null rows
    with the failure reason; a source whose pairs all fail raises."""
    out_dir = cfg.output_dir / "measures"
    out_dir.mkdir(parents=True, exist_ok=True)
    run_hash = cfg.run_hash
    comment = f"config_hash={run_hash} seed={cfg.seed}"
    written = []

    for spec in cfg.networks:
        idir = imprints_dir(cfg, spec.name)
        if not idir.exists():
            raise FileNotFoundError(f"missing imprints under {idir}; run simulate first")
        normalized: dict[tuple[int, int], WeightedNetwork] = {}
        for h in range(cfg.n_hashtags):
            for r in range(cfg.reps_per_hashtag):
                net, _ = serialize.read_network(idir / f"h{h:02d}_r{r}.edges")
                normalized[(h, r)] = net.normalize_total()
        rows = []
        n_failed = 0
        for e, a, ra, b, rb in simulated_pair_schemes(cfg.n_hashtags, cfg.reps_per_hashtag):
            jac, sim, n_nodes, note = _measure_one(
                normalized[(a, ra)], normalized[(b, rb)],
                f"h{a:02d}", f"h{b:02d}", Half.WHOLE, Half.WHOLE,
                preprocess=False,
            )
            n_failed += bool(note)
            rows.append([
                spec.name, f"h{a:02d}", Half.WHOLE.value, ra, f"h{b:02d}",
                Half.WHOLE.value, rb, e, jac, sim, n_nodes, note,
            ])
        if rows and n_failed == len(rows):
            raise UndefinedMeasureError(f"every pair failed for source {spec.name!r}")
        path = measures_path(cfg, spec.name)
        serialize.write_csv(path, MEASURE_COLUMNS, rows)
        _prepend_comment(path, comment)
        written.append(path)
        log.info("measured %d simulated pairs on %s (%d failed)", len(rows), spec.name, n_failed)

    if cfg.data_path is not None:
        parsed = parse_log(cfg.data_path)
        datasets = build_networks(parsed.records, halving=True)
        pairs = enumerate_pairs(datasets, halved=True)
        rows = []
        n_failed = 0
        for ds_a, ds_b in pairs:
            jac, sim, n_nodes, note = _measure_one(
                ds_a.network, ds_b.network, ds_a.hashtag, ds_b.hashtag,
                ds_a.half, ds_b.half, preprocess=True,
            )
            n_failed += bool(note)
            rows.append([
                "data", ds_a.hashtag, ds_a.half.value, "", ds_b.hashtag,
                ds_b.half.value, "", "", jac, sim, n_nodes, note,
            ])
        if rows and n_failed == len(rows):
            raise UndefinedMeasureError("every real-data pair failed")
        path = measures_path(cfg, "data")
        serialize.write_csv(path, MEASURE_COLUMNS, rows)
        _prepend_comment(path, comment)
        written.append(path)
        log.info("measured %d real-data pairs (%d failed)", len(rows), n_failed)
    return written


def _prepend_comment(path: Path, comment: str) -> None:
    body = path.read_text(encoding="utf-8")
    path.write_text(f"# {comment}\n{body}", encoding="utf-8", newline="\n")


def _read_measures(path: Path) -> list[dict]:
    header, rows = serialize.read_csv(path)
    return [dict(zip(header, row)) for row in rows]


# ---------------------------------------------------------------------------
# Stage: report
# ---------------------------------------------------------------------------

def _source_values(rows: list[dict], simulated: bool, reps: int):
    """Headline value lists and per-scheme ensembles for both measures."""
    head = {m: [] for m in MEASURES}
    ensembles = {m: {} for m in MEASURES}
    heads = headline_schemes(reps)
    n_failed = 0
    for row in rows:
        if row["note"]:
            n_failed += 1
            continue
        for m in MEASURES:
            v = float(row[m])
            if simulated:
                e = int(row["ensemble"])
                ensembles[m].setdefault(e, []).append(v)
                if e in heads:
                    head[m].append(v)
            else:
                head[m].append(v)
    bands = {
        m: [ensembles[m][e] for e in sorted(ensembles[m])] if simulated else None
        for m in MEASURES
    }
    return head, bands, n_failed


def cmd_report(cfg: RunConfig) -> Path:
    """Histograms with error bands, KS matrix, JSON summary, optional SVG."""
    rdir = report_dir(cfg)
    rdir.mkdir(parents=True, exist_ok=True)
    run_hash = cfg.run_hash

    sources = [spec.name for spec in cfg.networks]
    if cfg.data_path is not None:
        sources.append("data")
    found = [s for s in sources if measures_path(cfg, s).exists()]
    if not found:
        raise FileNotFoundError("no measure tables found; run measure first")

    summary: dict = {
        "config_hash": run_hash,
        "seed": cfg.seed,
        "config": cfg.to_dict(),
        "notes": [PAIRING_NOTE, BAND_NOTE],
        "sources": {},
        "ks": [],
        "histograms": {},
    }
    all_values: dict[str, dict[str, list[float]]] = {}
    svg_series: dict[str, list[HistSeries]] = {m: [] for m in MEASURES}

    for source in found:
        rows = _read_measures(measures_path(cfg, source))
        simulated = source != "data"
        head, bands, n_failed = _source_values(rows, simulated, cfg.reps_per_hashtag)
        all_values[source] = head
        src_summary = {"n_rows": len(rows), "n_failed": n_failed, "measures": {}}
        for m in MEASURES:
            values = head[m]
            if not values:
                continue
            hist = histogram(values, bands_from=bands[m])
            hist_path = rdir / f"hist_{m}_{source}.csv"
            band_low = hist.band_low or [None] * len(hist.densities)
            band_high = hist.band_high or [None] * len(hist.densities)
            serialize.write_csv(
                hist_path,
                ["bin_lo", "bin_hi", "density", "band_low", "band_high"],
                [
                    [hist.bin_edges[k], hist.bin_edges[k + 1], hist.densities[k],
                     band_low[k], band_high[k]]
                    for k in range(len(hist.densities))
                ],
            )
            _prepend_comment(hist_path, f"config_hash={run_hash} seed={cfg.seed}")
            summary["histograms"][f"{m}/{source}"] = hist_path.name
            arr = np.asarray(values)
            src_summary["measures"][m] = {
                "n": len(values),
                "mean": float(arr.mean()),
                "std": float(arr.std(ddof=1)) if len(values) > 1 else 0.0,
            }
            if simulated and hist.band_low is not None:
                widths = [hi - lo for lo, hi in zip(hist.band_low, hist.band_high)]
                src_summary["measures"][m]["mean_band_width"] = float(np.mean(widths))
            svg_series[m].append(
                HistSeries(source, hist.bin_edges, hist.densities, hist.band_low, hist.band_high)
            )
        summary["sources"][source] = src_summary

    for m in MEASURES:
        for sa, sb in combinations(found, 2):
            va, vb = all_values[sa][m], all_values[sb][m]
            if not va or not vb:
                continue
            ks = ks_statistic(va, vb)
            summary["ks"].append({
                "measure": m, "source_a": sa, "source_b": sb,
                "statistic": ks.statistic, "n_a": ks.n_a, "n_b": ks.n_b,
            })

    if cfg.emit_svg:
        svg_files = {}
        for m in MEASURES:
            if not svg_series[m]:
                continue
            svg_path = rdir / f"{m}.svg"
            render_histograms(
                svg_path, svg_series[m],
                title=f"distribution of {MEASURE_TITLES[m]}",
                x_label=MEASURE_TITLES[m],
                provenance=f"config_hash={run_hash} seed={cfg.seed}",
            )
            svg_files[m] = svg_path.name
        summary["svg"] = svg_files

    out = rdir / "summary.json"
    serialize.write_json(out, summary)
    log.info("report written to %s", out)
    return out


def run_pipeline(cfg: RunConfig) -> Path:
    """evolve -> simulate -> measure -> report."""
    cmd_evolve(cfg)
    cmd_simulate(cfg)
    cmd_measure(cfg)
    return cmd_report(cfg)
