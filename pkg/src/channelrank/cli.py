"""Command-line interface.

Four subcommands: ``synth`` writes a synthetic dataset, ``rank`` ranks one
dataset and writes the ranking as JSON, ``sweep`` runs a single
rank-then-sweep combination, and ``experiment`` runs a full method x
setting x classifier grid from a JSON config, writing report and detail
CSVs plus figures.

Exit codes: 0 success, 1 runtime failure, 2 usage error.  Runs with an
explicit seed are byte-reproducible; the CHANNELRANK_THREADS environment
variable sets the worker-thread count for experiment grids (0 = one per
CPU) and never affects output bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .aggregation import aggregate_horizontal
from .classifiers import ClassifierSpec
from .dataset import TrialTensor, form_vertical
from .evaluation import ExperimentReport, run_horizontal_experiment, run_vertical_experiment
from .io import load_dataset, save_dataset
from .rankers import RANKER_METHODS, LaplacianParams, MrmrParams, ReliefParams, rank_channels
from .synthetic import SynthSpec, generate_synthetic

__all__ = ["main", "RunConfig"]

_SETTINGS = ("horizontal", "vertical")
_CLASSIFIERS = ("knn", "lda", "tree")


class UsageError(ValueError):
    """Bad user input that argparse could not catch (exit code 2)."""


# ---------------------------------------------------------------------------
# Configuration


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """A full experiment grid: one dataset, a set of ranking methods, one or
    both settings, and a set of classifiers."""

    dataset_path: str | None
    manifest_path: str | None
    synth: SynthSpec | None
    synth_seed: int
    methods: tuple[str, ...]
    classifiers: tuple[str, ...]
    setting: str
    split_fraction: float
    seed: int
    ranker_params: dict
    classifier_params: dict
    output_dir: str
    threads: int
    per_trial_rankings: bool
    precision: str

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        known = {
            "dataset", "synth", "synth_seed", "methods", "classifiers", "setting",
            "split_fraction", "seed", "relief", "mrmr", "laplacian", "knn_k",
            "tree_max_depth", "tree_min_leaf", "lda_ridge", "output_dir",
            "threads", "per_trial_rankings", "precision",
        }
        unknown = set(raw) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")

        dataset_path = manifest_path = None
        synth = None
        if ("dataset" in raw) == ("synth" in raw):
            raise UsageError("config needs exactly one of 'dataset' or 'synth'")
        if "dataset" in raw:
            ds = raw["dataset"]
            if isinstance(ds, str):
                dataset_path = ds
            else:
                dataset_path = ds.get("data")
                manifest_path = ds.get("manifest")
            if not dataset_path:
                raise UsageError("config 'dataset' needs a data file path")
        else:
            try:
                synth = _synth_spec_from_dict(raw["synth"])
            except (TypeError, ValueError) as e:
                raise UsageError(f"bad synth spec: {e}") from e

        methods = tuple(raw.get("methods", list(RANKER_METHODS)))
        classifiers = tuple(raw.get("classifiers", list(_CLASSIFIERS)))
        setting = raw.get("setting", "both")
        if not methods:
            raise UsageError("at least one ranking method is required")
        if not classifiers:
            raise UsageError("at least one classifier is required")
        for m in methods:
            if m not in RANKER_METHODS:
                raise UsageError(f"unknown method {m!r}")
        for c in classifiers:
            if c not in _CLASSIFIERS:
                raise UsageError(f"unknown classifier {c!r}")
        if setting not in _SETTINGS + ("both",):
            raise UsageError(f"unknown setting {setting!r}")
        split_fraction = float(raw.get("split_fraction", 0.7))
        if not 0.0 < split_fraction < 1.0:
            raise UsageError(f"split_fraction must be in (0, 1), got {split_fraction}")
        seed = int(raw.get("seed", 0))
        if seed < 0:
            raise UsageError("seed must be non-negative")
        precision = str(raw.get("precision", "6"))
        if precision not in ("6", "full"):
            raise UsageError(f"precision must be '6' or 'full', got {precision!r}")

        ranker_params = {
            "relief": dict(raw.get("relief", {})),
            "mrmr": dict(raw.get("mrmr", {})),
            "laplacian": dict(raw.get("laplacian", {})),
        }
        classifier_params = {
            k: raw[k]
            for k in ("knn_k", "tree_max_depth", "tree_min_leaf", "lda_ridge")
            if k in raw
        }
        return cls(
            dataset_path=dataset_path,
            manifest_path=manifest_path,
            synth=synth,
            synth_seed=int(raw.get("synth_seed", seed)),
            methods=methods,
            classifiers=classifiers,
            setting=setting,
            split_fraction=split_fraction,
            seed=seed,
            ranker_params=ranker_params,
            classifier_params=classifier_params,
            output_dir=str(raw.get("output_dir", "channelrank-out")),
            threads=int(raw.get("threads", 1)),
            per_trial_rankings=bool(raw.get("per_trial_rankings", False)),
            precision=precision,
        )

    def settings(self) -> tuple[str, ...]:
        return _SETTINGS if self.setting == "both" else (self.setting,)

    def load_tensor(self) -> TrialTensor:
        if self.synth is not None:
            return generate_synthetic(self.synth, self.synth_seed)
        return load_dataset(self.dataset_path, self.manifest_path)

    def params_for(self, method: str):
        extra = dict(self.ranker_params.get(method, {}))
        if method == "relief":
            extra.setdefault("seed", self.seed)
            return ReliefParams(**extra)
        if method == "mrmr":
            return MrmrParams(**extra)
        extra.setdefault("seed", self.seed)
        return LaplacianParams(**extra)

    def classifier_spec(self, kind: str) -> ClassifierSpec:
        return ClassifierSpec(kind=kind, **self.classifier_params)


def _trials_per_class(total: int, classes: int) -> int:
    if total % classes:
        raise UsageError(
            f"total trial count {total} does not divide evenly among {classes} classes"
        )
    return total // classes


def _synth_spec_from_dict(raw: dict) -> SynthSpec:
    pairs = tuple((int(a), int(b)) for a, b in raw.get("redundant", []))
    classes = int(raw.get("classes", 2))
    return SynthSpec(
        samples_per_trial=int(raw["samples"]),
        channel_count=int(raw["channels"]),
        trials_per_class=_trials_per_class(int(raw["trials"]), classes),
        class_count=classes,
        informative_channels=tuple(int(c) for c in raw.get("informative", [])),
        effect_size=float(raw.get("effect", 0.0)),
        redundant_pairs=pairs,
        noise_sigma=float(raw.get("sigma", 1.0)),
        name=str(raw.get("name", "synthetic")),
    )


def resolve_threads(config_threads: int) -> int:
    """CHANNELRANK_THREADS overrides the config; 0 means one per CPU."""
    env = os.environ.get("CHANNELRANK_THREADS")
    value = config_threads
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"CHANNELRANK_THREADS must be an integer, got {env!r}") from None
    if value < 0:
        raise UsageError("thread count must be non-negative")
    return value if value > 0 else (os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# Formatting helpers


def _fmt(x, precision: str) -> str:
    if isinstance(x, float):
        return repr(x) if precision == "full" else f"{x:.6g}"
    return str(x)


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if dataclasses.is_dataclass(value):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_synth(args) -> int:
    spec = SynthSpec(
        samples_per_trial=args.samples,
        channel_count=args.channels,
        trials_per_class=_trials_per_class(args.trials, args.classes),
        class_count=args.classes,
        informative_channels=_parse_int_list(args.informative),
        effect_size=args.effect,
        redundant_pairs=_parse_pairs(args.redundant),
        noise_sigma=args.sigma,
        name=args.name,
    )
    tensor = generate_synthetic(spec, args.seed)
    data_path = Path(args.out)
    save_dataset(tensor, data_path, precision=args.precision)
    print(f"wrote {data_path} and {data_path.with_suffix('.json')}")
    return 0


def _cmd_rank(args) -> int:
    tensor = load_dataset(args.input, args.manifest)
    params = _ranker_params_from_args(args)
    if args.setting == "vertical":
        ranking = rank_channels(form_vertical(tensor), args.method, params)
        payload = {
            "method": ranking.method,
            "params": params,
            "order": ranking.order,
            "scores": ranking.scores,
        }
    else:
        rank_matrix, aggregated = aggregate_horizontal(tensor, args.method, params)
        payload = {
            "method": args.method,
            "params": params,
            "rank_matrix": [rank_matrix.entries[:, t] for t in range(rank_matrix.entries.shape[1])],
            "positional": aggregated.positional,
            "final": aggregated.final,
        }
    _write_json(Path(args.out), payload)
    print(f"wrote {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    tensor = load_dataset(args.input, args.manifest)
    params = _ranker_params_from_args(args)
    spec = ClassifierSpec(kind=args.classifier, knn_k=args.knn_k)
    report = run_vertical_experiment(
        tensor, args.method, params, spec, args.split_fraction, args.seed
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_detail_csv([report], out_dir / "sweep.csv", "6")
    from .plotting import save_curve_figure

    save_curve_figure(report, out_dir / "sweep.png")
    print(
        f"{report.dataset} {report.method}+{report.classifier} vertical: "
        f"best n={int(report.selected)} accuracy={report.ca:.2f}% "
        f"(baseline {report.baseline_ca:.2f}%) ratio={report.rho:.2f}"
    )
    return 0


def _run_one(config: RunConfig, tensor: TrialTensor, setting: str, method: str, kind: str) -> ExperimentReport:
    params = config.params_for(method)
    spec = config.classifier_spec(kind)
    if setting == "vertical":
        return run_vertical_experiment(
            tensor, method, params, spec, config.split_fraction, config.seed
        )
    return run_horizontal_experiment(
        tensor,
        method,
        params,
        spec,
        config.split_fraction,
        config.seed,
        per_trial_rankings=config.per_trial_rankings,
    )


def _cmd_experiment(args) -> int:
    raw = json.loads(Path(args.config).read_text())
    overrides = {
        "seed": args.seed,
        "setting": args.setting,
        "output_dir": args.output_dir,
        "split_fraction": args.split_fraction,
        "precision": args.precision,
    }
    for key, value in overrides.items():
        if value is not None:
            raw[key] = value
    if args.methods:
        raw["methods"] = args.methods.split(",")
    if args.classifiers:
        raw["classifiers"] = args.classifiers.split(",")
    config = RunConfig.from_dict(raw)
    threads = resolve_threads(config.threads)
    tensor = config.load_tensor()

    combos = [
        (setting, method, kind)
        for setting in config.settings()
        for method in config.methods
        for kind in config.classifiers
    ]
    results: list[ExperimentReport | None] = [None] * len(combos)
    failures: list[tuple[tuple[str, str, str], str]] = []

    def run(i):
        return _run_one(config, tensor, *combos[i])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(run, i) for i in range(len(combos))]
            for i, fut in enumerate(futures):
                try:
                    results[i] = fut.result()
                except Exception as e:
                    failures.append((combos[i], str(e)))
    else:
        for i in range(len(combos)):
            try:
                results[i] = run(i)
            except Exception as e:
                failures.append((combos[i], str(e)))

    reports = [r for r in results if r is not None]
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_report_csv(reports, out_dir / "report.csv", config.precision)
    _write_detail_csv(reports, out_dir / "detail.csv", config.precision)
    from .plotting import render_report_figures

    render_report_figures(reports, out_dir / "figures")
    for combo, message in failures:
        print(f"FAILED {'/'.join(combo)}: {message}", file=sys.stderr)
    if failures:
        _write_failures_csv(failures, out_dir / "failures.csv")
    print(f"wrote {len(reports)} report rows to {out_dir / 'report.csv'}")
    return 1 if reports == [] else 0


def _write_report_csv(reports, path: Path, precision: str) -> None:
    lines = ["dataset,method,classifier,setting,selected,ca,baseline_ca,rho,flags"]
    for r in reports:
        flags = "single_feature" if r.single_feature else ""
        lines.append(
            ",".join(
                [
                    r.dataset,
                    r.method,
                    r.classifier,
                    r.setting,
                    _fmt(r.selected, precision),
                    _fmt(r.ca, precision),
                    _fmt(r.baseline_ca, precision),
                    _fmt(r.rho, precision),
                    flags,
                ]
            )
        )
    path.write_text("\n".join(lines) + "\n")


def _write_detail_csv(reports, path: Path, precision: str) -> None:
    lines = ["dataset,method,classifier,setting,trial,n,accuracy"]
    for r in reports:
        for d in r.detail:
            for n, acc in d.sweep.per_n:
                lines.append(
                    ",".join(
                        [
                            r.dataset,
                            r.method,
                            r.classifier,
                            r.setting,
                            str(d.trial_index),
                            str(n),
                            _fmt(acc, precision),
                        ]
                    )
                )
    path.write_text("\n".join(lines) + "\n")


def _write_failures_csv(failures, path: Path) -> None:
    lines = ["setting,method,classifier,error"]
    for (setting, method, kind), message in failures:
        lines.append(",".join([setting, method, kind, message.replace(",", ";")]))
    path.write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Argument parsing


def _parse_int_list(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


def _parse_pairs(text: str) -> tuple[tuple[int, int], ...]:
    if not text:
        return ()
    pairs = []
    for part in text.split(","):
        src, _, copy = part.partition(":")
        if not copy:
            raise UsageError(f"redundant pair {part!r} must look like SRC:COPY")
        pairs.append((int(src), int(copy)))
    return tuple(pairs)


def _ranker_params_from_args(args):
    if args.method == "relief":
        iterations = "all" if args.relief_iterations in (None, "all") else int(args.relief_iterations)
        return ReliefParams(iterations=iterations, neighbor_mode=args.neighbor_mode, seed=args.seed)
    if args.method == "mrmr":
        return MrmrParams(bins=args.bins)
    cap = None if args.subsample_cap == 0 else args.subsample_cap
    width = "auto" if args.kernel_width in (None, "auto") else float(args.kernel_width)
    return LaplacianParams(
        k_neighbors=args.k_neighbors, kernel_width=width, subsample_cap=cap, seed=args.seed
    )


def _add_ranker_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--relief-iterations", default=None, help="probe count or 'all'")
    p.add_argument(
        "--neighbor-mode", choices=("nearest", "random"), default="nearest"
    )
    p.add_argument("--bins", type=int, default=3, help="discretization levels")
    p.add_argument("--k-neighbors", type=int, default=5, help="graph neighbours")
    p.add_argument("--kernel-width", default="auto")
    p.add_argument(
        "--subsample-cap", type=int, default=2000, help="graph row cap, 0 disables"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="channelrank",
        description="Channel ranking and selection for trial-structured datasets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="generate a synthetic dataset")
    p_synth.add_argument("--out", required=True, help="output CSV path")
    p_synth.add_argument("--samples", type=int, required=True)
    p_synth.add_argument("--channels", type=int, required=True)
    p_synth.add_argument(
        "--trials", type=int, required=True, help="total trials, split evenly among classes"
    )
    p_synth.add_argument("--classes", type=int, default=2)
    p_synth.add_argument("--informative", default="", help="channel ids, comma separated")
    p_synth.add_argument("--effect", type=float, default=0.0)
    p_synth.add_argument("--sigma", type=float, default=1.0)
    p_synth.add_argument("--redundant", default="", help="SRC:COPY pairs, comma separated")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--name", default="synthetic")
    p_synth.add_argument("--precision", choices=("6", "full"), default="6")
    p_synth.set_defaults(func=_cmd_synth)

    p_rank = sub.add_parser("rank", help="rank one dataset and write JSON")
    p_rank.add_argument("--input", required=True, help="dataset CSV")
    p_rank.add_argument("--manifest", default=None)
    p_rank.add_argument("--method", choices=sorted(RANKER_METHODS), required=True)
    p_rank.add_argument("--setting", choices=_SETTINGS, default="vertical")
    p_rank.add_argument("--out", required=True, help="output JSON path")
    p_rank.add_argument("--seed", type=int, default=0)
    _add_ranker_flags(p_rank)
    p_rank.set_defaults(func=_cmd_rank)

    p_sweep = sub.add_parser("sweep", help="rank + prefix sweep, vertical setting")
    p_sweep.add_argument("--input", required=True)
    p_sweep.add_argument("--manifest", default=None)
    p_sweep.add_argument("--method", choices=sorted(RANKER_METHODS), required=True)
    p_sweep.add_argument("--classifier", choices=_CLASSIFIERS, default="knn")
    p_sweep.add_argument("--knn-k", type=int, default=3)
    p_sweep.add_argument("--split-fraction", type=float, default=0.7)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--out-dir", default="channelrank-out")
    _add_ranker_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_exp = sub.add_parser("experiment", help="run a config-driven grid")
    p_exp.add_argument("--config", required=True, help="JSON config path")
    p_exp.add_argument("--seed", type=int, default=None)
    p_exp.add_argument("--setting", choices=_SETTINGS + ("both",), default=None)
    p_exp.add_argument("--methods", default=None, help="comma separated override")
    p_exp.add_argument("--classifiers", default=None, help="comma separated override")
    p_exp.add_argument("--split-fraction", type=float, default=None)
    p_exp.add_argument("--output-dir", default=None)
    p_exp.add_argument("--precision", choices=("6", "full"), default=None)
    p_exp.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
