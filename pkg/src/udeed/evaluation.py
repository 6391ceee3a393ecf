"""Multi-run evaluation: Bagging baseline, t-tests, win/tie/loss reports.

An experiment makes `runs` independent L/U/T splits of one dataset, trains
every requested method on each split, and records test accuracies plus,
for LCUD, the four diversity measures of the ensemble before and after
descent. Per-run seeds are derived from the master seed with numpy's
SeedSequence (spawn key = run index), giving reproducible independent
streams; all methods share the split and the training seed of their run,
so the initial ensembles coincide and the comparison is paired.

Verdicts come from two-tailed paired t-tests at the configured level:
LCUD against every other method on accuracy, and final against initial
diversity per measure.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import betainc

from .core import EnsembleModel, TrainConfig, Variant
from .data import RawDataset, SplitSpec, split_lut
from .diversity import MEASURES, all_measures, oracle_matrix
from .errors import UdeedError
from .training import init_ensemble, train_traced
from .voting import accuracy

#: Method names in canonical report order.
METHODS = ("Bagging", "LC", "LCD", "LCUD")

#: Paper-protocol significance level for all verdicts.
ALPHA = 0.05


class Outcome(enum.Enum):
    WIN = "Win"
    TIE = "Tie"
    LOSS = "Loss"


@dataclass(frozen=True)
class ComparisonVerdict:
    """Paired t-test result; Win means the first sequence is greater."""

    outcome: Outcome
    t_statistic: float
    p_value: float


@dataclass(frozen=True)
class RunResult:
    """One split's accuracies and, when LCUD ran, its diversity snapshots."""

    index: int
    accuracies: dict[str, float]
    initial_diversity: dict[str, float] | None
    final_diversity: dict[str, float] | None

    def __post_init__(self):
        for name, value in self.accuracies.items():
            if not 0.0 <= value <= 1.0:
                raise UdeedError(f"accuracy of {name} out of [0, 1]: {value}")
        for snapshot in (self.initial_diversity, self.final_diversity):
            for name, value in (snapshot or {}).items():
                if not 0.0 <= value <= 1.0:
                    raise UdeedError(f"diversity {name} out of [0, 1]: {value}")


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregated experiment outcome; every map iterates in report order."""

    dataset_name: str
    config: TrainConfig
    runs: int
    methods: tuple[str, ...]
    test_fraction: float
    labeled_fraction: float
    run_results: tuple[RunResult, ...]
    accuracy_mean: dict[str, float]
    accuracy_std: dict[str, float]
    verdicts: dict[str, ComparisonVerdict]
    diversity_initial_mean: dict[str, float]
    diversity_final_mean: dict[str, float]
    diversity_verdicts: dict[str, ComparisonVerdict]


def t_distribution_p(t: float, df: int) -> float:
    """Two-tailed p-value of a t statistic.

    Equals I_x(df/2, 1/2) with x = df/(df + t^2), the regularized
    incomplete beta function; 1.0 at t = 0, falling to 0 as |t| grows.
    """
    if df < 1:
        raise UdeedError(f"degrees of freedom must be >= 1, got {df}")
    if math.isnan(t):
        raise UdeedError("t statistic is NaN")
    if math.isinf(t):
        return 0.0
    return float(betainc(df / 2.0, 0.5, df / (df + t * t)))


def paired_t_test(a, b, alpha: float = ALPHA) -> ComparisonVerdict:
    """Two-tailed paired t-test of two equal-length result sequences.

    With differences d = a - b: t = mean(d) / (sd(d)/sqrt(n)) using the
    sample sd (n-1 denominator) and n-1 degrees of freedom. Win when
    p <= alpha and mean(d) > 0, Loss when p <= alpha and mean(d) < 0,
    else Tie. A degenerate sd of 0 resolves by the sign of mean(d) (the
    t-statistic limit), reported as t = ±inf with p = 0, or a Tie with
    p = 1 when the mean is also 0.
    """
    if not 0.0 < alpha < 1.0:
        raise UdeedError(f"alpha must be in (0, 1), got {alpha}")
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or a.shape != b.shape:
        raise UdeedError(
            f"sequences must be 1-dimensional and equal length, "
            f"got shapes {a.shape} and {b.shape}"
        )
    n = a.shape[0]
    if n < 2:
        raise UdeedError(f"paired t-test needs at least 2 pairs, got {n}")
    d = a - b
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        if mean > 0.0:
            return ComparisonVerdict(Outcome.WIN, math.inf, 0.0)
        if mean < 0.0:
            return ComparisonVerdict(Outcome.LOSS, -math.inf, 0.0)
        return ComparisonVerdict(Outcome.TIE, 0.0, 1.0)
    t = mean / (sd / math.sqrt(n))
    p = t_distribution_p(t, n - 1)
    if p <= alpha:
        outcome = Outcome.WIN if mean > 0.0 else Outcome.LOSS
    else:
        outcome = Outcome.TIE
    return ComparisonVerdict(outcome, t, p)


def bagging_train(labeled_x, labeled_y, config: TrainConfig, rng) -> EnsembleModel:
    """Bootstrap-trained logistic ensemble with no descent refinement.

    This is exactly the initialization of the semi-supervised training, so
    the same seed yields the pre-descent ensemble of the other methods.
    """
    return init_ensemble(labeled_x, labeled_y, config, rng)


def _canonical_methods(methods) -> tuple[str, ...]:
    by_lower = {name.lower(): name for name in METHODS}
    chosen = set()
    for method in methods:
        name = by_lower.get(str(method).lower())
        if name is None:
            raise UdeedError(
                f"unknown method {method!r} (expected one of "
                f"{', '.join(METHODS).lower()})"
            )
        chosen.add(name)
    if not chosen:
        raise UdeedError("at least one method is required")
    return tuple(name for name in METHODS if name in chosen)


def _run_seeds(master_seed: int, run_index: int):
    """Split and training seeds for one run, mixed via SeedSequence."""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(run_index,))
    split_seed, train_seed = sequence.generate_state(2, dtype=np.uint64)
    return int(split_seed), int(train_seed)


def _single_run(data, config, run_index, methods, spec_template):
    split_seed, train_seed = _run_seeds(config.seed, run_index)
    split = split_lut(data, replace(spec_template, seed=split_seed))
    accuracies = {}
    initial_div = None
    final_div = None
    for method in methods:
        if method == "Bagging":
            rng = np.random.default_rng(train_seed)
            cfg = replace(config, seed=train_seed)
            model = bagging_train(
                split.train.labeled_x, split.train.labeled_y, cfg, rng
            )
        else:
            cfg = replace(config, seed=train_seed, variant=Variant(method.lower()))
            result = train_traced(split.train, cfg)
            model = result.model
            if method == "LCUD":
                initial_div = all_measures(
                    oracle_matrix(result.initial, split.test_x, split.test_y)
                )
                final_div = all_measures(
                    oracle_matrix(model, split.test_x, split.test_y)
                )
        accuracies[method] = accuracy(model, split.test_x, split.test_y)
    return RunResult(run_index, accuracies, initial_div, final_div)


def run_experiment(data: RawDataset, config: TrainConfig, runs: int,
                   methods) -> ExperimentReport:
    """Train and test every method over `runs` derived splits.

    methods is any subset of Bagging/LC/LCD/LCUD (case-insensitive).
    Requires runs >= 2 (the t-tests need it). Any structured error inside
    a run is re-raised with the 1-based run index attached.
    """
    if runs < 2:
        raise UdeedError(f"runs must be >= 2, got {runs}")
    methods = _canonical_methods(methods)
    spec_template = SplitSpec()
    results = []
    for run_index in range(1, runs + 1):
        try:
            results.append(
                _single_run(data, config, run_index, methods, spec_template)
            )
        except UdeedError as exc:
            raise UdeedError(f"run {run_index}: {exc}") from exc
    results = tuple(sorted(results, key=lambda r: r.index))

    acc = {
        method: np.array([r.accuracies[method] for r in results])
        for method in methods
    }
    accuracy_mean = {m: float(acc[m].mean()) for m in methods}
    accuracy_std = {m: float(acc[m].std(ddof=1)) for m in methods}

    verdicts = {}
    if "LCUD" in methods:
        for method in methods:
            if method != "LCUD":
                verdicts[method] = paired_t_test(acc["LCUD"], acc[method])

    diversity_initial_mean = {}
    diversity_final_mean = {}
    diversity_verdicts = {}
    if "LCUD" in methods:
        for measure in MEASURES:
            initial = np.array([r.initial_diversity[measure] for r in results])
            final = np.array([r.final_diversity[measure] for r in results])
            diversity_initial_mean[measure] = float(initial.mean())
            diversity_final_mean[measure] = float(final.mean())
            diversity_verdicts[measure] = paired_t_test(final, initial)

    return ExperimentReport(
        dataset_name=data.name,
        config=config,
        runs=runs,
        methods=methods,
        test_fraction=spec_template.test_fraction,
        labeled_fraction=spec_template.labeled_fraction,
        run_results=results,
        accuracy_mean=accuracy_mean,
        accuracy_std=accuracy_std,
        verdicts=verdicts,
        diversity_initial_mean=diversity_initial_mean,
        diversity_final_mean=diversity_final_mean,
        diversity_verdicts=diversity_verdicts,
    )


def render_report(report: ExperimentReport) -> str:
    """Human-readable text form of a report (see udeed.cli for the fields).

    Purely a function of the report, so identical experiments give
    byte-identical documents.
    """
    cfg = report.config
    lines = [
        f"dataset: {report.dataset_name}",
        f"runs: {report.runs}",
        f"methods: {', '.join(report.methods)}",
        f"m: {cfg.m}",
        f"gamma: {cfg.gamma!r}",
        f"lambda: {cfg.lambda_!r}",
        f"learning_rate: {cfg.learning_rate!r}",
        f"max_steps: {cfg.max_steps}",
        f"test_fraction: {report.test_fraction!r}",
        f"labeled_fraction: {report.labeled_fraction!r}",
        f"seed: {cfg.seed}",
        "",
        f"accuracy over {report.runs} runs (mean +/- std)",
    ]
    for method in report.methods:
        lines.append(
            f"  {method:<8} {report.accuracy_mean[method]:.6f} "
            f"+/- {report.accuracy_std[method]:.6f}"
        )
    if report.verdicts:
        lines.append("")
        lines.append(f"LCUD vs method (paired t-test, alpha = {ALPHA})")
        for method, verdict in report.verdicts.items():
            lines.append(
                f"  {method:<8} {verdict.outcome.value:<5} "
                f"t = {verdict.t_statistic:.6f}  p = {verdict.p_value:.6f}"
            )
    if report.diversity_verdicts:
        lines.append("")
        lines.append("LCUD diversity on T, final vs initial (paired t-test)")
        for measure in MEASURES:
            verdict = report.diversity_verdicts[measure]
            lines.append(
                f"  {measure:<5} initial = {report.diversity_initial_mean[measure]:.6f}  "
                f"final = {report.diversity_final_mean[measure]:.6f}  "
                f"{verdict.outcome.value:<5} "
                f"t = {verdict.t_statistic:.6f}  p = {verdict.p_value:.6f}"
            )
    lines.append("")
    return "\n".join(lines)


def report_records(report: ExperimentReport) -> str:
    """Machine-readable record stream: one JSON object per run.

    Fields per record: run, accuracy (map method -> value), and for runs
    carrying LCUD snapshots diversity_initial / diversity_final (map
    measure -> value, null otherwise). Keys are sorted and floats use
    their shortest round-trip form, so the stream is byte-deterministic.
    """
    lines = []
    for result in report.run_results:
        lines.append(
            json.dumps(
                {
                    "run": result.index,
                    "accuracy": result.accuracies,
                    "diversity_initial": result.initial_diversity,
                    "diversity_final": result.final_diversity,
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines) + "\n"
