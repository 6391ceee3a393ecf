"""Command-line interface: train, predict, evaluate, diversity.

Every invocation is fully determined by its flags (the seed included);
repeating one produces byte-identical outputs. Structured errors print to
stderr and exit 1; success exits 0.

Output formats
--------------
``predict`` writes one ``<label> <margin>`` line per input row, label as
+1/-1 and margin in shortest round-trip decimal form.

``diversity`` writes one ``<measure> <value>`` line per measure, in the
order DIS, 1-DF, ENT, CFD.

``evaluate`` writes the human-readable report (fields: dataset, runs,
methods, m, gamma, lambda, learning_rate, max_steps, test_fraction,
labeled_fraction, seed, the per-method accuracy table, the LCUD-vs-method
verdict table, and the diversity table) to stdout, or to ``--report
<path>`` together with a machine-readable record stream at
``<path>.jsonl`` holding one JSON object per run with fields run,
accuracy, diversity_initial, diversity_final.

Model files use the versioned text format of udeed.model_io.
"""

from __future__ import annotations

import argparse
import sys

from .core import TrainConfig, Variant, augment_bias_matrix
from .data import SplitSpec, load_dataset, min_max_scale, split_lut
from .diversity import MEASURES, all_measures, oracle_matrix
from .errors import UdeedError
from .evaluation import render_report, report_records, run_experiment
from .model_io import load_model, save_model
from .training import train_traced
from .voting import predict_batch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udeed",
        description=(
            "Semi-supervised ensembles of logistic classifiers, trained for "
            "accuracy on labeled data and diversity on unlabeled data."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_data_flags(sub):
        sub.add_argument("--data", required=True, help="dataset file path")
        sub.add_argument(
            "--format", required=True, choices=("csv", "sparse"),
            help="dataset file format",
        )

    train = commands.add_parser("train", help="train one ensemble on a seeded split")
    add_data_flags(train)
    train.add_argument(
        "--variant", required=True, choices=("lc", "lcd", "lcud"),
        help="diversity-set choice for the descent",
    )
    train.add_argument("--m", type=int, default=20, help="ensemble size (default 20)")
    train.add_argument("--gamma", type=float, default=1.0,
                       help="diversity-term weight (default 1.0)")
    train.add_argument("--lambda", dest="lambda_", type=float, default=1.0,
                       help="initialization likelihood weight (default 1.0)")
    train.add_argument("--lr", type=float, default=0.25,
                       help="gradient-descent learning rate (default 0.25)")
    train.add_argument("--steps", type=int, default=25,
                       help="descent step budget per stage (default 25)")
    train.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    train.add_argument("--labeled-frac", type=float, default=0.25,
                       help="labeled fraction of the training pool (default 0.25)")
    train.add_argument("--test-frac", type=float, default=0.5,
                       help="held-out test fraction (default 0.5)")
    train.add_argument("--scale", action="store_true",
                       help="min-max scale features to [0, 1] before splitting")
    train.add_argument("--out", help="model file to write")

    predict = commands.add_parser("predict", help="predict labels with a saved model")
    predict.add_argument("--model", required=True, help="model file path")
    add_data_flags(predict)

    evaluate = commands.add_parser(
        "evaluate", help="multi-run experiment with win/tie/loss verdicts"
    )
    add_data_flags(evaluate)
    evaluate.add_argument("--runs", type=int, default=50,
                          help="number of splits (default 50)")
    evaluate.add_argument("--m", type=int, default=20,
                          help="ensemble size (default 20)")
    evaluate.add_argument(
        "--methods", default="lc,lcd,lcud,bagging",
        help="comma-separated subset of lc,lcd,lcud,bagging (default all)",
    )
    evaluate.add_argument("--seed", type=int, default=0,
                          help="master seed (default 0)")
    evaluate.add_argument("--scale", action="store_true",
                          help="min-max scale features to [0, 1] before splitting")
    evaluate.add_argument(
        "--report",
        help="write the text report here and the JSON records to <path>.jsonl",
    )

    diversity = commands.add_parser(
        "diversity", help="diversity measures of a saved model on a labeled set"
    )
    diversity.add_argument("--model", required=True, help="model file path")
    add_data_flags(diversity)

    return parser


def _load(args):
    dataset = load_dataset(args.data, args.format)
    if getattr(args, "scale", False):
        dataset = min_max_scale(dataset)
    return dataset


def _cmd_train(args) -> int:
    dataset = _load(args)
    spec = SplitSpec(args.test_frac, args.labeled_frac, args.seed)
    config = TrainConfig(
        m=args.m,
        gamma=args.gamma,
        lambda_=args.lambda_,
        learning_rate=args.lr,
        max_steps=args.steps,
        variant=Variant(args.variant),
        seed=args.seed,
    )
    split = split_lut(dataset, spec)
    print(
        f"split of {dataset.name}: |L| = {split.train.n_labeled}, "
        f"|U| = {split.train.n_unlabeled}, |T| = {split.n_test}"
    )
    result = train_traced(split.train, config)
    if config.gamma == 0.0:
        stage_names = ["supervised (gamma = 0)"]
    else:
        stage_names = {
            Variant.LC: ["no diversity set"],
            Variant.LCD: ["labeled features"],
            Variant.LCUD: ["labeled features", "unlabeled features"],
        }[config.variant]
    for name, stage in zip(stage_names, result.stages):
        first, last = stage.trace[0], stage.trace[-1]
        print(
            f"stage [{name}]: {stage.steps} steps, "
            f"v_total {first.v_total!r} -> {last.v_total!r}, "
            f"v_emp {first.v_emp!r} -> {last.v_emp!r}, "
            f"v_div {first.v_div!r} -> {last.v_div!r}"
        )
    if args.out:
        save_model(result.model, args.out)
        print(f"model written to {args.out}")
    return 0


def _cmd_predict(args) -> int:
    model = load_model(args.model)
    dataset = load_dataset(args.data, args.format)
    features = _augmented(dataset)
    labels, margin_values = predict_batch(model, features)
    for label, margin in zip(labels.tolist(), margin_values.tolist()):
        print(f"{label:+d} {margin!r}")
    return 0


def _cmd_evaluate(args) -> int:
    dataset = _load(args)
    config = TrainConfig(m=args.m, seed=args.seed)
    methods = [m for m in args.methods.split(",") if m.strip()]
    report = run_experiment(dataset, config, args.runs, methods)
    text = render_report(report)
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
            with open(f"{args.report}.jsonl", "w", encoding="utf-8",
                      newline="\n") as handle:
                handle.write(report_records(report))
        except OSError as exc:
            raise UdeedError(f"cannot write report: {exc}") from exc
        print(f"report written to {args.report} and {args.report}.jsonl")
    else:
        print(text, end="")
    return 0


def _cmd_diversity(args) -> int:
    model = load_model(args.model)
    dataset = load_dataset(args.data, args.format)
    oracle = oracle_matrix(model, _augmented(dataset), dataset.labels)
    measures = all_measures(oracle)
    for name in MEASURES:
        print(f"{name} {measures[name]!r}")
    return 0


def _augmented(dataset):
    return augment_bias_matrix(dataset.features)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "train": _cmd_train,
        "predict": _cmd_predict,
        "evaluate": _cmd_evaluate,
        "diversity": _cmd_diversity,
    }[args.command]
    try:
        return handler(args)
    except UdeedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
