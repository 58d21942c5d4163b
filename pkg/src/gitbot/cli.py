"""Command-line front-end: analyze repositories, train, evaluate.

`gitbot REPOSITORY [...]` analyzes repositories with the shipped model
(analyze is the implied subcommand). Result rows go to stdout in text,
CSV, or JSON; errors go to stderr. Exit codes: 0 success, 1 usage
error, 2 analysis/training error.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from datetime import date
from importlib import resources

from .dataset import featurize, load_archive, load_dataset
from .errors import GitbotError
from .evaluation import (
    FAMILY_FOREST,
    cross_validate,
    evaluate_pretrained,
    format_grid_table,
    format_report,
)
from .extractor import Role, extract_commits, group_messages
from .features import FeatureConfig, compute_features
from .forest import UNKNOWN, ForestModel, train_forest
from .identity import IdentityMapping, apply_mapping, load_mapping
from .model_io import load_model, model_from_json, save_model

TEXT, CSV, JSON = "text", "csv", "json"


@dataclass(frozen=True)
class CliOptions:
    repositories: list[str]
    include: list[str] | None = None
    start_date: date | None = None
    mapping: str | None = None
    committer: bool = False
    min_commits: int | None = None  # None: use the model's training-time value
    max_commits: int | None = None
    verbose: bool = False
    only_predicted: bool = False
    output_format: str = TEXT
    model_path: str | None = None


@dataclass(frozen=True)
class ResultRow:
    name: str
    commits: int
    patterns: int | None
    dispersion: float | None
    prediction: str
    empties: int | None = None  # shown only with --verbose


def load_default_model() -> ForestModel:
    text = resources.files("gitbot").joinpath("data/default_model.json").read_text("utf-8")
    return model_from_json(text)


def _resolve_model(options: CliOptions) -> ForestModel:
    if options.model_path is not None:
        return load_model(options.model_path)
    return load_default_model()


def _analysis_config(options: CliOptions, model: ForestModel) -> FeatureConfig:
    base = model.feature_config
    return FeatureConfig(
        min_messages=options.min_commits if options.min_commits is not None else base.min_messages,
        max_messages=options.max_commits if options.max_commits is not None else base.max_messages,
        distance_threshold=base.distance_threshold,
    )


def run_analysis(options: CliOptions, model: ForestModel | None = None) -> list[ResultRow]:
    """Analyze every repository and return rows sorted by name.

    Any extraction, mapping, or model error aborts the run and carries
    the offending repository's path in its message.
    """
    if not options.repositories:
        raise GitbotError("at least one repository is required")
    if model is None:
        model = _resolve_model(options)
    config = _analysis_config(options, model)
    role = Role.COMMITTER if options.committer else Role.AUTHOR
    mapping = IdentityMapping()
    if options.mapping is not None:
        mapping = load_mapping(options.mapping)

    rows = []
    for repo in options.repositories:
        try:
            commits = extract_commits(repo, role=role, start_date=options.start_date)
            groups = group_messages(commits, role=role)
            if options.include is not None:
                wanted = set(options.include)
                groups = {name: c for name, c in groups.items() if name in wanted}
            groups = apply_mapping(groups, mapping)
        except GitbotError as exc:
            raise type(exc)(f"{repo}: {exc}") from exc
        for name, corpus in groups.items():
            features = compute_features(corpus, config)
            prediction = model.predict(features)
            if prediction.label == UNKNOWN:
                rows.append(ResultRow(name, len(corpus), None, None, UNKNOWN, None))
            else:
                rows.append(
                    ResultRow(
                        name=name,
                        commits=len(corpus),
                        patterns=features.n_patterns,
                        dispersion=features.gini,
                        prediction=prediction.label,
                        empties=features.n_empty,
                    )
                )
    if options.only_predicted:
        rows = [row for row in rows if row.prediction != UNKNOWN]
    rows.sort(key=lambda row: row.name)
    return rows


def _columns(verbose: bool) -> list[str]:
    if verbose:
        return ["name", "commits", "empties", "patterns", "dispersion", "prediction"]
    return ["name", "commits", "patterns", "dispersion", "prediction"]


def _cell(row: ResultRow, column: str) -> object:
    value = getattr(row, column)
    if column == "dispersion" and value is not None:
        return round(value, 3)
    return value


def format_output(rows: list[ResultRow], output_format: str, verbose: bool = False) -> str:
    """Render rows as aligned text, CSV (header + rows), or a JSON array."""
    columns = _columns(verbose)
    if output_format == JSON:
        payload = [{c: _cell(row, c) for c in columns} for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    if output_format == CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(
                ["" if (v := _cell(row, c)) is None else _format_number(v) for c in columns]
            )
        return buffer.getvalue()
    # text: whitespace-aligned columns
    table = [columns] + [
        ["" if (v := _cell(row, c)) is None else _format_number(v) for c in columns]
        for row in rows
    ]
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)).rstrip() for line in table]
    return "\n".join(lines) + "\n"


def _format_number(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def run_train(args) -> int:
    loader = load_archive if args.from_archive else load_dataset
    dataset = loader(args.dataset, min_messages=args.min_messages)
    config = FeatureConfig(min_messages=args.min_messages)

    from .evaluation import stratified_split

    train_part, test_part = stratified_split(dataset, args.train_fraction, seed=args.seed)
    train_examples = featurize(train_part, config)
    result = cross_validate(train_examples, k_folds=args.folds, seed=args.seed)
    print(format_grid_table(result))

    best_forest = result.best_for(FAMILY_FOREST)
    model = train_forest(
        train_examples,
        seed=args.seed,
        feature_config=config,
        **best_forest.config.params,
    )
    save_model(model, args.output)
    print(f"model written to {args.output}")

    report = evaluate_pretrained(model, test_part)
    print(format_report(report))
    return 0


def run_evaluate(args) -> int:
    loader = load_archive if args.from_archive else load_dataset
    model = load_model(args.model) if args.model else load_default_model()
    dataset = loader(args.dataset, min_messages=model.feature_config.min_messages)
    report = evaluate_pretrained(model, dataset)
    print(format_report(report))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="gitbot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="classify contributors of git repositories")
    analyze.add_argument("repositories", metavar="REPOSITORY", nargs="+")
    analyze.add_argument("--include", metavar="NAME", nargs="*", default=None,
                         help="only analyze these contributor names")
    analyze.add_argument("--start-date", type=date.fromisoformat, default=None,
                         help="ignore commits before this date (YYYY-MM-DD)")
    analyze.add_argument("--mapping", default=None,
                         help="CSV mapping names to identities (IGNORE drops a name)")
    analyze.add_argument("--committer", action="store_true",
                         help="use committer names instead of author names")
    analyze.add_argument("--min-commits", type=int, default=None,
                         help="minimum commits needed to make a prediction")
    analyze.add_argument("--max-commits", type=int, default=None,
                         help="most recent commits considered per contributor")
    analyze.add_argument("--verbose", action="store_true",
                         help="include the full feature columns")
    analyze.add_argument("--only-predicted", action="store_true",
                         help="drop contributors predicted as unknown")
    analyze.add_argument("--model", dest="model_path", default=None,
                         help="model file to use instead of the shipped one")
    fmt = analyze.add_mutually_exclusive_group()
    fmt.add_argument("--text", dest="output_format", action="store_const", const=TEXT)
    fmt.add_argument("--csv", dest="output_format", action="store_const", const=CSV)
    fmt.add_argument("--json", dest="output_format", action="store_const", const=JSON)
    analyze.set_defaults(output_format=TEXT)

    train = sub.add_parser("train", help="train a model on a labeled dataset")
    train.add_argument("dataset", help="labeled dataset file")
    train.add_argument("--output", "-o", required=True, help="where to write the model")
    train.add_argument("--seed", type=int, default=42)
    train.add_argument("--folds", type=int, default=5)
    train.add_argument("--train-fraction", type=float, default=0.6)
    train.add_argument("--min-messages", type=int, default=10)
    train.add_argument("--from-archive", action="store_true",
                       help="dataset is in the public archive's JSON-lines layout")

    evaluate = sub.add_parser("evaluate", help="score a model on a labeled dataset")
    evaluate.add_argument("dataset", help="labeled dataset file")
    evaluate.add_argument("--model", default=None,
                          help="model file (defaults to the shipped one)")
    evaluate.add_argument("--from-archive", action="store_true",
                          help="dataset is in the public archive's JSON-lines layout")
    return parser


_SUBCOMMANDS = {"analyze", "train", "evaluate"}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in _SUBCOMMANDS and argv[0] not in ("-h", "--help"):
        argv.insert(0, "analyze")  # bare repository paths imply analyze
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "analyze":
            if (
                args.min_commits is not None
                and args.max_commits is not None
                and args.min_commits > args.max_commits
            ):
                parser.error("--min-commits must not exceed --max-commits")
            options = CliOptions(
                repositories=args.repositories,
                include=args.include,
                start_date=args.start_date,
                mapping=args.mapping,
                committer=args.committer,
                min_commits=args.min_commits,
                max_commits=args.max_commits,
                verbose=args.verbose,
                only_predicted=args.only_predicted,
                output_format=args.output_format,
                model_path=args.model_path,
            )
            rows = run_analysis(options)
            sys.stdout.write(format_output(rows, options.output_format, options.verbose))
            return 0
        if args.command == "train":
            return run_train(args)
        return run_evaluate(args)
    except (GitbotError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
