"""``scw`` command line.

Exit status: 0 success, 1 domain failure (validation, evaluation, partial
generation), 2 environment failure (I/O, configuration, usage).
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from scw import __version__, corpus
from scw.config import ConfigFileError, WorkbenchConfig, load_config
from scw.dot import RenderError, to_dot
from scw.evaluation.cosine import EmbeddingError, HttpEmbeddingProvider, cosine_similarity, vectorizer_name
from scw.evaluation.published import all_tables
from scw.evaluation.ratings import MEASURES, RatingsError, ingest_ratings
from scw.evaluation.rq1 import assessor_grades, load_rq1_scores, tau_table
from scw.evaluation.tables import ScoreTable, aggregate, aggregate_ratings, emit_report
from scw.evaluation.tau import TauUndefined, concordance, kendalls_tau
from scw.generation.brief import SystemBrief, load_brief
from scw.generation.clients import CompletionClient, HttpCompletionClient, ReplayClient
from scw.generation.prompts import ConfigError, ExperimentConfig
from scw.generation.runner import run_experiment
from scw.gsn.model import SafetyCase
from scw.gsn.rules import has_errors, validate
from scw.prose import normalize_newlines, parse_strict, serialize

log = logging.getLogger("scw")

EXIT_OK, EXIT_DOMAIN, EXIT_ENV = 0, 1, 2

_GENERATED_RE = re.compile(r"exp(\d+)\.round(\d+)\.gsn\.txt$")


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_bytes(text.encode("utf-8"))
    except OSError as exc:
        raise CliFailure(EXIT_ENV, f"cannot write {out}: {exc}") from exc


def _read_source(arg: str) -> tuple[str, str]:
    """Return (display name, text) for a file path or a corpus label."""
    path = Path(arg)
    if path.exists():
        try:
            return arg, normalize_newlines(path.read_bytes().decode("utf-8"))
        except (OSError, UnicodeDecodeError) as exc:
            raise CliFailure(EXIT_ENV, f"cannot read {arg}: {exc}") from exc
    try:
        return f"{corpus.canonical_label(arg)}.gsn.txt", corpus.corpus_text(arg)
    except KeyError:
        raise CliFailure(EXIT_ENV, f"cannot read {arg}: no such file or corpus case") from None


def _parse_or_fail(name: str, text: str) -> SafetyCase:
    outcome = parse_strict(text)
    for d in outcome.diagnostics:
        print(d.format(name))
    if not outcome.ok:
        raise CliFailure(EXIT_DOMAIN, f"{name}: does not parse")
    return outcome.case


# --- validate / render ------------------------------------------------------


def cmd_validate(args: argparse.Namespace, cfg: WorkbenchConfig) -> int:
    name, text = _read_source(args.path)
    case = _parse_or_fail(name, text)
    diags = validate(case, allow_multiple_roots=args.allow_multiple_roots or cfg.allow_multiple_roots)
    for d in diags:
        print(d.format(name))
    errors = sum(d.is_error for d in diags)
    warnings = len(diags) - errors
    print(f"{name}: {errors} error(s), {warnings} warning(s)")
    if errors or (args.strict_warnings and warnings):
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_render(args: argparse.Namespace, cfg: WorkbenchConfig) -> int:
    name, text = _read_source(args.path)
    case = _parse_or_fail(name, text)
    wrap = args.wrap if args.wrap is not None else cfg.wrap
    try:
        dot = to_dot(case, wrap=wrap, force=args.force)
    except RenderError as exc:
        for d in exc.diagnostics:
            print(d.format(name), file=sys.stderr)
        raise CliFailure(EXIT_DOMAIN, f"{name}: not rendered (use --force to override)") from None
    _emit(dot, args.output)
    return EXIT_OK


# --- generate ----------------------------------------------------------------


def _bundled_replay_dir() -> Path:
    return Path(str(resources.files("scw.data.replay")))


def _client(args: argparse.Namespace, cfg: WorkbenchConfig, seed: str) -> CompletionClient:
    if args.client == "replay":
        directory = args.replay_dir or cfg.replay_dir or _bundled_replay_dir()
        if not Path(directory).is_dir():
            raise CliFailure(EXIT_ENV, f"replay directory {directory} does not exist")
        return ReplayClient(directory, seed)
    url = args.url or cfg.llm.url
    if not url:
        raise CliFailure(EXIT_ENV, "no completion endpoint: set llm.url in workbench.toml or pass --url")
    return HttpCompletionClient(url, model=cfg.llm.model, wire=cfg.llm.wire, timeout=cfg.llm.timeout)


def _params(cfg: WorkbenchConfig, pairs: Sequence[str]) -> dict:
    params = dict(cfg.llm.params)
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            raise CliFailure(EXIT_ENV, f"--param expects key=value, got {pair!r}")
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
    return params


def cmd_generate(args: argparse.Namespace, cfg: WorkbenchConfig, parser: argparse.ArgumentParser) -> int:
    brief: SystemBrief
    if args.case:
        try:
            seed_default = corpus.canonical_label(args.case)
            brief = corpus.brief(args.case)
        except KeyError as exc:
            parser.error(str(exc.args[0]))
    else:
        seed_default = Path(args.brief).name.split(".")[0] or "run"
        try:
            brief = load_brief(args.brief)
        except OSError as exc:
            raise CliFailure(EXIT_ENV, f"cannot read {args.brief}: {exc}") from exc
        except ValueError as exc:
            raise CliFailure(EXIT_ENV, f"{args.brief}: {exc}") from exc
    seed = args.seed_label or seed_default
    try:
        config = ExperimentConfig(args.experiment, brief, rounds_k=args.k, seed_label=seed)
    except ConfigError as exc:
        parser.error(str(exc))

    client = _client(args, cfg, seed)
    manifest = run_experiment(config, client, _params(cfg, args.param))

    out = Path(args.out or cfg.output_dir)
    stem = f"{seed}.exp{args.experiment}"
    try:
        out.mkdir(parents=True, exist_ok=True)
        manifest_path = out / f"{stem}.manifest.json"
        manifest.write(manifest_path)
        for record in manifest.rounds:
            prose_path = out / f"{stem}.round{record.round}.gsn.txt"
            if record.case is None:
                print(f"round {record.round}: failed: {record.error}")
                continue
            try:
                prose_path.write_bytes(serialize(record.case).encode("utf-8"))
            except ValueError as exc:
                print(f"round {record.round}: not serialized: {exc}")
                continue
            summary = record.parse
            print(
                f"round {record.round}: {summary['elements']} elements, "
                f"{summary['relationships']} relationships -> {prose_path}"
            )
    except OSError as exc:
        raise CliFailure(EXIT_ENV, f"cannot write under {out}: {exc}") from exc
    print(f"manifest {manifest_path} ({manifest.status})")
    return EXIT_OK if manifest.ok else EXIT_DOMAIN


# --- evaluate ----------------------------------------------------------------


def _truth(arg: str) -> tuple[str, str]:
    """Return (row label, text) of a valid ground-truth case."""
    path = Path(arg)
    if path.exists():
        name, text = _read_source(arg)
        label = path.name.split(".")[0]
    else:
        try:
            label = corpus.REPORT_LABELS[corpus.canonical_label(arg)]
        except KeyError:
            raise CliFailure(EXIT_ENV, f"cannot read {arg}: no such file or corpus case") from None
        name, text = _read_source(arg)
    case = _parse_or_fail(name, text)
    errors = [d for d in validate(case) if d.is_error]
    for d in errors:
        print(d.format(name), file=sys.stderr)
    if errors:
        raise CliFailure(EXIT_DOMAIN, f"{name}: ground truth is not a valid safety case")
    return label, text


def _generated_files(directory: str, prefix: Optional[str]) -> dict[int, list[Path]]:
    root = Path(directory)
    if not root.is_dir():
        raise CliFailure(EXIT_ENV, f"{directory} is not a directory")
    groups: dict[int, list[Path]] = {}
    for path in sorted(root.glob("*.gsn.txt")):
        m = _GENERATED_RE.search(path.name)
        if not m or (prefix and not path.name.startswith(f"{prefix}.")):
            continue
        groups.setdefault(int(m.group(1)), []).append(path)
    return groups


def _cosine_table(args: argparse.Namespace, cfg: WorkbenchConfig) -> ScoreTable:
    label, truth_text = _truth(args.truth)
    groups = _generated_files(args.generated, args.prefix)
    if not groups:
        raise CliFailure(EXIT_DOMAIN, f"no generated <seed>.exp<e>.round<r>.gsn.txt files in {args.generated}")
    if args.vectorizer == "embed":
        if not cfg.embedding.url:
            raise CliFailure(EXIT_ENV, "no embedding endpoint: set embedding.url in workbench.toml")
        vectorizer = HttpEmbeddingProvider(cfg.embedding.url, timeout=cfg.embedding.timeout)
    else:
        vectorizer = "tf"
    experiments = sorted(groups)
    cells = []
    for e in experiments:
        scores = []
        for path in groups[e]:
            try:
                text = normalize_newlines(path.read_bytes().decode("utf-8"))
            except (OSError, UnicodeDecodeError) as exc:
                raise CliFailure(EXIT_ENV, f"cannot read {path}: {exc}") from exc
            try:
                scores.append(cosine_similarity(text, truth_text, vectorizer))
            except EmbeddingError as exc:
                raise CliFailure(EXIT_ENV, str(exc)) from exc
            except ValueError as exc:
                log.warning("%s skipped: %s", path.name, exc)
        cells.append(scores or None)
    if all(c is None for c in cells):
        raise CliFailure(EXIT_DOMAIN, "no generated file could be scored")
    return aggregate(
        {label: cells},
        columns=[f"Exp-{e}" for e in experiments],
        title=f"Average cosine similarity scores ({sum(len(g) for g in groups.values())} generated cases)",
        row_header="Safety case",
        notes=[f"Vectorizer: {vectorizer_name(vectorizer)}."],
    )


def cmd_evaluate(args: argparse.Namespace, cfg: WorkbenchConfig, parser: argparse.ArgumentParser) -> int:
    if not (args.generated or args.ratings or args.rq1_scores):
        parser.error("nothing to evaluate: give --generated, --ratings or --rq1-scores")
    if args.generated and not args.truth:
        parser.error("--generated needs --truth")
    tables: list[ScoreTable] = []
    if args.generated:
        tables.append(_cosine_table(args, cfg))
    if args.ratings:
        try:
            records = ingest_ratings(args.ratings)
        except OSError as exc:
            raise CliFailure(EXIT_ENV, f"cannot read {args.ratings}: {exc}") from exc
        except RatingsError as exc:
            for err in exc.errors:
                print(f"{args.ratings}: {err}", file=sys.stderr)
            raise CliFailure(EXIT_DOMAIN, f"{args.ratings}: invalid ratings") from None
        titles = {
            "ground_truth": "Average ground-truth similarity scores",
            "reasonability": "Average reasonability scores",
        }
        for measure in MEASURES:
            if any(r.measure == measure for r in records):
                tables.append(aggregate_ratings(records, measure, title=titles[measure]))
    if args.rq1_scores:
        try:
            data = load_rq1_scores(args.rq1_scores)
        except OSError as exc:
            raise CliFailure(EXIT_ENV, f"cannot read {args.rq1_scores}: {exc}") from exc
        except ValueError as exc:
            raise CliFailure(EXIT_DOMAIN, f"{args.rq1_scores}: {exc}") from exc
        try:
            tables.append(tau_table(data))
        except (TauUndefined, ValueError) as exc:
            raise CliFailure(EXIT_DOMAIN, f"{args.rq1_scores}: {exc}") from exc
        tables.append(assessor_grades(data).table)
    _emit(emit_report(tables, args.format), args.output)
    return EXIT_OK


# --- tau / corpus / reproduce -----------------------------------------------


def _vector(raw: str) -> list[float]:
    try:
        return [float(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise CliFailure(EXIT_DOMAIN, f"not a comma-separated number list: {raw!r}") from None


def cmd_tau(args: argparse.Namespace, cfg: WorkbenchConfig, parser: argparse.ArgumentParser) -> int:
    if args.scores:
        if args.vectors:
            parser.error("give either two vectors or --scores, not both")
        try:
            data = load_rq1_scores(args.scores)
            table = tau_table(data)
        except OSError as exc:
            raise CliFailure(EXIT_ENV, f"cannot read {args.scores}: {exc}") from exc
        except ValueError as exc:
            raise CliFailure(EXIT_DOMAIN, f"{args.scores}: {exc}") from exc
        _emit(emit_report([table], args.format), None)
        return EXIT_OK
    if len(args.vectors) != 2:
        parser.error("tau needs two comma-separated vectors")
    a, b = (_vector(v) for v in args.vectors)
    try:
        tau = kendalls_tau(a, b)
    except ValueError as exc:
        raise CliFailure(EXIT_DOMAIN, str(exc)) from exc
    c, d = concordance(a, b)
    print(f"tau = {tau:.4f} (C={c}, D={d})")
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace, cfg: WorkbenchConfig, parser: argparse.ArgumentParser) -> int:
    if args.action == "list":
        for label in corpus.LABELS:
            entry = corpus.load(label)
            print(
                f"{label}\t{len(entry.case.elements)} elements\t"
                f"{len(entry.case.relationships)} relationships\t{entry.case.title}"
            )
        return EXIT_OK
    if not args.label:
        parser.error("corpus export needs a case label")
    try:
        entry = corpus.load(args.label)
    except KeyError as exc:
        parser.error(str(exc.args[0]))
    text = entry.text if args.format == "prose" else to_dot(entry.case, wrap=cfg.wrap)
    _emit(text, args.output)
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace, cfg: WorkbenchConfig) -> int:
    _emit(emit_report(all_tables(), args.format), args.output)
    return EXIT_OK


# --- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scw", description="GSN safety case workbench.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="workbench.toml path (default: ./workbench.toml if present)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a structured-prose case")
    p.add_argument("path", help="a .gsn.txt file or a corpus label")
    p.add_argument("--strict-warnings", action="store_true", help="fail on warnings too")
    p.add_argument("--allow-multiple-roots", action="store_true")

    p = sub.add_parser("render", help="export a case as Graphviz DOT")
    p.add_argument("path", help="a .gsn.txt file or a corpus label")
    p.add_argument("--wrap", type=int, help="label wrap width (default from config, 30)")
    p.add_argument("--force", action="store_true", help="render even when validation fails")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("generate", help="run one prompting experiment")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--case", help="bundled corpus brief: " + ", ".join(sorted(corpus.BRIEFS)))
    src.add_argument("--brief", help="TOML system brief")
    p.add_argument("--experiment", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--k", type=int, default=4, help="rounds (default 4)")
    p.add_argument("--client", choices=("live", "replay"), default="replay")
    p.add_argument("--replay-dir", help="canned responses (default: bundled)")
    p.add_argument("--url", help="completion endpoint, overrides llm.url")
    p.add_argument("--seed-label", help="run label (default: case label or brief file stem)")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="sampling parameter; repeatable")
    p.add_argument("--out", help="output directory (default from config, runs)")

    p = sub.add_parser("evaluate", help="score generated cases and ratings")
    p.add_argument("--generated", help="directory of <seed>.exp<e>.round<r>.gsn.txt files")
    p.add_argument("--prefix", help="only use generated files starting with this seed label")
    p.add_argument("--truth", help="ground truth: corpus label or .gsn.txt file")
    p.add_argument("--ratings", help="ratings CSV")
    p.add_argument("--rq1-scores", help="question-battery scores CSV (two raters)")
    p.add_argument("--vectorizer", choices=("tf", "embed"), default="tf")
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    p.add_argument("-o", "--output", help="report file (default stdout)")

    p = sub.add_parser("tau", help="Kendall's tau of two rankings")
    p.add_argument("vectors", nargs="*", help="two comma-separated lists, e.g. 1,2,3 1,3,2")
    p.add_argument("--scores", help="question-battery scores CSV; prints the per-round table")
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")

    p = sub.add_parser("corpus", help="list or export bundled ground-truth cases")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("label", nargs="?")
    p.add_argument("--format", choices=("prose", "dot"), default="prose")
    p.add_argument("-o", "--output")

    p = sub.add_parser("reproduce", help="recompute the published score tables")
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    p.add_argument("-o", "--output")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config)
        if args.command == "validate":
            return cmd_validate(args, cfg)
        if args.command == "render":
            return cmd_render(args, cfg)
        if args.command == "generate":
            return cmd_generate(args, cfg, parser)
        if args.command == "evaluate":
            return cmd_evaluate(args, cfg, parser)
        if args.command == "tau":
            return cmd_tau(args, cfg, parser)
        if args.command == "corpus":
            return cmd_corpus(args, cfg, parser)
        return cmd_reproduce(args, cfg)
    except ConfigFileError as exc:
        print(f"scw: {exc}", file=sys.stderr)
        return EXIT_ENV
    except CliFailure as exc:
        print(f"scw: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
