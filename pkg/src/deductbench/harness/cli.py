"""Command-line interface.

Exit status: 0 on success, 1 on a domain error (diagnostic on stderr),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .. import __version__
from ..lint import LintConfig, lint, render_warnings
from ..perturb import (
    DEFAULT_K, NOISE_SIZES, VARIANTS, CorpusTooSmall, MissingAnnotation, NoiseCorpus, NoiseKind,
    SchemaMismatch, SpanOutOfRange, UnsupportedRule, build_suite,
)
from ..pipeline import (
    BackendUnavailable, Format, Recovery, RunAborted, RunConfig, ScriptExhausted, load_results,
    run_all,
)
from ..prover import (
    ExternalProverUnavailable, ProverBudget, UnrecognizedStatus, decide, prove_external,
)
from ..syntax import LogicSyntaxError, SyntaxId, UnrepresentableConstruct, parse, print_problem
from .config import ConfigError, ExperimentConfig, make_backend
from .dataset import SchemaError, convert_logicbench, fixture_path, load_any, load_dataset, write_jsonl
from .metrics import MissingGold, evaluate
from .report import FORMATS, report

DOMAIN_ERRORS = (
    LogicSyntaxError, UnrepresentableConstruct, SchemaError, ConfigError, MissingGold,
    CorpusTooSmall, MissingAnnotation, SpanOutOfRange, UnsupportedRule, SchemaMismatch,
    ExternalProverUnavailable, UnrecognizedStatus, BackendUnavailable, ScriptExhausted,
    RunAborted, OSError, ValueError,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _syntax(value: str) -> SyntaxId:
    try:
        return SyntaxId.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _corpus(value: str) -> tuple:
    kind, sep, path = value.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected KIND=PATH, e.g. Logical=logical.txt")
    try:
        return NoiseKind.parse(kind), path
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write_json(path, data) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _budget(args) -> ProverBudget:
    return ProverBudget(args.max_clauses, args.max_seconds)


# --- subcommands ----------------------------------------------------------


def cmd_parse(args) -> int:
    p = parse(_read(args.file), args.syntax)
    sys.stdout.write(print_problem(p, args.syntax))
    return 0


def cmd_translate(args) -> int:
    p = parse(_read(args.file), args.source)
    sys.stdout.write(print_problem(p, args.target, strict=args.strict))
    return 0


def cmd_lint(args) -> int:
    p = parse(_read(args.file), args.syntax)
    cfg = LintConfig(args.threshold, args.min_length, not args.case_sensitive)
    text = render_warnings(lint(p, cfg))
    if text:
        print(text)
    return 0


def cmd_prove(args) -> int:
    p = parse(_read(args.file), args.syntax)
    if p.conclusion is None:
        raise ValueError("the problem has no conclusion to prove")
    budget = _budget(args)
    if args.external:
        outcome = prove_external(p, args.external, budget)
        print("yes" if outcome.entailed else "no")
        return 0
    decision = decide(p, budget, diagnose=False)
    print(decision.answer.value)
    if args.proof and decision.outcome.entailed:
        for step in decision.outcome.proof:
            print(step)
    elif args.proof:
        print(f"% {decision.outcome.reason.value}")
    return 0


def cmd_perturb(args) -> int:
    dataset = load_dataset(args.dataset or fixture_path())
    corpora = {kind: NoiseCorpus.from_file(kind, path) for kind, path in args.corpus}
    variants = args.variant or list(VARIANTS)
    suite = build_suite(dataset, args.seed, corpora, args.k, variants)
    missing = [v for v in variants if v in suite.manifest["skipped"]]
    if args.variant and missing:
        raise ValueError(f"cannot build {', '.join(missing)}: {suite.manifest['skipped'][missing[0]]}")
    records = [s for v in VARIANTS for s in suite.variants.get(v, [])]
    if args.out:
        write_jsonl(args.out, records)
        manifest = args.manifest or str(Path(args.out).with_suffix(".manifest.json"))
        _write_json(manifest, suite.manifest)
    else:
        for s in records:
            print(json.dumps(s.to_dict(), ensure_ascii=False))
    counts = ", ".join(f"{v}={n}" for v, n in suite.manifest["counts"].items())
    print(f"built {counts}", file=sys.stderr)
    return 0


def _experiment(args) -> ExperimentConfig:
    cfg = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    run = cfg.run.to_dict()
    for key, value in (("format", args.format), ("syntax", args.syntax), ("recovery", args.recovery),
                       ("max_refinements", args.max_refinements), ("fallback_seed", args.fallback_seed),
                       ("temperature", args.temperature)):
        if value is not None:
            run[key] = value.value if hasattr(value, "value") else value
    if args.backend:
        cfg.backend = {**cfg.backend, "kind": args.backend}
        run["backend"] = args.backend
    if args.script:
        cfg.backend = {**cfg.backend, "script": args.script}
    cfg.run = RunConfig.from_dict(run)
    cfg.dataset = args.dataset or cfg.dataset
    cfg.output = args.out or cfg.output
    if args.workers is not None:
        cfg.workers = args.workers
    if args.no_transcript:
        cfg.transcript = False
    return cfg


def cmd_run(args) -> int:
    cfg = _experiment(args)
    samples = load_any(cfg.dataset or fixture_path())
    perturbed = [s.as_original() if hasattr(s, "as_original") else s for s in samples]
    backend = make_backend(cfg.backend, perturbed)
    results = run_all(perturbed, cfg.run, backend, cfg.output, workers=cfg.workers,
                      transcript=cfg.transcript, resume=not args.fresh)
    if cfg.output:
        # The run config (fallback seed included) is what makes a results file reproducible.
        _write_json(Path(cfg.output).with_suffix(".manifest.json"), {
            "dataset": str(cfg.dataset or fixture_path()), "backend": cfg.backend.get("kind", "oracle"),
            "run": cfg.run.to_dict(), "n": len(results),
        })
    m = evaluate(results, perturbed)
    print(f"n={m.n} accuracy={m.accuracy:.4f} execution_rate={m.execution_rate:.4f}", file=sys.stderr)
    if not cfg.output:
        for r in results:
            print(json.dumps(r.to_dict(transcript=cfg.transcript), ensure_ascii=False, sort_keys=True))
    return 0


def cmd_report(args) -> int:
    gold = load_any(args.gold or fixture_path())
    names = args.names or [Path(p).stem for p in args.results]
    if len(names) != len(args.results):
        raise ValueError("--names must give one name per results file")
    runs = [(name, evaluate(load_results(path), gold)) for name, path in zip(names, args.results)]
    sys.stdout.write(report(runs[0][1] if len(runs) == 1 else runs, args.format))
    return 0


def cmd_convert(args) -> int:
    samples = []
    for path in args.files:
        with open(path, encoding="utf-8") as fh:
            samples.extend(convert_logicbench(json.load(fh)))
    write_jsonl(args.out, samples)
    print(f"wrote {len(samples)} samples", file=sys.stderr)
    return 0


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="deductbench", description="Robustness workbench for deductive reasoning.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a document and print its canonical form")
    p.add_argument("file", help="input document, or - for stdin")
    p.add_argument("--syntax", type=_syntax, default=SyntaxId.FOL)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("translate", help="re-render a document in another syntax")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--from", dest="source", type=_syntax, required=True)
    p.add_argument("--to", dest="target", type=_syntax, required=True)
    p.add_argument("--strict", action="store_true", help="parenthesize quantifier bodies (standard TPTP)")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("lint", help="print advisory warnings")
    p.add_argument("file")
    p.add_argument("--syntax", type=_syntax, default=SyntaxId.FOL)
    p.add_argument("--threshold", type=int, default=1)
    p.add_argument("--min-length", type=int, default=4)
    p.add_argument("--case-sensitive", action="store_true")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("prove", help="decide whether the premises entail the conclusion")
    p.add_argument("file")
    p.add_argument("--syntax", type=_syntax, default=SyntaxId.FOL)
    p.add_argument("--external", metavar="CMD", help="TPTP prover command with {file}/{timeout} placeholders")
    p.add_argument("--max-clauses", type=int, default=100_000)
    p.add_argument("--max-seconds", type=float, default=10.0)
    p.add_argument("--proof", action="store_true", help="print the refutation")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("perturb", help="build dataset variants")
    p.add_argument("--dataset", help="JSONL samples (default: the shipped fixture)")
    p.add_argument("--variant", action="append", choices=VARIANTS)
    p.add_argument("--k", type=int, choices=NOISE_SIZES, default=DEFAULT_K)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus", action="append", type=_corpus, default=[], metavar="KIND=PATH")
    p.add_argument("--out", help="output JSONL (default: stdout)")
    p.add_argument("--manifest", help="manifest path (default: next to --out)")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("run", help="run a reasoning format over a dataset")
    p.add_argument("--config")
    p.add_argument("--dataset")
    p.add_argument("--backend", choices=("oracle", "mock", "http"))
    p.add_argument("--script", help="mock backend script (JSON)")
    p.add_argument("--format", type=Format.parse)
    p.add_argument("--syntax", type=_syntax)
    p.add_argument("--recovery", type=Recovery.parse)
    p.add_argument("--max-refinements", type=int)
    p.add_argument("--temperature", type=float)
    p.add_argument("--fallback-seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.add_argument("--no-transcript", action="store_true")
    p.add_argument("--fresh", action="store_true", help="overwrite instead of resuming")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("report", help="metrics tables from results files")
    p.add_argument("--results", nargs="+", required=True)
    p.add_argument("--gold", help="samples with gold labels (default: the shipped fixture)")
    p.add_argument("--names", nargs="+")
    p.add_argument("--format", choices=FORMATS, default="markdown")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("convert-logicbench", help="convert LogicBench JSON files to JSONL samples")
    p.add_argument("files", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_convert)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
