"""Command-line entry point: ``ptevent <command> [options]``.

Exit codes: 0 success, 1 validation/usage error, 2 IO or client error.
Every command that writes a file also writes ``<out>.meta.json`` holding the
config hash and the hashes of its inputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys

from .alignment import (
    AlignmentClients,
    CachedDictionaryClient,
    CachedMTClient,
    CachedWordAligner,
    JsonCache,
    MicrosoftTranslatorClient,
    SentenceTranslation,
    TableLemmatizer,
    align_translations,
    translate_sentences,
)
from .argument_extractor import CLSBackend, OracleQABackend, extract_corpus
from .config import Config
from .errors import AlignmentIOError, BackendError, ValidationError
from .ingestion import corpus_stats, read_ace_json, write_ace_json, write_conll_iob, write_squad_json
from .predictions import flatten, load_records, write_predictions
from .scorer import format_table, score_arguments, score_triggers
from .templates import corpus_qa_items
from .trigger_tagger import OracleTokenBackend, emit_trigger_training

logger = logging.getLogger("ptevent")

BACKENDS = ("mock-oracle", "mock-cls", "hf")


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _file_hash(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_meta(command, config: Config, inputs, outputs) -> None:
    for out in outputs:
        meta = {
            "command": command,
            "config_sha256": config.digest(),
            "config": {k: v for k, v in config.to_dict().items() if k != "jobs"},
            "inputs": {os.path.basename(p): _file_hash(p) for p in inputs if p and os.path.exists(p)},
            "output_sha256": _file_hash(out),
        }
        with open(out + ".meta.json", "w", encoding="utf-8") as f:
            json.dump(meta, f, ensure_ascii=False, indent=2, sort_keys=True)
            f.write("\n")


def _emit_json(obj, out) -> None:
    text = json.dumps(obj, ensure_ascii=False, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override it")
    common.add_argument("--jobs", type=int)
    common.add_argument("--src", dest="src_lang")
    common.add_argument("--tgt", dest="tgt_lang")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="ptevent", description="QA-driven event extraction for Portuguese.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", parents=[common], help="validate preprocessed-ACE JSON and re-export it")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("ace", "conll"), default="ace")

    p = sub.add_parser("translate", parents=[common], help="machine-translate sentences and annotation texts")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("align", parents=[common], help="re-anchor annotations in the translated sentences")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--translations", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="alignment report path (default: <out>.report.json)")
    p.add_argument("--stages", help="comma-separated subset of exact,lemma,dictionary,aligner,fuzzy")
    p.add_argument("--threshold", type=float, dest="fuzzy_threshold")

    p = sub.add_parser("gen-triggers", parents=[common], help="write CoNLL-IOB trigger training data")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="alignment report; sentences with unaligned triggers are skipped")

    p = sub.add_parser("gen-qa", parents=[common], help="write SQuAD-v2 argument training data")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--context-window", type=int, dest="context_window")

    p = sub.add_parser("extract", parents=[common], help="predict triggers and arguments")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.add_argument("--backend", choices=BACKENDS, default="mock-oracle")
    p.add_argument("--trigger-model", dest="trigger_model")
    p.add_argument("--qa-model", dest="qa_model")
    p.add_argument("--context-window", type=int, dest="context_window")
    p.add_argument("--null-threshold", type=float, dest="null_threshold")
    p.add_argument("--max-answer-tokens", type=int, dest="max_answer_tokens")

    p = sub.add_parser("score", parents=[common], help="exact-match P/R/F1")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--task", choices=("triggers", "arguments", "all"), default="all")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out")

    p = sub.add_parser("stats", parents=[common], help="corpus statistics")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    return parser


def _config(args) -> Config:
    config = Config.load(args.config) if args.config else Config()
    overrides = {
        name: getattr(args, name, None)
        for name in ("jobs", "src_lang", "tgt_lang", "fuzzy_threshold", "context_window",
                     "null_threshold", "max_answer_tokens", "trigger_model", "qa_model")
    }
    if getattr(args, "stages", None):
        overrides["stages"] = tuple(s.strip() for s in args.stages.split(",") if s.strip())
    return config.override(**overrides)


def _cache(path):
    return JsonCache(path) if path else JsonCache()


def _live_client(config: Config):
    key = os.environ.get(config.mt_key_env)
    if not key:
        return None
    return MicrosoftTranslatorClient(key, config.mt_region, config.mt_endpoint)


def cmd_ingest(args, config):
    corpus = read_ace_json(args.inp, language=config.src_lang)
    if args.format == "conll":
        write_conll_iob(corpus, args.out)
    else:
        write_ace_json(corpus, args.out)
    _write_meta("ingest", config, [args.inp], [args.out])
    logger.info("ingested %d sentences", len(corpus))


def cmd_translate(args, config):
    corpus = read_ace_json(args.inp, language=config.src_lang)
    mt = CachedMTClient(_live_client(config), _cache(config.mt_cache))
    translations = translate_sentences(corpus, mt, config.alignment(), config.jobs)
    _emit_json([t.to_json() for t in translations], args.out)
    _write_meta("translate", config, [args.inp, config.mt_cache], [args.out])


def cmd_align(args, config):
    corpus = read_ace_json(args.inp, language=config.src_lang)
    with open(args.translations, encoding="utf-8") as f:
        translations = [SentenceTranslation.from_json(t) for t in json.load(f)]
    lemmatizer = None
    if config.lemma_table:
        with open(config.lemma_table, encoding="utf-8") as f:
            lemmatizer = TableLemmatizer(json.load(f))
    live = _live_client(config)
    dictionary = None
    if config.dictionary_cache or live:
        dictionary = CachedDictionaryClient(live, _cache(config.dictionary_cache))
    aligner = CachedWordAligner(None, JsonCache(config.aligner_cache)) if config.aligner_cache else None
    clients = AlignmentClients(lemmatizer, dictionary, aligner)
    translated, report = align_translations(corpus, translations, clients, config.alignment(), config.jobs)
    write_ace_json(translated, args.out)
    report_path = args.report or args.out + ".report.json"
    with open(report_path, "w", encoding="utf-8") as f:
        f.write(report.dumps())
    _write_meta("align", config, [args.inp, args.translations, config.dictionary_cache, config.aligner_cache,
                                  config.lemma_table], [args.out, report_path])
    counts = ", ".join(f"{k}={v}" for k, v in report.per_stage_counts.items())
    print(f"aligned {len(translated)} sentences: {counts}", file=sys.stderr)


def cmd_gen_triggers(args, config):
    corpus = read_ace_json(args.inp, language=config.tgt_lang)
    skip = set()
    if args.report:
        from .alignment import AlignmentReport

        with open(args.report, encoding="utf-8") as f:
            skip = AlignmentReport.from_json(json.load(f)).unaligned_sentence_ids("trigger")
    emit_trigger_training(corpus, args.out, skip)
    _write_meta("gen-triggers", config, [args.inp, args.report], [args.out])


def cmd_gen_qa(args, config):
    corpus = read_ace_json(args.inp, language=config.tgt_lang)
    items = corpus_qa_items(corpus, config.context_window)
    write_squad_json(items, args.out)
    _write_meta("gen-qa", config, [args.inp], [args.out])
    print(f"wrote {len(items)} QA items", file=sys.stderr)


def _backends(args, config, corpus):
    if args.backend == "mock-oracle":
        return OracleTokenBackend(corpus.sentences), OracleQABackend.from_corpus(corpus, config.context_window)
    if args.backend == "mock-cls":
        return OracleTokenBackend(corpus.sentences), CLSBackend()
    if not (config.trigger_model and config.qa_model):
        raise UsageError("--backend hf needs --trigger-model and --qa-model")
    from .backends import TransformersQABackend, TransformersTokenBackend

    try:
        return TransformersTokenBackend(config.trigger_model), TransformersQABackend(config.qa_model)
    except OSError as exc:
        raise BackendError(f"cannot load models: {exc}") from exc


def cmd_extract(args, config):
    corpus = read_ace_json(args.inp, language=config.tgt_lang)
    trig, qa = _backends(args, config, corpus)
    records = extract_corpus(corpus, trig, qa, config.context_window, config.extraction(), config.jobs)
    if args.out:
        write_predictions(records, args.out)
        _write_meta("extract", config, [args.inp], [args.out])
    else:
        _emit_json(records, None)


def cmd_score(args, config):
    gold_t, gold_a = flatten(load_records(args.gold))
    pred_t, pred_a = flatten(load_records(args.pred))
    reports = {}
    if args.task in ("triggers", "all"):
        reports["Trigger"] = score_triggers(gold_t, pred_t)
    if args.task in ("arguments", "all"):
        reports["Argument"] = score_arguments(gold_a, pred_a)
    if args.format == "json":
        text = json.dumps({k.lower(): r.to_json() for k, r in reports.items()}, ensure_ascii=False, indent=2) + "\n"
    else:
        text = format_table(reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        _write_meta("score", config, [args.gold, args.pred], [args.out])
    else:
        sys.stdout.write(text)


def cmd_stats(args, config):
    stats = corpus_stats(read_ace_json(args.inp))
    _emit_json(stats, args.out)
    if args.out:
        _write_meta("stats", config, [args.inp], [args.out])


HANDLERS = {
    "ingest": cmd_ingest,
    "translate": cmd_translate,
    "align": cmd_align,
    "gen-triggers": cmd_gen_triggers,
    "gen-qa": cmd_gen_qa,
    "extract": cmd_extract,
    "score": cmd_score,
    "stats": cmd_stats,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        config = _config(args)
        HANDLERS[args.command](args, config)
    except UsageError as exc:
        print(f"ptevent: error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"ptevent: invalid input: {exc}", file=sys.stderr)
        return 1
    except (AlignmentIOError, BackendError, OSError) as exc:
        print(f"ptevent: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
