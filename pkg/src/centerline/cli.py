"""Command-line interface.

Examples::

    centerline validate corpus.ctr
    centerline resolve --strategy functional corpus.ctr
    centerline compare --figure rates.png a.ctr b.ctr
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

from centerline import corpus_io
from centerline.evaluation import (
    ScoreRow,
    antecedent_typology,
    classify_errors,
    corpus_stats,
    emit_tables,
    score,
    stats_table,
    success_table,
    sum_rows,
    taxonomy_table,
    typology_table,
    TOTAL_LABEL,
)
from centerline.model import Document
from centerline.resolution import (
    STRATEGIES,
    ResolutionConfig,
    Strategy,
    resolve_document,
)

STRATEGY_CHOICES = ["functional", "linear", "inter", "intra"]


class InputError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centerline",
        description="Centering-based anaphora resolution over .ctr corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, strategy=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("inputs", nargs="+", metavar="FILE")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.add_argument("--format", choices=["table", "tsv"], default=None)
        if strategy is not None:
            p.add_argument("--strategy", choices=STRATEGY_CHOICES, required=strategy)
            p.add_argument("--semantics", action="store_true",
                           help="enable semantic type constraints")
            p.add_argument("--no-binding", action="store_true",
                           help="disable the clause-mate binding filter")
            p.add_argument("--chain-correct", action="store_true",
                           help="propagate gold entities to stop error chaining")
        return p

    add("validate", "check annotation files")
    add("stats", "anaphor distribution per file")
    add("typology", "types of intra-sentential antecedents")
    add("resolve", "write the per-anaphor resolution report", strategy=True)
    p = add("evaluate", "success rate of one strategy", strategy=True)
    p.add_argument("--figure", help="also render a bar chart to this path")
    p = add("compare", "success rates of all strategies", strategy=False)
    p.add_argument("--figure", help="also render a bar chart to this path")
    return parser


def _label(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def _load(paths: Sequence[str]) -> List[Tuple[str, Document]]:
    def read(path):
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"{path}: cannot read: {exc}")
        doc, diags = corpus_io.parse_document(text)
        if corpus_io.has_errors(diags):
            lines = [f"{path}:{d.line}: {d.severity}: {d.message}" for d in diags]
            raise InputError("\n".join(lines))
        return _label(path), doc

    with ThreadPoolExecutor() as pool:
        return list(pool.map(read, paths))


def _config(args, strategy: Optional[Strategy] = None, semantics=None) -> ResolutionConfig:
    return ResolutionConfig(
        strategy=strategy or Strategy.from_name(args.strategy),
        semantics_enabled=args.semantics if semantics is None else semantics,
        binding_filter_enabled=not args.no_binding,
        chain_correct=args.chain_correct,
    )


def _score_rows(docs, cfgs) -> List[ScoreRow]:
    def run(item):
        label, doc = item
        row = ScoreRow(label, len(doc.anaphors()), {})
        for cfg in cfgs:
            row.correct.update(score(resolve_document(doc, cfg), doc, label).correct)
        return row

    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(run, docs))
    if len(rows) > 1:
        rows.append(sum_rows(rows))
    return rows


def _cmd_validate(args, out) -> int:
    status = 0
    for path in args.inputs:
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except (OSError, UnicodeDecodeError) as exc:
            print(f"{path}: cannot read: {exc}", file=sys.stderr)
            status = 1
            continue
        _, diags = corpus_io.parse_document(text)
        for d in diags:
            out.append(f"{path}:{d.line}: {d.severity}: {d.message}\n")
        if corpus_io.has_errors(diags):
            status = 1
        else:
            out.append(f"{path}: ok\n")
    return status


def _cmd_stats(args, docs, out, style) -> int:
    rows = [corpus_stats([doc], label) for label, doc in docs]
    if len(rows) > 1:
        rows.append(corpus_stats([doc for _, doc in docs]))
    out.append(stats_table(rows, **style))
    return 0


def _cmd_typology(args, docs, out, style) -> int:
    rows = [(label, antecedent_typology(doc)) for label, doc in docs]
    if len(rows) > 1:
        total = rows[0][1]
        for _, row in rows[1:]:
            total = total + row
        rows.append((TOTAL_LABEL, total))
    out.append(typology_table(rows, **style))
    return 0


def _cmd_resolve(args, docs, out, style) -> int:
    cfg = _config(args)
    reports = [resolve_document(doc, cfg) for _, doc in docs]
    if style["fmt"] == "tsv":
        for i, report in enumerate(reports):
            out.append(corpus_io.format_report(report, header=i == 0))
        return 0
    header = list(corpus_io.REPORT_COLUMNS)
    body = []
    for report in reports:
        for line in corpus_io.format_report(report, header=False).splitlines():
            body.append(line.split("\t"))
    out.append(emit_tables(header, body, **style))
    return 0


def _cmd_evaluate(args, docs, out, style) -> int:
    cfg = _config(args)
    rows = _score_rows(docs, [cfg])
    name = cfg.strategy.value
    out.append(success_table(rows, [name], **style))
    if args.figure:
        from centerline.plotting import success_rate_figure

        success_rate_figure([(name, rows)], [name], args.figure)
    return 0


def _cmd_compare(args, docs, out, style) -> int:
    names = [s.value for s in STRATEGIES]
    panels = []
    for semantics in (False, True):
        cfgs = [_config(args, s, semantics) for s in STRATEGIES]
        rows = _score_rows(docs, cfgs)
        title = "with semantic constraints" if semantics else "without semantic constraints"
        panels.append((title, rows))
        if style["fmt"] == "table":
            out.append(f"Success rate {title}\n")
        out.append(success_table(rows, names, **style))
        if style["fmt"] == "table":
            out.append("\n")
    if style["fmt"] == "table":
        out.append("Errors (without semantic constraints)\n")
    for label, doc in docs:
        reports = {s: resolve_document(doc, _config(args, s, False)) for s in STRATEGIES}
        taxonomy = classify_errors(reports, doc)
        if len(docs) > 1 and style["fmt"] == "table":
            out.append(f"{label}\n")
        out.append(taxonomy_table(taxonomy, **style))
    if args.figure:
        from centerline.plotting import success_rate_figure

        success_rate_figure(panels, names, args.figure)
    return 0


COMMANDS = {
    "stats": _cmd_stats,
    "typology": _cmd_typology,
    "resolve": _cmd_resolve,
    "evaluate": _cmd_evaluate,
    "compare": _cmd_compare,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "compare":
        args.strategy, args.semantics = "functional", False

    color = os.environ.get("CENTERLINE_COLOR", "0") == "1"
    fmt = args.format or ("tsv" if args.command == "resolve" else "table")
    style = {"fmt": fmt, "color": color and fmt == "table" and not args.output}
    out: List[str] = []
    if args.command == "validate":
        status = _cmd_validate(args, out)
    else:
        try:
            docs = _load(args.inputs)
        except InputError as exc:
            print(exc, file=sys.stderr)
            return 1
        status = COMMANDS[args.command](args, docs, out, style)

    text = "".join(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())
