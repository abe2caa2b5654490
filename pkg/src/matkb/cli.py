"""Command-line pipeline driver. Each subcommand is a thin wrapper over the
library: ingest -> filter -> tag -> build-kb -> index -> query/serve."""

import json
import sys
from pathlib import Path

import click

from . import filtering, ingest as ingest_mod, kb as kb_mod
from .categories import UnknownSlotError
from .index import (
    QueryParseError,
    SlotQuery,
    build_index,
    execute,
    load_index,
    parse_query,
    save_index,
)
from .tagger import TaggerConfig, eval_span_f1, import_mentions, tag_corpus


@click.group()
def main():
    """matkb: extract entity mentions from materials texts and search them."""


@main.command("ingest")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
def ingest_cmd(in_path, out_dir):
    """Parse article records into paragraphs.jsonl plus an ingest report."""
    with open(in_path, encoding="utf-8") as fh:
        try:
            result = ingest_mod.ingest_corpus(fh)
        except ingest_mod.DuplicateArticleError as exc:
            raise click.ClickException(str(exc))
    ingest_mod.write_outputs(result, out_dir)
    n_paragraphs = sum(len(a.paragraphs) for a in result.articles)
    click.echo(
        f"ingested {len(result.articles)} articles, {n_paragraphs} paragraphs, "
        f"{len(result.report)} skipped lines -> {out_dir}"
    )


@main.command("filter")
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--rules", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Rule file; defaults to the packaged filter_rules.v1.json.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
def filter_cmd(corpus, rules, out_dir):
    """Mark synthesis-relevant paragraphs with the key-phrase strategies."""
    paragraphs = ingest_mod.read_paragraphs(corpus)
    rule_set = filtering.load_rules(rules)
    decisions = filtering.filter_corpus(paragraphs, rule_set)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "filter_decisions.jsonl", "w", encoding="utf-8") as fh:
        for d in decisions:
            fh.write(json.dumps(filtering.decision_to_record(d), ensure_ascii=False) + "\n")
    kept = [d for d in decisions if d.kept]
    summary = {
        "rules_version": rule_set.version,
        "paragraphs": len(decisions),
        "kept": len(kept),
        "kept_articles": filtering.kept_article_ids(decisions),
    }
    (out / "filter_summary.json").write_text(
        json.dumps(summary, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    click.echo(f"kept {len(kept)} of {len(decisions)} paragraphs -> {out_dir}")


def _read_gold_ids(path: str) -> set[str]:
    # one paragraph id per line, or a JSON array; '#' only comments a whole
    # line since paragraph ids themselves contain '#'
    text = Path(path).read_text("utf-8")
    if text.lstrip().startswith("["):
        return set(json.loads(text))
    ids = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            ids.add(line)
    return ids


@main.command("eval-recall")
@click.option("--decisions", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--gold", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
def eval_recall_cmd(decisions, gold, as_json):
    """Recall of the filter against a gold set of relevant paragraph ids."""
    decision_list = filtering.read_decisions(decisions)
    gold_ids = _read_gold_ids(gold)
    try:
        report = filtering.eval_recall(decision_list, gold_ids)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    payload = report.to_dict()
    if as_json:
        click.echo(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        click.echo(
            f"recall {payload['recall']} = {payload['recall_decimal']} "
            f"({payload['recall_percent']}): {report.retrieved_relevant} of "
            f"{report.gold_total} gold paragraphs kept"
        )


@main.command("tag")
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_dir", type=click.Path(file_okay=False, exists=True),
              default=None, help="Lexicon directory; defaults to the packaged set.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def tag_cmd(corpus, config_dir, out_path):
    """Run the rule tagger over a corpus and write mentions.jsonl."""
    paragraphs = ingest_mod.read_paragraphs(corpus)
    config = TaggerConfig.load(config_dir)
    mentions = tag_corpus(paragraphs, config)
    Path(out_path).write_text(kb_mod.mentions_to_jsonl(mentions), encoding="utf-8")
    click.echo(f"tagged {len(mentions)} mentions in {len(paragraphs)} paragraphs -> {out_path}")


@main.command("import-mentions")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None)
def import_mentions_cmd(in_path, corpus, out_path, report_path):
    """Validate externally produced mention records against the corpus."""
    paragraphs = {p.paragraph_id: p for p in ingest_mod.read_paragraphs(corpus)}
    with open(in_path, encoding="utf-8") as fh:
        result = import_mentions(fh, paragraphs)
    Path(out_path).write_text(kb_mod.mentions_to_jsonl(result.mentions), encoding="utf-8")
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            for issue in result.report:
                fh.write(issue.to_json() + "\n")
    click.echo(f"accepted {len(result.mentions)} mentions, rejected {len(result.report)} records")


@main.command("eval-ner")
@click.option("--pred", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--gold", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def eval_ner_cmd(pred, gold, as_json):
    """Exact-span precision/recall/F1 of predicted mentions against gold."""
    report = eval_span_f1(kb_mod.read_mentions(pred), kb_mod.read_mentions(gold))
    if as_json:
        click.echo(json.dumps(report.to_dict(), ensure_ascii=False, indent=2))
        return
    o = report.overall
    click.echo(f"precision {o.precision:.4f}  recall {o.recall:.4f}  f1 {o.f1:.4f}")
    for category, p in report.per_category.items():
        click.echo(
            f"  {category.value}: P {p.precision:.4f} R {p.recall:.4f} F1 {p.f1:.4f} "
            f"(pred {p.predicted}, gold {p.gold})"
        )


@main.command("build-kb")
@click.option("--paragraphs", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--mentions", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--articles", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--decisions", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Filter decisions; keeps only paragraphs marked kept.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
def build_kb_cmd(paragraphs, mentions, articles, decisions, out_dir):
    """Assemble a knowledge base directory with manifest and checksums."""
    paragraph_list = ingest_mod.read_paragraphs(paragraphs)
    if decisions:
        kept = {d.paragraph_id for d in filtering.read_decisions(decisions) if d.kept}
        paragraph_list = [p for p in paragraph_list if p.paragraph_id in kept]
    mention_list = kb_mod.read_mentions(mentions) if mentions else []

    article_meta = {}
    if articles:
        with open(articles, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    obj = json.loads(line)
                    aid = obj.pop("article_id")
                    article_meta[aid] = obj

    kb = kb_mod.KnowledgeBase(
        paragraphs={p.paragraph_id: p for p in paragraph_list},
        mentions=mention_list,
        articles=article_meta,
    )
    try:
        manifest = kb_mod.save_kb(kb, out_dir)
    except kb_mod.KBIntegrityError as exc:
        raise click.ClickException(str(exc))
    counts = {name: meta["records"] for name, meta in manifest["files"].items()}
    click.echo(f"wrote KB to {out_dir}: {counts}")


@main.command("stats")
@click.option("--kb", "kb_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--top", "top_n", default=4, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit the machine-readable report.")
def stats_cmd(kb_dir, top_n, as_json):
    """Per-category mention statistics for a knowledge base."""
    kb = _load_kb_or_fail(kb_dir)
    report = kb_mod.compute_stats(kb, top_n=top_n)
    if as_json:
        sys.stdout.buffer.write(report.to_json_bytes())
    else:
        click.echo(report.to_table(), nl=False)


@main.command("index")
@click.option("--kb", "kb_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def index_cmd(kb_dir, out_path):
    """Build the binary search index from a knowledge base."""
    kb = _load_kb_or_fail(kb_dir)
    idx = build_index(kb)
    save_index(idx, out_path)
    click.echo(
        f"indexed {idx.n_paragraphs} paragraphs, {len(idx.slot_postings)} slot keys, "
        f"{len(idx.token_postings)} tokens -> {out_path}"
    )


@main.command("query")
@click.option("--index", "index_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.argument("query_string")
@click.option("--limit", default=10, show_default=True)
@click.option("--offset", default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl", "table"]), default="jsonl",
              show_default=True)
def query_cmd(index_path, query_string, limit, offset, fmt):
    """Run a slot/free-text query against a saved index."""
    idx = load_index(index_path)
    try:
        parsed = parse_query(query_string)
        query = SlotQuery(
            slot_constraints=parsed.slot_constraints,
            free_text=parsed.free_text,
            limit=limit,
            offset=offset,
        )
        page = execute(idx, query)
    except (QueryParseError, UnknownSlotError, ValueError) as exc:
        raise click.ClickException(str(exc))

    if fmt == "table":
        click.echo(f"total {page.total}")
        for r in page.results:
            snippet = r.snippet if len(r.snippet) <= 100 else r.snippet[:97] + "..."
            click.echo(f"{r.paragraph_id}\t{r.score:.4f}\t{snippet}")
        return
    for r in page.results:
        click.echo(
            json.dumps(
                {
                    "paragraph_id": r.paragraph_id,
                    "article_id": r.article_id,
                    "score": r.score,
                    "snippet": r.snippet,
                    "highlights": [
                        {"start": h.start, "end": h.end, "category": h.category.value}
                        for h in r.highlights
                    ],
                    "total": page.total,
                },
                ensure_ascii=False,
            )
        )


@main.command("serve")
@click.option("--index", "index_path", required=True, envvar="MATKB_INDEX",
              type=click.Path(exists=True, dir_okay=False),
              help="Index file (env: MATKB_INDEX).")
@click.option("--kb", "kb_dir", required=True, envvar="MATKB_KB",
              type=click.Path(exists=True, file_okay=False),
              help="KB directory (env: MATKB_KB).")
@click.option("--bind", default="127.0.0.1:8000", envvar="MATKB_BIND", show_default=True,
              help="addr:port to listen on (env: MATKB_BIND).")
@click.option("--cors-origin", "cors_origins", multiple=True,
              help="Allowed CORS origin; repeatable.")
@click.option("--max-page-size", default=100, show_default=True)
def serve_cmd(index_path, kb_dir, bind, cors_origins, max_page_size):
    """Serve the HTTP JSON API over an index and knowledge base."""
    import uvicorn

    from .service import ApiConfig, create_app

    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise click.ClickException(f"--bind must be addr:port, got {bind!r}")
    config = ApiConfig(
        host=host,
        port=int(port),
        index_path=index_path,
        kb_path=kb_dir,
        max_page_size=max_page_size,
        cors_origins=list(cors_origins),
    )
    app = create_app(config=config)
    uvicorn.run(app, host=config.host, port=config.port)


def _load_kb_or_fail(kb_dir):
    try:
        return kb_mod.load_kb(kb_dir)
    except kb_mod.KBLoadError as exc:
        raise click.ClickException(str(exc))


if __name__ == "__main__":
    main()
