"""Command-line surface: validation, scoring, simulation, lowering, stats,
BRAT import, ontology export, and the HTTP session service."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import corpus, evaluate
from .lower import LoweringError, emit_json, lower as lower_graph
from .ontology import export_tables
from .simulate import FinalizeError, ReplayError, Session, replay
from .validation import lint as lint_graph, validate as validate_graph


@click.group()
def main():
    """Process execution graphs for wet-lab protocols."""


def _load_graph(path: str):
    try:
        return corpus.load_path(path)
    except (corpus.CorpusError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc


@main.command()
@click.argument("peg_file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True, help="emit diagnostics as JSON lines")
def validate(peg_file, as_json):
    """Validate a PEG file; exit 0 iff there are no errors."""
    g = _load_graph(peg_file)
    diagnostics = validate_graph(g)
    for d in diagnostics:
        line = d.to_json() if as_json else f"{d.severity}: {d.code} at {d.locus}: {d.message}"
        click.echo(line, err=d.severity == "error")
    if any(d.severity == "error" for d in diagnostics):
        sys.exit(1)


@main.command()
@click.argument("peg_file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def lint(peg_file, as_json):
    """Connectivity lint: components, unused mentions, score."""
    report = lint_graph(_load_graph(peg_file))
    if as_json:
        click.echo(json.dumps({
            "component_count": report.component_count,
            "isolated_mentions": list(report.isolated_mentions),
            "score": report.score,
        }, sort_keys=True))
    else:
        click.echo(f"components: {report.component_count}")
        click.echo(f"unused mentions: {', '.join(report.isolated_mentions) or '-'}")
        click.echo(f"score: {report.score}")


@main.command()
@click.option("--gold", required=True, type=click.Path(exists=True))
@click.option("--pred", required=True, type=click.Path(exists=True))
@click.option("--decompose", "decomposed", is_flag=True, help="fine-grained metrics")
@click.option("--relations", is_flag=True, help="span-exact per-role scores")
@click.option("--seed", default=0, show_default=True)
@click.option("--restarts", default=4, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def score(gold, pred, decomposed, relations, seed, restarts, as_json):
    """Smatch (and optional decompositions) of a prediction against gold."""
    gold_graph = _load_graph(gold)
    pred_graph = _load_graph(pred)
    payload: dict = {}
    result = evaluate.smatch(gold_graph, pred_graph, restarts=restarts, seed=seed)
    payload["smatch"] = {"precision": result.precision, "recall": result.recall,
                         "f1": result.f1}
    if not as_json:
        click.echo(evaluate.format_smatch(result))
    if decomposed:
        report = evaluate.decompose(gold_graph, pred_graph, restarts=restarts, seed=seed)
        payload["decomposition"] = report.to_dict()
        if not as_json:
            click.echo(evaluate.format_decomposition(report))
    if relations:
        rel = evaluate.relation_prf(gold_graph, pred_graph)
        payload["relations"] = rel.to_dict()
        if not as_json:
            click.echo(evaluate.format_relations(rel))
    if as_json:
        click.echo(json.dumps(payload, sort_keys=True))


@main.command()
@click.argument("doc_file", type=click.Path(exists=True))
@click.option("--script", type=click.Path(exists=True), help="command log to replay")
@click.option("-o", "--output", default="out.peg.json", show_default=True)
def simulate(doc_file, script, output):
    """Run an annotation session over a document; interactive without --script."""
    document = corpus.load_document(Path(doc_file).read_bytes())
    if script:
        try:
            session = replay(document, Path(script).read_text().splitlines())
        except ReplayError as exc:
            raise click.ClickException(str(exc)) from exc
    else:
        session = _repl(document)
    try:
        finalized = session.finalize()
    except FinalizeError as exc:
        for d in exc.diagnostics:
            click.echo(f"error: {d.code} at {d.locus}: {d.message}", err=True)
        raise click.ClickException(str(exc)) from exc
    Path(output).write_bytes(corpus.save(finalized.graph))
    click.echo(f"wrote {output} (lint score {finalized.lint.score})")


def _repl(document) -> Session:
    session = Session(document)
    click.echo(f"document {document.id}: {len(document.mentions)} mentions. "
               "Commands: ground/link/exec/coref/undo/lint/show; 'done' to finish, "
               "'?' for completions.")
    while True:
        try:
            line = input("> ")
        except EOFError:
            break
        if line.strip() == "done":
            break
        if line.endswith("?"):
            for completion in session.autocomplete(line[:-1]):
                click.echo(f"  {completion}")
            continue
        result = session.issue(line)
        for d in result.diagnostics:
            click.echo(f"{d.severity}: {d.message}")
        if result.output:
            click.echo(result.output)
    return session


@main.command("lower")
@click.argument("peg_file", type=click.Path(exists=True))
@click.option("-o", "--output", default="program.json", show_default=True)
@click.option("--strict", is_flag=True, help="exit nonzero if the program has holes")
def lower_cmd(peg_file, output, strict):
    """Lower a validated PEG to an Autoprotocol-style instruction program."""
    g = _load_graph(peg_file)
    try:
        program = lower_graph(g)
    except LoweringError as exc:
        raise click.ClickException(str(exc)) from exc
    Path(output).write_bytes(emit_json(program))
    click.echo(f"wrote {output}: {len(program.instructions)} instructions, "
               f"{len(program.holes)} holes")
    if strict and program.holes:
        for hole in program.holes:
            click.echo(f"hole: {hole.parameter} ({hole.reason}) on {hole.op_node}",
                       err=True)
        sys.exit(2)


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("--json", "as_json", is_flag=True)
def stats(directory, as_json):
    """Corpus statistics over all *.peg.json files under DIRECTORY."""
    paths = sorted(Path(directory).rglob("*.peg.json"))
    if not paths:
        raise click.ClickException(f"no *.peg.json files under {directory}")
    graphs = [_load_graph(p) for p in paths]
    result = corpus.corpus_stats(graphs)
    if as_json:
        click.echo(json.dumps(result, sort_keys=True))
    else:
        click.echo(corpus.format_stats(result))


@main.command("import-brat")
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("-o", "--output", required=True, type=click.Path(file_okay=False))
def import_brat_cmd(directory, output):
    """Import WLP-style BRAT .txt/.ann pairs into document JSON files."""
    try:
        docs = corpus.import_brat(directory)
    except corpus.CorpusError as exc:
        raise click.ClickException(str(exc)) from exc
    out = Path(output)
    out.mkdir(parents=True, exist_ok=True)
    for imported in docs:
        payload = {
            "format_version": corpus.FORMAT_VERSION,
            "document": corpus.document_to_dict(imported.document),
            "nodes": [], "edges": [],
            "imported_relations": [
                {"label": r.label, "role": r.role, "head": r.head, "dep": r.dep}
                for r in imported.relations
            ],
        }
        path = out / f"{imported.document.id}.doc.json"
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        click.echo(f"wrote {path}")
    if not docs:
        raise click.ClickException(f"no .txt/.ann pairs under {directory}")


@main.command("export-ontology")
def export_ontology():
    """Dump the compiled-in ontology tables as JSON."""
    click.echo(json.dumps(export_tables(), sort_keys=True, indent=2))


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False),
              envvar="PEGKIT_CORPUS")
@click.option("--session-dir", type=click.Path(file_okay=False),
              help="directory for append-only session logs")
def serve(port, host, corpus_dir, session_dir):
    """Run the HTTP/JSON annotation session service."""
    import uvicorn

    from .service import create_app

    app = create_app(Path(corpus_dir),
                     Path(session_dir) if session_dir else None)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
