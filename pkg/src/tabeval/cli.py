"""Command-line interface.

Exit codes: 0 on success, 2 on input error. ``pot run`` exits 1 when the
program fails to produce an answer.
"""

from __future__ import annotations

import json
import sys

import click

from . import pot as pot_mod
from .errors import TabevalError
from .harness import (
    ClientConfig,
    load_qa_dataset,
    load_table_pairs,
    make_client,
    run_correlation,
    run_qa_pipeline,
    run_table_eval,
)
from .metrics import (
    MetricConfig,
    relaxed_accuracy,
    rms_with_transposition,
    rnss_tables,
)
from .prompting import PromptMode, PromptRequest, build_prompt
from .synth import sensitivity_report
from .tables import parse_table


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _read_table(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_table(handle.read())
    except (OSError, TabevalError) as exc:
        _fail(f"{path}: {exc}")


def _echo_json(payload):
    click.echo(json.dumps(payload, sort_keys=True, separators=(",", ":")))


@click.group()
def main():
    """Table similarity metrics and a chart-QA reasoning harness."""


@main.command()
@click.option("--pred", required=True, type=click.Path())
@click.option("--gold", required=True, type=click.Path())
@click.option("--tau", default=0.5, show_default=True)
@click.option("--theta", default=0.5, show_default=True)
def rms(pred, gold, tau, theta):
    """RMS precision/recall/F1 between two table files."""
    score = rms_with_transposition(
        _read_table(pred), _read_table(gold), _metric_config(tau, theta)
    )
    _echo_json({
        "precision": score.precision,
        "recall": score.recall,
        "f1": score.f1,
    })


@main.command()
@click.option("--pred", required=True, type=click.Path())
@click.option("--gold", required=True, type=click.Path())
def rnss(pred, gold):
    """RNSS between the number sets of two table files."""
    _echo_json({"rnss": rnss_tables(_read_table(pred), _read_table(gold))})


@main.command()
@click.option("--pred", required=True, type=click.Path())
@click.option("--gold", required=True, type=click.Path())
@click.option("--tau", default=0.5, show_default=True)
@click.option("--theta", default=0.5, show_default=True)
def score(pred, gold, tau, theta):
    """All four scores (RNSS + RMS triple) in one call."""
    p, g = _read_table(pred), _read_table(gold)
    triple = rms_with_transposition(p, g, _metric_config(tau, theta))
    _echo_json({
        "rnss": rnss_tables(p, g),
        "rms_precision": triple.precision,
        "rms_recall": triple.recall,
        "rms_f1": triple.f1,
    })


@main.command()
@click.option("--pred", "pred_answer", required=True)
@click.option("--gold", "gold_answer", required=True)
def relaxed(pred_answer, gold_answer):
    """Relaxed QA accuracy (exact match with 5% numeric tolerance)."""
    _echo_json({"correct": relaxed_accuracy(pred_answer, gold_answer)})


@main.command("table-eval")
@click.option("--dataset", required=True, type=click.Path())
@click.option("--tau", default=0.5, show_default=True)
@click.option("--theta", default=0.5, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def table_eval(dataset, tau, theta, out):
    """Score a JSONL dataset of prediction/target table pairs."""
    try:
        pairs = load_table_pairs(dataset)
        report = run_table_eval(pairs, _metric_config(tau, theta))
    except (OSError, TabevalError) as exc:
        _fail(str(exc))
    _write_report(report, out)


@main.command()
@click.option("--dataset", required=True, type=click.Path())
@click.option("--client", "client_spec", required=True,
              help="replay:FILE or remote:URL")
@click.option("--modes", default="cot,pot", show_default=True)
@click.option("--samples", default=10, show_default=True)
@click.option("--temperature", default=0.4, show_default=True)
@click.option("--parallelism", default=1, show_default=True)
@click.option("--strict", is_flag=True,
              help="Abort on client errors instead of scoring them as wrong.")
@click.option("--out", type=click.Path(), default=None)
def qa(dataset, client_spec, modes, samples, temperature, parallelism, strict, out):
    """Run the prompt/sample/vote/score pipeline over a QA dataset."""
    try:
        mode_list = [PromptMode(m.strip()) for m in modes.split(",") if m.strip()]
    except ValueError:
        _fail(f"unknown mode in {modes!r} (want cot,pot)")
    try:
        examples = load_qa_dataset(dataset)
        client = make_client(client_spec)
        cfg = ClientConfig(
            temperature=temperature,
            samples_per_mode=samples,
            parallelism=parallelism,
        )
        report = run_qa_pipeline(examples, client, cfg, mode_list, strict=strict)
    except (OSError, TabevalError, ValueError) as exc:
        _fail(str(exc))
    _write_report(report, out)


@main.group()
def prompt():
    """Prompt construction utilities."""


@prompt.command("build")
@click.option("--mode", type=click.Choice(["cot", "pot"]), required=True)
@click.option("--table", "table_path", required=True, type=click.Path())
@click.option("--question", required=True)
@click.option("--title", default=None)
def prompt_build(mode, table_path, question, title):
    """Print the full one-shot prompt for a table file and question."""
    try:
        request = PromptRequest(
            PromptMode(mode), _read_table(table_path), question, title
        )
        click.echo(build_prompt(request))
    except ValueError as exc:
        _fail(str(exc))


@main.group("pot")
def pot_group():
    """Program-of-thought interpreter."""


@pot_group.command("run")
@click.argument("source", type=click.Path())
def pot_run(source):
    """Execute a PoT program file and print the rendered answer."""
    try:
        with open(source, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        _fail(str(exc))
    try:
        click.echo(pot_mod.run(text).rendered)
    except pot_mod.PotError as exc:
        click.echo(f"ERROR: {exc.kind}: {exc}")
        sys.exit(1)


@main.command()
@click.option("--metric", "metric_path", required=True, type=click.Path())
@click.option("--human", "human_path", required=True, type=click.Path())
def corr(metric_path, human_path):
    """Pearson and Spearman correlation between two id-keyed score files."""
    try:
        r, rho = run_correlation(metric_path, human_path)
    except (OSError, TabevalError) as exc:
        _fail(str(exc))
    _echo_json({"pearson": r, "spearman": rho})


@main.group()
def synth():
    """Synthetic tables and metric sensitivity."""


@synth.command("sensitivity")
@click.option("--seed", default=0, show_default=True)
@click.option("--trials", default=20, show_default=True)
def synth_sensitivity(seed, trials):
    """Mean metric scores per perturbation kind, as JSON."""
    try:
        rows = sensitivity_report(seed, trials)
    except TabevalError as exc:
        _fail(str(exc))
    _echo_json(rows)


def _metric_config(tau, theta):
    try:
        return MetricConfig(tau=tau, theta=theta)
    except ValueError as exc:
        _fail(str(exc))


def _write_report(report, out):
    text = report.to_json()
    if out:
        try:
            with open(out, "w", encoding="utf-8") as handle:
                handle.write(text + "\n")
        except OSError as exc:
            _fail(str(exc))
    click.echo(text)


if __name__ == "__main__":
    main()
