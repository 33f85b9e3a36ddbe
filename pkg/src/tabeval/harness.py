"""Dataset ingestion, LLM clients, pipeline orchestration, and reports.

All paper-style evaluation runs are replayable: the replay client serves
pre-recorded completions keyed by the SHA-256 of the prompt bytes, so two
runs over the same dataset and store produce byte-identical reports.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import requests

from . import pot
from .errors import (
    KeyMismatchError,
    MalformedResponseError,
    ReplayMissError,
    SchemaError,
    TabevalError,
    TransportError,
)
from .metrics import (
    MetricConfig,
    pearson,
    relaxed_accuracy,
    rms_with_transposition,
    rnss_tables,
    spearman,
)
from .prompting import (
    PromptMode,
    PromptRequest,
    Sample,
    SampleSet,
    build_prompt,
    extract_cot_answer,
    self_consistency_vote,
)
from .tables import parse_table

DEFAULT_TEMPERATURE = 0.4
DEFAULT_SAMPLES_PER_MODE = 10

ENDPOINT_ENV_VAR = "TABEVAL_ENDPOINT"


@dataclass(frozen=True)
class QaExample:
    id: str
    table: str
    question: str
    answer: str


@dataclass(frozen=True)
class TablePairExample:
    id: str
    prediction: str
    target: str


@dataclass(frozen=True)
class ClientConfig:
    """Sampling configuration; ``parallelism`` never affects report content."""

    temperature: float = DEFAULT_TEMPERATURE
    samples_per_mode: int = DEFAULT_SAMPLES_PER_MODE
    parallelism: int = 1

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.samples_per_mode < 1:
            raise ValueError("samples_per_mode must be >= 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")


def prompt_digest(prompt: str) -> str:
    """Lowercase hex SHA-256 of the prompt's UTF-8 bytes."""
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class ReplayClient:
    """Serves pre-recorded completions from a JSONL store.

    Each store line is ``{"prompt_sha256": hex, "completions": [...]}``;
    repeated digests append in file order. The store is read once and then
    immutable, so concurrent generate() calls are safe.
    """

    kind = "replay"

    def __init__(self, path: str):
        self._store: dict[str, list[str]] = {}
        with open(path, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    digest = record["prompt_sha256"]
                    completions = record["completions"]
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise SchemaError(lineno, f"bad replay record: {exc}") from exc
                if not isinstance(completions, list) \
                        or not all(isinstance(x, str) for x in completions):
                    raise SchemaError(lineno, "completions must be a list of strings")
                self._store.setdefault(digest, []).extend(completions)

    def generate(self, prompt: str, n: int, temperature: float) -> list[str]:
        if n == 0:
            return []
        digest = prompt_digest(prompt)
        stored = self._store.get(digest)
        if stored is None:
            raise ReplayMissError(digest)
        if len(stored) < n:
            raise ReplayMissError(
                digest, f"only {len(stored)} completions stored, {n} requested"
            )
        return stored[:n]


class RemoteClient:
    """Posts ``{prompt, n, temperature}`` to an HTTP endpoint."""

    kind = "remote"

    def __init__(self, endpoint: str | None = None):
        endpoint = endpoint or os.environ.get(ENDPOINT_ENV_VAR)
        if not endpoint:
            raise TabevalError(
                f"no remote endpoint configured (set {ENDPOINT_ENV_VAR} or pass a URL)"
            )
        self.endpoint = endpoint

    def generate(self, prompt: str, n: int, temperature: float) -> list[str]:
        if n == 0:
            return []
        try:
            response = requests.post(
                self.endpoint,
                json={"prompt": prompt, "n": n, "temperature": temperature},
                timeout=120,
            )
            response.raise_for_status()
        except requests.RequestException as exc:
            raise TransportError(str(exc)) from exc
        try:
            completions = response.json()["completions"]
        except (ValueError, KeyError) as exc:
            raise MalformedResponseError(str(exc)) from exc
        if not isinstance(completions, list) \
                or not all(isinstance(x, str) for x in completions):
            raise MalformedResponseError("completions must be a list of strings")
        return completions[:n]


def make_client(spec: str):
    """Build a client from a ``replay:PATH`` or ``remote:URL`` descriptor."""
    kind, _, rest = spec.partition(":")
    if kind == "replay":
        return ReplayClient(rest)
    if kind == "remote":
        return RemoteClient(rest or None)
    raise TabevalError(f"unknown client kind {kind!r} (want replay: or remote:)")


def _load_jsonl(path: str, required: tuple[str, ...], factory):
    examples = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(lineno, f"invalid JSON: {exc}") from exc
            if not isinstance(record, dict):
                raise SchemaError(lineno, "expected a JSON object")
            missing = [key for key in required if key not in record]
            if missing:
                raise SchemaError(lineno, f"missing fields {missing}")
            examples.append(factory(record, lineno))
    return examples


def load_qa_dataset(path: str) -> list[QaExample]:
    def factory(record, lineno):
        try:
            parse_table(record["table"])
        except TabevalError as exc:
            raise SchemaError(lineno, f"unparseable table: {exc}") from exc
        return QaExample(
            id=str(record["id"]),
            table=record["table"],
            question=record["question"],
            answer=record["answer"],
        )

    return _load_jsonl(path, ("id", "table", "question", "answer"), factory)


def load_table_pairs(path: str) -> list[TablePairExample]:
    def factory(record, lineno):
        for side in ("prediction", "target"):
            try:
                parse_table(record[side])
            except TabevalError as exc:
                raise SchemaError(lineno, f"unparseable {side}: {exc}") from exc
        return TablePairExample(
            id=str(record["id"]),
            prediction=record["prediction"],
            target=record["target"],
        )

    return _load_jsonl(path, ("id", "prediction", "target"), factory)


@dataclass
class Report:
    config: dict
    examples: list[dict] = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "config": self.config,
            "examples": self.examples,
            "aggregates": self.aggregates,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _answer_sample(mode: PromptMode, completion: str) -> Sample:
    if mode is PromptMode.COT:
        answer = extract_cot_answer(completion)
    else:
        try:
            answer = pot.run(completion).rendered
        except pot.PotError:
            answer = None
    return Sample(raw=completion, mode=mode, answer=answer)


def _run_one_qa(example: QaExample, client, cfg: ClientConfig,
                modes: list[PromptMode]) -> dict:
    record = {"id": example.id, "gold": example.answer}
    try:
        table = parse_table(example.table)
        samples = []
        for mode in modes:
            prompt = build_prompt(PromptRequest(mode, table, example.question))
            completions = client.generate(
                prompt, cfg.samples_per_mode, cfg.temperature
            )
            samples.extend(_answer_sample(mode, c) for c in completions)
        voted = self_consistency_vote(SampleSet(tuple(samples)))
    except (TabevalError, ValueError) as exc:
        record.update(prediction=None, correct=False, error=str(exc))
        return record
    correct = voted is not None and relaxed_accuracy(voted, example.answer)
    record.update(prediction=voted, correct=correct)
    return record


def run_qa_pipeline(
    dataset: list[QaExample],
    client,
    cfg: ClientConfig,
    modes: list[PromptMode],
    strict: bool = False,
) -> Report:
    """Prompt, sample, vote, and score every example; aggregate accuracy.

    Client failures mark the example errored and incorrect; with ``strict``
    they abort the run instead. Examples fan out over ``cfg.parallelism``
    workers but the report always follows dataset order.
    """
    modes = sorted(set(modes), key=lambda m: m.value)
    report = Report(config={
        "client": getattr(client, "kind", "unknown"),
        "modes": [m.value for m in modes],
        "samples_per_mode": cfg.samples_per_mode,
        "temperature": cfg.temperature,
    })
    if cfg.parallelism == 1 or len(dataset) <= 1:
        records = [_run_one_qa(ex, client, cfg, modes) for ex in dataset]
    else:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            records = list(
                pool.map(lambda ex: _run_one_qa(ex, client, cfg, modes), dataset)
            )
    if strict:
        for record in records:
            if "error" in record:
                raise TabevalError(
                    f"example {record['id']} failed: {record['error']}"
                )
    report.examples = records
    total = len(records)
    correct = sum(1 for r in records if r["correct"])
    report.aggregates = {
        "total": total,
        "correct": correct,
        "errored": sum(1 for r in records if "error" in r),
        "accuracy": (correct / total) if total else None,
    }
    return report


def run_table_eval(
    dataset: list[TablePairExample], cfg: MetricConfig | None = None
) -> Report:
    """Score every prediction/target pair with RNSS and transposition-aware RMS.

    Aggregates are arithmetic means reported as percentages with 2 decimals.
    """
    cfg = cfg or MetricConfig()
    report = Report(config={"tau": cfg.tau, "theta": cfg.theta})
    sums = {"rnss": 0.0, "rms_precision": 0.0, "rms_recall": 0.0, "rms_f1": 0.0}
    for example in dataset:
        pred = parse_table(example.prediction)
        target = parse_table(example.target)
        score = rms_with_transposition(pred, target, cfg)
        number_score = rnss_tables(pred, target)
        record = {
            "id": example.id,
            "rnss": number_score,
            "rms_precision": score.precision,
            "rms_recall": score.recall,
            "rms_f1": score.f1,
        }
        report.examples.append(record)
        for key in sums:
            sums[key] += record[key]
    n = len(dataset)
    report.aggregates = {
        key: round(100.0 * value / n, 2) if n else None
        for key, value in sums.items()
    }
    report.aggregates["total"] = n
    return report


def _load_scores(path: str) -> dict[str, float]:
    scores = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                key = str(record["id"])
                value = float(record["score"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise SchemaError(lineno, f"bad score record: {exc}") from exc
            scores[key] = value
    return scores


def run_correlation(metric_path: str, human_path: str) -> tuple[float, float]:
    """Join two id-keyed score files and return (pearson, spearman)."""
    metric_scores = _load_scores(metric_path)
    human_scores = _load_scores(human_path)
    if metric_scores.keys() != human_scores.keys():
        raise KeyMismatchError(
            metric_scores.keys() - human_scores.keys(),
            human_scores.keys() - metric_scores.keys(),
        )
    ids = sorted(metric_scores)
    x = [metric_scores[i] for i in ids]
    y = [human_scores[i] for i in ids]
    return pearson(x, y), spearman(x, y)
