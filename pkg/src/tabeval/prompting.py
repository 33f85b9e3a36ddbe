"""One-shot prompt construction, CoT answer extraction, and majority voting."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from .metrics import answer_vote_key
from .tables import Table


class PromptMode(enum.Enum):
    COT = "cot"
    POT = "pot"


@dataclass(frozen=True)
class PromptRequest:
    mode: PromptMode
    table: Table
    question: str
    title: str | None = None

    def __post_init__(self):
        if not self.question.strip():
            raise ValueError("question must be non-empty")


@dataclass(frozen=True)
class Sample:
    """One model completion with its extracted and normalized answer."""

    raw: str
    mode: PromptMode
    answer: str | None

    @property
    def vote_key(self) -> str | None:
        return answer_vote_key(self.answer) if self.answer is not None else None


@dataclass(frozen=True)
class SampleSet:
    samples: tuple[Sample, ...] = field(default_factory=tuple)


_ANSWER_MARKER = re.compile(r"the answer is\b", re.IGNORECASE)


def load_exemplar(mode: PromptMode) -> str:
    name = "cot_exemplar.txt" if mode is PromptMode.COT else "pot_exemplar.txt"
    return (
        resources.files("tabeval.assets").joinpath(name).read_text(encoding="utf-8")
    ).rstrip("\n")


def format_table_for_prompt(t: Table) -> str:
    """Render the header row as "Header: ..." and data rows as "Row i: ..."."""
    lines = ["Header: " + " | ".join(t.cells[0])]
    for i, row in enumerate(t.cells[1:], start=1):
        lines.append(f"Row {i}: " + " | ".join(row))
    return "\n".join(lines)


def build_prompt(req: PromptRequest, exemplars: Sequence[str] | None = None) -> str:
    """Assemble the full prompt: exemplar(s), target table, question, cue.

    ``exemplars`` overrides the built-in one-shot exemplar; pass an empty
    sequence for zero-shot prompting.
    """
    if exemplars is None:
        exemplars = [load_exemplar(req.mode)]
    parts = list(exemplars)
    table_text = format_table_for_prompt(req.table)
    if req.title is not None:
        table_text = f"Title: {req.title}\n{table_text}"
    parts.append(table_text)
    cue = "A:" if req.mode is PromptMode.COT else "#Python"
    parts.append(f"Q: {req.question}\n{cue}")
    return "\n\n".join(parts)


def extract_cot_answer(completion: str) -> str | None:
    """Pull the final "The answer is ..." statement out of a completion.

    The text after the last marker (which may be wrapped onto the next line)
    is read up to the sentence-ending period or end of line. Returns None
    when no marker exists, signalling a discarded sample.
    """
    matches = list(_ANSWER_MARKER.finditer(completion))
    if not matches:
        return None
    tail = completion[matches[-1].end():].lstrip()
    out = []
    for i, ch in enumerate(tail):
        if ch == "\n":
            break
        if ch == "." and (i + 1 == len(tail) or tail[i + 1].isspace()):
            break
        out.append(ch)
    return "".join(out).strip()


def self_consistency_vote(sample_set: SampleSet) -> str | None:
    """Majority vote over normalized answers; returns the winning raw answer.

    Samples without an answer abstain. Ties break toward the group that
    appeared first; the returned answer is the earliest raw answer of the
    winning group. None when every sample abstained.
    """
    groups: dict[str, list[int]] = {}
    for idx, sample in enumerate(sample_set.samples):
        key = sample.vote_key
        if key is None:
            continue
        groups.setdefault(key, []).append(idx)
    if not groups:
        return None
    best = max(groups.values(), key=lambda idxs: (len(idxs), -idxs[0]))
    return sample_set.samples[best[0]].answer
