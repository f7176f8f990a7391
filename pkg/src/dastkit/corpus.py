"""Corpus handling: records, vocabulary, file formats, and balanced batching.

File formats supported by :func:`load_corpus`:

* ``labeled-text``: one tokenized sentence per line, UTF-8. The style comes
  from the file name, either ``<style>.<split>.txt`` or the suffix
  convention ``<name>.<split>.<style>`` (e.g. ``sentiment.train.0``).
* ``jsonl``: one object per line with fields ``text`` (string), ``style``
  (string or null) and ``domain`` (string).
* ``parallel-tsv``: ``informal<TAB>formal`` per line; the loader emits the
  two records of pair *i* at positions ``2i`` and ``2i + 1``.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    EmptyCorpusError,
    EmptySentenceError,
    ParseError,
    UnknownStyleError,
)

SOURCE = "source"
TARGET = "target"
DOMAINS = (SOURCE, TARGET)

#: Reserved label for source records whose style is not annotated.
UNKNOWN_STYLE = "<unknown>"

PAD, BOS, EOS, UNK = "<pad>", "<bos>", "<eos>", "<unk>"
SPECIALS = (PAD, BOS, EOS, UNK)
PAD_ID, BOS_ID, EOS_ID, UNK_ID = 0, 1, 2, 3

SPLITS = ("train", "dev", "test")

INFORMAL, FORMAL = "informal", "formal"


@dataclass(frozen=True)
class SentenceRecord:
    """One tokenized sentence with its style label and domain tag."""

    tokens: tuple[str, ...]
    style: str
    domain: str

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.tokens:
            raise EmptySentenceError("record has no tokens")
        for tok in self.tokens:
            if not tok or any(c.isspace() for c in tok):
                raise InvalidToken(tok)
        if self.domain not in DOMAINS:
            raise ConfigError(f"domain must be one of {DOMAINS}, got {self.domain!r}")
        if self.style == UNKNOWN_STYLE and self.domain != SOURCE:
            raise UnknownStyleError("unknown style is only permitted on source records")

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


class InvalidToken(ParseError):
    def __init__(self, token):
        super().__init__(f"token {token!r} is empty or contains whitespace")


def tokenize(text: str) -> list[str]:
    """Lowercase and whitespace-split; corpora are assumed pre-tokenized."""
    tokens = text.lower().split()
    if not tokens:
        raise EmptySentenceError("empty or whitespace-only sentence")
    return tokens


@dataclass
class CorpusSplit:
    """All records of one split within one domain."""

    records: tuple[SentenceRecord, ...]
    split_name: str

    def __post_init__(self):
        self.records = tuple(self.records)
        if self.split_name not in SPLITS:
            raise ConfigError(f"split must be one of {SPLITS}, got {self.split_name!r}")
        domains = {r.domain for r in self.records}
        if len(domains) > 1:
            raise ConfigError(f"records mix domains {sorted(domains)}")

    @property
    def size(self) -> int:
        return len(self.records)

    @property
    def domain(self) -> str:
        if not self.records:
            raise EmptyCorpusError("empty split has no domain")
        return self.records[0].domain

    def styles(self) -> list[str]:
        """Sorted task styles present (the reserved unknown label excluded)."""
        return sorted({r.style for r in self.records} - {UNKNOWN_STYLE})

    def by_style(self, style: str) -> "CorpusSplit":
        return CorpusSplit(tuple(r for r in self.records if r.style == style), self.split_name)


def style_index(*splits: CorpusSplit) -> dict[str, int]:
    """Stable style-name -> id mapping over the given splits (sorted names)."""
    names = sorted({r.style for s in splits for r in s.records} - {UNKNOWN_STYLE})
    return {name: i for i, name in enumerate(names)}


class Vocabulary:
    """Token <-> id bijection with four reserved specials in ids 0..3."""

    def __init__(self, tokens: list[str], min_frequency: int, max_size: int):
        if list(tokens[:4]) != list(SPECIALS):
            raise ConfigError("vocabulary must start with the reserved specials")
        self.id_to_token: list[str] = list(tokens)
        self.token_to_id: dict[str, int] = {t: i for i, t in enumerate(tokens)}
        if len(self.token_to_id) != len(self.id_to_token):
            raise ConfigError("duplicate tokens in vocabulary")
        self.min_frequency = min_frequency
        self.max_size = max_size

    def __len__(self) -> int:
        return len(self.id_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_id

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Vocabulary)
            and self.id_to_token == other.id_to_token
            and self.min_frequency == other.min_frequency
            and self.max_size == other.max_size
        )

    def id_of(self, token: str) -> int:
        return self.token_to_id.get(token, UNK_ID)

    def token_of(self, idx: int) -> str:
        return self.id_to_token[idx]

    def content_hash(self) -> str:
        payload = "\n".join(self.id_to_token).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()

    def save(self, path) -> Path:
        path = Path(path)
        header = f"# dastkit-vocab min_frequency={self.min_frequency} max_size={self.max_size}\n"
        path.write_text(header + "\n".join(self.id_to_token) + "\n", encoding="utf-8")
        return path

    @classmethod
    def load(cls, path) -> "Vocabulary":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("# dastkit-vocab"):
            raise ParseError("not a vocabulary file", path=path, line_no=1)
        meta = dict(kv.split("=", 1) for kv in lines[0].split()[2:])
        return cls(lines[1:], int(meta["min_frequency"]), int(meta["max_size"]))


def build_vocabulary(
    corpora: list[CorpusSplit], min_frequency: int = 5, max_size: int = 20000
) -> Vocabulary:
    """One vocabulary shared across domains and styles.

    Non-special entries are sorted by descending frequency with a
    lexicographic tie-break, then truncated to ``max_size`` (specials
    included in the cap).
    """
    if not corpora or not any(s.records for s in corpora):
        raise EmptyCorpusError("cannot build a vocabulary from empty corpora")
    if min_frequency < 1:
        raise ConfigError("min_frequency must be >= 1")
    counts: Counter[str] = Counter()
    for split in corpora:
        for record in split.records:
            counts.update(record.tokens)
    kept = sorted(
        (t for t, c in counts.items() if c >= min_frequency and t not in SPECIALS),
        key=lambda t: (-counts[t], t),
    )
    tokens = list(SPECIALS) + kept[: max(0, max_size - len(SPECIALS))]
    return Vocabulary(tokens, min_frequency, max_size)


def encode_sentence(vocab: Vocabulary, tokens, max_len: int = 20) -> list[int]:
    """BOS + token ids + EOS, truncated to at most ``max_len`` inner tokens."""
    tokens = list(tokens)
    if not tokens:
        raise EmptySentenceError("cannot encode an empty token list")
    inner = [vocab.id_of(t) for t in tokens[:max_len]]
    return [BOS_ID] + inner + [EOS_ID]


def decode_ids(vocab: Vocabulary, ids) -> list[str]:
    """Inverse of :func:`encode_sentence`: strips framing, stops at EOS."""
    out = []
    for idx in ids:
        idx = int(idx)
        if idx == EOS_ID:
            break
        if idx in (BOS_ID, PAD_ID):
            continue
        out.append(vocab.token_of(idx))
    return out


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def _style_from_filename(path: Path) -> tuple[str, str]:
    parts = path.name.split(".")
    if len(parts) >= 3 and parts[-1] == "txt":
        return parts[-3], parts[-2]  # <style>.<split>.txt
    if len(parts) >= 3:
        return parts[-1], parts[-2]  # <name>.<split>.<style>
    raise ParseError("cannot infer style/split from file name", path=path)


def load_corpus(
    path,
    fmt: str,
    domain_tag: str,
    split_name: str | None = None,
    styles: set[str] | None = None,
) -> CorpusSplit:
    """Read one corpus file into a :class:`CorpusSplit`.

    ``styles``, when given, is the set of legal task labels; anything else
    raises :class:`UnknownStyleError` (the reserved unknown label is always
    legal on source records).
    """
    path = Path(path)
    if not path.exists():
        raise ParseError("file does not exist", path=path)
    if domain_tag not in DOMAINS:
        raise ConfigError(f"domain must be one of {DOMAINS}, got {domain_tag!r}")

    def check_style(style, line_no):
        if style == UNKNOWN_STYLE:
            return
        if styles is not None and style not in styles:
            raise UnknownStyleError(f"{path}:{line_no}: unknown style label {style!r}")

    records: list[SentenceRecord] = []
    if fmt == "labeled-text":
        style, file_split = _style_from_filename(path)
        split_name = split_name or file_split
        check_style(style, 0)
        for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            try:
                records.append(SentenceRecord(tuple(tokenize(line)), style, domain_tag))
            except EmptySentenceError as exc:
                raise ParseError(str(exc), path=path, line_no=i) from exc
    elif fmt == "jsonl":
        split_name = split_name or "train"
        for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", path=path, line_no=i) from exc
            if not isinstance(obj, dict) or "text" not in obj:
                raise ParseError("object must carry a 'text' field", path=path, line_no=i)
            style = obj.get("style")
            style = UNKNOWN_STYLE if style is None else str(style)
            domain = obj.get("domain", domain_tag)
            if domain != domain_tag:
                raise ParseError(
                    f"record domain {domain!r} does not match {domain_tag!r}",
                    path=path,
                    line_no=i,
                )
            check_style(style, i)
            try:
                records.append(SentenceRecord(tuple(tokenize(obj["text"])), style, domain_tag))
            except EmptySentenceError as exc:
                raise ParseError(str(exc), path=path, line_no=i) from exc
    elif fmt == "parallel-tsv":
        split_name = split_name or "train"
        for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            sides = line.split("\t")
            if len(sides) != 2:
                raise ParseError("expected exactly one TAB per line", path=path, line_no=i)
            try:
                records.append(SentenceRecord(tuple(tokenize(sides[0])), INFORMAL, domain_tag))
                records.append(SentenceRecord(tuple(tokenize(sides[1])), FORMAL, domain_tag))
            except EmptySentenceError as exc:
                raise ParseError(str(exc), path=path, line_no=i) from exc
    else:
        raise ConfigError(f"unknown corpus format {fmt!r}")
    return CorpusSplit(tuple(records), split_name)


def parallel_pairs(split: CorpusSplit) -> list[tuple[SentenceRecord, SentenceRecord]]:
    """Rebuild the (informal, formal) pairs of a parallel-tsv split."""
    if split.size % 2:
        raise ConfigError("parallel split must hold an even number of records")
    pairs = []
    for i in range(0, split.size, 2):
        a, b = split.records[i], split.records[i + 1]
        if a.style != INFORMAL or b.style != FORMAL:
            raise ConfigError(f"pair {i // 2} is not an informal/formal pair")
        pairs.append((a, b))
    return pairs


def save_corpus(split: CorpusSplit, out_dir, fmt: str) -> list[Path]:
    """Write a split back to disk; returns the files written.

    labeled-text groups records by style into ``<style>.<split>.txt`` files
    (within-style order preserved); jsonl keeps the original record order.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "jsonl":
        path = out_dir / f"{split.split_name}.jsonl"
        with path.open("w", encoding="utf-8") as fh:
            for r in split.records:
                style = None if r.style == UNKNOWN_STYLE else r.style
                fh.write(json.dumps({"text": r.text, "style": style, "domain": r.domain}) + "\n")
        written.append(path)
    elif fmt == "labeled-text":
        for style in sorted({r.style for r in split.records}):
            if style == UNKNOWN_STYLE:
                raise ConfigError("labeled-text cannot carry the unknown style label")
            path = out_dir / f"{style}.{split.split_name}.txt"
            with path.open("w", encoding="utf-8") as fh:
                for r in split.records:
                    if r.style == style:
                        fh.write(r.text + "\n")
            written.append(path)
    else:
        raise ConfigError(f"unknown corpus format {fmt!r}")
    return written


def load_labeled_dir(
    directory, domain_tag: str, split_name: str, styles: set[str] | None = None
) -> CorpusSplit:
    """Load every ``*.<split>.txt`` file in a directory, styles in sorted order."""
    directory = Path(directory)
    paths = sorted(directory.glob(f"*.{split_name}.txt"))
    if not paths:
        raise ParseError(f"no *.{split_name}.txt files found", path=directory)
    records: list[SentenceRecord] = []
    for path in paths:
        records.extend(load_corpus(path, "labeled-text", domain_tag, split_name, styles).records)
    return CorpusSplit(tuple(records), split_name)


# ---------------------------------------------------------------------------
# Batching
# ---------------------------------------------------------------------------


@dataclass
class MixedBatch:
    """Equal-sized halves of source and target records."""

    source_records: tuple[SentenceRecord, ...]
    target_records: tuple[SentenceRecord, ...]
    batch_index: int

    def __post_init__(self):
        self.source_records = tuple(self.source_records)
        self.target_records = tuple(self.target_records)
        if len(self.source_records) != len(self.target_records):
            raise ConfigError("mixed batch halves must have equal counts")


def make_balanced_batches(
    source: CorpusSplit, target: CorpusSplit, batch_size: int, seed: int
) -> list[MixedBatch]:
    """One balanced pass: ``batch_size/2`` records per domain per batch.

    The larger corpus is covered once via a seeded permutation (wrapped to
    fill the final batch); the smaller one is resampled with replacement.
    The whole schedule is a deterministic function of ``seed``.
    """
    if batch_size % 2:
        raise ConfigError("batch_size must be even for balanced batching")
    if not source.records or not target.records:
        raise EmptyCorpusError("balanced batching needs non-empty source and target")
    half = batch_size // 2
    rng = np.random.default_rng(seed)

    sides = {"source": source.records, "target": target.records}
    big_name = "source" if len(source.records) >= len(target.records) else "target"
    small_name = "target" if big_name == "source" else "source"
    big, small = sides[big_name], sides[small_name]

    order = rng.permutation(len(big))
    n_batches = -(-len(big) // half)
    pad = n_batches * half - len(big)
    if pad:
        order = np.concatenate([order, order[:pad]])

    batches = []
    for b in range(n_batches):
        big_idx = order[b * half : (b + 1) * half]
        small_idx = rng.integers(0, len(small), size=half)
        halves = {
            big_name: tuple(big[i] for i in big_idx),
            small_name: tuple(small[i] for i in small_idx),
        }
        batches.append(MixedBatch(halves["source"], halves["target"], b))
    return batches


def make_batches(split: CorpusSplit, batch_size: int, seed: int) -> list[tuple[SentenceRecord, ...]]:
    """Single-domain pass: seeded shuffle, final batch wrapped to full size."""
    if not split.records:
        raise EmptyCorpusError("cannot batch an empty split")
    rng = np.random.default_rng(seed)
    order = rng.permutation(split.size)
    n_batches = -(-split.size // batch_size)
    pad = n_batches * batch_size - split.size
    if pad:
        order = np.concatenate([order, order[:pad]])
    return [
        tuple(split.records[i] for i in order[b * batch_size : (b + 1) * batch_size])
        for b in range(n_batches)
    ]
