"""Deterministic two-domain synthetic corpora for desk-scale verification.

Sentences are template instantiations: content slots draw from a per-domain
lexicon (disjoint across domains) and the single style slot draws from the
style's word list (shared words plus per-domain words). A sentence's style
is therefore fully determined by its style word, and its domain by its
content and domain-specific style words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .corpus import SOURCE, TARGET, CorpusSplit, SentenceRecord
from .errors import SpecError

_SLOT = re.compile(r"\{(content2?|style)\}")


@dataclass
class SyntheticCorpusSpec:
    """Recipe for one source/target corpus pair.

    ``counts`` maps domain -> split -> style -> sentence count.
    """

    content_lexicons: dict[str, list[str]]
    shared_style_lexicon: dict[str, list[str]]
    domain_style_lexicons: dict[str, dict[str, list[str]]]
    templates: list[str]
    counts: dict[str, dict[str, dict[str, int]]]
    seed: int = 0

    def styles(self) -> list[str]:
        return sorted(self.shared_style_lexicon)

    def style_words(self, domain: str, style: str) -> list[str]:
        return list(self.shared_style_lexicon[style]) + list(
            self.domain_style_lexicons.get(domain, {}).get(style, [])
        )

    def validate(self) -> None:
        if set(self.content_lexicons) != {SOURCE, TARGET}:
            raise SpecError("content lexicons must cover exactly the source and target domains")
        overlap = set(self.content_lexicons[SOURCE]) & set(self.content_lexicons[TARGET])
        if overlap:
            raise SpecError(f"content lexicons overlap across domains: {sorted(overlap)}")
        src_style = {w for ws in self.domain_style_lexicons.get(SOURCE, {}).values() for w in ws}
        tgt_style = {w for ws in self.domain_style_lexicons.get(TARGET, {}).values() for w in ws}
        if src_style & tgt_style:
            raise SpecError(
                f"domain style lexicons overlap across domains: {sorted(src_style & tgt_style)}"
            )
        # Style must be readable off the style word alone.
        seen: dict[str, str] = {}
        for domain in (SOURCE, TARGET):
            for style in self.styles():
                for w in self.style_words(domain, style):
                    if seen.setdefault(w, style) != style:
                        raise SpecError(f"style word {w!r} appears under two styles")
        content = set(self.content_lexicons[SOURCE]) | set(self.content_lexicons[TARGET])
        if content & set(seen):
            raise SpecError(f"style words collide with content words: {sorted(content & set(seen))}")
        for template in self.templates:
            slots = _SLOT.findall(template)
            if slots.count("style") != 1:
                raise SpecError(f"template needs exactly one style slot: {template!r}")
            if "content" not in slots:
                raise SpecError(f"template needs a content slot: {template!r}")
        for domain, per_split in self.counts.items():
            if domain not in (SOURCE, TARGET):
                raise SpecError(f"counts reference unknown domain {domain!r}")
            for split, per_style in per_split.items():
                for style, n in per_style.items():
                    if style not in self.shared_style_lexicon or n < 0:
                        raise SpecError(f"bad count entry {domain}/{split}/{style}={n}")


def _fill(template: str, content: list[str], style_words: list[str], rng) -> str:
    slots = _SLOT.findall(template)
    values = {}
    if "content2" in slots:
        i, j = rng.choice(len(content), size=2, replace=False)
        values["content"], values["content2"] = content[i], content[j]
    else:
        values["content"] = content[rng.integers(0, len(content))]
    values["style"] = style_words[rng.integers(0, len(style_words))]
    return template.format(**values)


def generate_synthetic_corpus(
    spec: SyntheticCorpusSpec,
) -> tuple[dict[str, CorpusSplit], dict[str, CorpusSplit]]:
    """Instantiate the spec; returns (source splits, target splits) by name.

    Sentences are unique within each (domain, style); the split partition is
    disjoint by construction. Fully deterministic under ``spec.seed``.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    out: dict[str, dict[str, list[SentenceRecord]]] = {SOURCE: {}, TARGET: {}}
    for domain in (SOURCE, TARGET):
        per_split = spec.counts.get(domain, {})
        split_names = sorted(per_split)
        for style in spec.styles():
            goal = {s: per_split[s].get(style, 0) for s in split_names}
            total = sum(goal.values())
            if total == 0:
                continue
            content = list(spec.content_lexicons[domain])
            style_words = spec.style_words(domain, style)
            sentences: list[str] = []
            seen: set[str] = set()
            attempts = 0
            while len(sentences) < total:
                attempts += 1
                if attempts > 200 * total:
                    raise SpecError(
                        f"lexicon space too small for {total} unique {domain}/{style} sentences"
                    )
                template = spec.templates[rng.integers(0, len(spec.templates))]
                sent = _fill(template, content, style_words, rng)
                if sent not in seen:
                    seen.add(sent)
                    sentences.append(sent)
            offset = 0
            for split in split_names:
                n = goal[split]
                chunk = sentences[offset : offset + n]
                offset += n
                out[domain].setdefault(split, []).extend(
                    SentenceRecord(tuple(s.split()), style, domain) for s in chunk
                )
    result = {}
    for domain in (SOURCE, TARGET):
        splits = {}
        for split, records in out[domain].items():
            order = rng.permutation(len(records))
            splits[split] = CorpusSplit(tuple(records[i] for i in order), split)
        result[domain] = splits
    return result[SOURCE], result[TARGET]


_TEMPLATES = [
    "the {content} was {style} .",
    "the {content} and the {content2} were {style} .",
    "i found the {content} really {style} .",
    "that {content} was {style} overall .",
    "the {content} seemed {style} to everyone .",
    "honestly the {content} was just {style} .",
    "my {content} was {style} again .",
    "the {content} near the {content2} was {style} .",
    "what a {style} {content} .",
    "such a {style} {content} and {content2} .",
]

_TARGET_CONTENT = [
    "pizza", "pasta", "burger", "soup", "salad", "steak", "sushi", "taco",
    "burrito", "noodles", "ramen", "curry", "sandwich", "waiter", "menu",
    "dessert", "coffee", "tea", "bread", "cheese", "sauce", "grill",
    "buffet", "brunch", "pancake", "waffle", "omelet", "bacon", "salmon",
    "shrimp", "lobster", "oyster", "patio", "bartender", "cocktail",
    "smoothie", "bagel", "donut", "muffin", "brisket",
]

_SOURCE_CONTENT = [
    "movie", "film", "plot", "actor", "actress", "director", "script",
    "scene", "sequel", "trailer", "cast", "dialogue", "ending", "villain",
    "hero", "soundtrack", "screenplay", "thriller", "comedy", "drama",
    "documentary", "animation", "premiere", "theater", "critic",
    "franchise", "remake", "protagonist", "narrator", "editing", "costume",
    "montage", "subtitle", "prequel", "casting", "cameo", "blooper",
    "cliffhanger", "genre", "studio",
]

_SHARED_STYLE = {
    "positive": ["good", "great", "wonderful", "fantastic", "amazing",
                 "excellent", "superb", "pleasant"],
    "negative": ["bad", "terrible", "awful", "horrible", "dreadful",
                 "disappointing", "mediocre", "lousy"],
}

_DOMAIN_STYLE = {
    TARGET: {
        "positive": ["delicious", "tasty", "fresh", "flavorful", "savory", "appetizing"],
        "negative": ["bland", "stale", "greasy", "soggy", "overcooked", "inedible"],
    },
    SOURCE: {
        "positive": ["gripping", "imaginative", "hilarious", "captivating",
                     "suspenseful", "moving"],
        "negative": ["boring", "predictable", "cliched", "tedious",
                     "incoherent", "forgettable"],
    },
}


def sentiment_demo_spec(
    source_train_per_style: int = 1000,
    source_dev_per_style: int = 0,
    target_train_total: int = 400,
    target_dev_total: int = 200,
    target_test_total: int = 200,
    seed: int = 0,
) -> SyntheticCorpusSpec:
    """Restaurant-reviews target helped by a movie-reviews source.

    Target totals are split evenly over the two styles.
    """
    counts = {
        SOURCE: {"train": {s: source_train_per_style for s in _SHARED_STYLE}},
        TARGET: {
            "train": {s: target_train_total // 2 for s in _SHARED_STYLE},
            "dev": {s: target_dev_total // 2 for s in _SHARED_STYLE},
            "test": {s: target_test_total // 2 for s in _SHARED_STYLE},
        },
    }
    if source_dev_per_style:
        counts[SOURCE]["dev"] = {s: source_dev_per_style for s in _SHARED_STYLE}
    return SyntheticCorpusSpec(
        content_lexicons={SOURCE: list(_SOURCE_CONTENT), TARGET: list(_TARGET_CONTENT)},
        shared_style_lexicon={k: list(v) for k, v in _SHARED_STYLE.items()},
        domain_style_lexicons={d: {s: list(w) for s, w in per.items()} for d, per in _DOMAIN_STYLE.items()},
        templates=list(_TEMPLATES),
        counts=counts,
        seed=seed,
    )
