"""Duplicate detection over normalized token sequences and token bags.

Exact (type-1) matches compare the fragment's normalized token sequence
against contiguous runs of a method body; near matches fall back to
multiset overlap between token bags, which tolerates statement
reordering and small edits. Only exact matches are ever rewritten.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import UndefinedSimilarity
from .lexer import Token, TokenKind, token_texts
from .source_model import Fragment, MethodUnit

EXACT = "exact"
NEAR = "near"


@dataclass(frozen=True)
class TokenBag:
    counts: tuple[tuple[str, int], ...]
    total_count: int

    def counter(self) -> Counter[str]:
        return Counter(dict(self.counts))


@dataclass(frozen=True)
class CloneMatch:
    method_id: str
    similarity: float
    kind: str
    match_span: tuple[int, int] | None = None


def normalize_bag(tokens: list[Token]) -> TokenBag:
    """Order-insensitive multiset of token texts; punctuation excluded."""
    counter = Counter(t.text for t in tokens if t.kind != TokenKind.PUNCTUATION)
    items = tuple(sorted(counter.items()))
    return TokenBag(items, sum(counter.values()))


def overlap_similarity(a: TokenBag, b: TokenBag) -> float:
    """|a ∩ b| / max(|a|, |b|) over multisets; symmetric, in [0, 1]."""
    if a.total_count == 0 and b.total_count == 0:
        raise UndefinedSimilarity("both token bags are empty")
    shared = sum((a.counter() & b.counter()).values())
    return shared / max(a.total_count, b.total_count)


def find_subsequence(haystack: tuple[str, ...], needle: tuple[str, ...], start: int = 0) -> int:
    """Index of the first contiguous occurrence of needle, or -1."""
    if not needle or len(needle) > len(haystack) - start:
        return -1
    first = needle[0]
    limit = len(haystack) - len(needle)
    for i in range(start, limit + 1):
        if haystack[i] == first and haystack[i : i + len(needle)] == needle:
            return i
    return -1


def find_duplicates(
    fragment: Fragment, methods: list[MethodUnit], near_threshold: float
) -> list[CloneMatch]:
    """All methods duplicating the fragment, at most one match each.

    Exact matches win over near matches; results are ordered by method
    id for determinism. The method hosting the paste site participates
    like any other, since the pasted copy makes it a duplicate host.
    """
    if not fragment.valid:
        raise ValueError("find_duplicates requires a valid fragment")
    if not 0 < near_threshold <= 1:
        raise ValueError("near-match threshold must be in (0, 1]")
    frag_seq = token_texts(fragment.tokens)
    frag_bag = normalize_bag(fragment.tokens)
    matches = []
    for method in sorted(methods, key=lambda m: m.id):
        body_seq = token_texts(method.body_tokens)
        at = find_subsequence(body_seq, frag_seq)
        if at >= 0:
            span = (
                method.body_tokens[at].line,
                method.body_tokens[at + len(frag_seq) - 1].line,
            )
            matches.append(CloneMatch(method.id, 1.0, EXACT, span))
            continue
        body_bag = normalize_bag(method.body_tokens)
        if frag_bag.total_count == 0 and body_bag.total_count == 0:
            continue
        similarity = overlap_similarity(frag_bag, body_bag)
        if similarity >= near_threshold:
            matches.append(CloneMatch(method.id, similarity, NEAR))
    return matches
