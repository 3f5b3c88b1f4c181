"""Metric families, per-project distributions, and percentile thresholds.

Four families are exposed: keyword counts, class connectivity
(coupling), nesting area (complexity), and size. Every family comes in
a total and a per-line density flavor; density denominators are always
the scope's line count. Thresholds are nearest-rank percentiles over
the per-method samples of the project, so a threshold is always a value
some real method attains.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import EmptyDistribution, EmptyScope, InvalidSensitivity, MissingContext
from .lexer import Token, TokenKind
from .source_model import ClassContext, Fragment, MethodUnit, nesting_profile, scan_declarations

# The configurable keyword catalogue: 31 statement/type/flow keywords,
# visibility modifiers deliberately excluded.
CONFIGURABLE_KEYWORDS = (
    "continue", "for", "new", "switch", "assert", "synchronized", "boolean",
    "do", "if", "this", "break", "double", "throw", "byte", "else", "case",
    "instanceof", "return", "transient", "catch", "int", "short", "try",
    "char", "final", "finally", "long", "float", "super", "while", "strictfp",
)

KEYWORD_CATALOGUE = frozenset(CONFIGURABLE_KEYWORDS)

CATEGORIES = ("keyword", "coupling", "complexity", "size")


class Submetric(str, Enum):
    """Stable submetric identifiers; values double as serialization names."""

    KEYWORD_TOTAL = "keyword.total"
    KEYWORD_DENSITY = "keyword.density"
    COUPLING_TOTAL_TOTAL = "coupling.total.total"
    COUPLING_TOTAL_FIELD = "coupling.total.field"
    COUPLING_TOTAL_METHOD = "coupling.total.method"
    COUPLING_DENSITY_TOTAL = "coupling.density.total"
    COUPLING_DENSITY_FIELD = "coupling.density.field"
    COUPLING_DENSITY_METHOD = "coupling.density.method"
    COMPLEXITY_TOTAL_AREA = "complexity.total_area"
    COMPLEXITY_AREA_DENSITY = "complexity.area_density"
    COMPLEXITY_METHOD_AREA = "complexity.method_area"
    COMPLEXITY_METHOD_DEPTH_DENSITY = "complexity.method_depth_density"
    SIZE_LINES_SEGMENT = "size.lines.segment"
    SIZE_LINES_METHOD = "size.lines.method_declaration"
    SIZE_SYMBOLS_SEGMENT = "size.symbols.segment"
    SIZE_SYMBOLS_METHOD = "size.symbols.method_declaration"
    SIZE_SYMBOL_DENSITY_SEGMENT = "size.symbol_density.segment"
    SIZE_SYMBOL_DENSITY_METHOD = "size.symbol_density.method_declaration"

    @property
    def category(self) -> str:
        return self.value.split(".", 1)[0]


ALL_SUBMETRICS = tuple(Submetric)
SUBMETRIC_BY_NAME = {m.value: m for m in Submetric}

MetricVector = dict[Submetric, float]


def keyword_metrics(fragment: Fragment, enabled: frozenset[str]) -> tuple[int, float]:
    """(total, per-line density) of enabled keyword occurrences."""
    if fragment.line_count < 1:
        raise EmptyScope("fragment has no lines")
    total = sum(1 for tok in fragment.tokens if tok.text in enabled)
    return total, total / fragment.line_count


@dataclass(frozen=True)
class CouplingCounts:
    field: int
    method: int

    @property
    def total(self) -> int:
        return self.field + self.method


def coupling_counts(tokens: list[Token], owner: ClassContext) -> CouplingCounts:
    """Count references from a token sequence into its owning class.

    Field connectivity counts identifiers matching a declared field
    unless a local declaration of the same name textually precedes the
    occurrence (the declaring occurrence itself is shadowed). Method
    connectivity counts identifiers immediately followed by '(' that
    match a declared method name.
    """
    shadow_from: dict[str, int] = {}
    for name, decl in scan_declarations(tokens):
        if name not in shadow_from:
            shadow_from[name] = decl.token_index
    field_refs = 0
    method_refs = 0
    for i, tok in enumerate(tokens):
        if tok.kind != TokenKind.IDENTIFIER:
            continue
        name = tok.text
        followed_by_call = i + 1 < len(tokens) and tokens[i + 1].text == "("
        if followed_by_call and name in owner.method_names:
            method_refs += 1
        if name in owner.field_names:
            if name in shadow_from and shadow_from[name] <= i:
                continue
            field_refs += 1
    return CouplingCounts(field_refs, method_refs)


def coupling_metrics(
    fragment: Fragment, owner: ClassContext | None, connectivity: str
) -> tuple[int, float]:
    """(count, per-line density) for the chosen connectivity flavor."""
    if owner is None:
        raise MissingContext("coupling metrics need the enclosing class context")
    counts = coupling_counts(fragment.tokens, owner)
    count = {"total": counts.total, "field": counts.field, "method": counts.method}[connectivity]
    return count, count / fragment.line_count


def complexity_metrics(
    fragment: Fragment, enclosing: MethodUnit
) -> tuple[int, float, int, float]:
    """(totalArea, areaDensity, methodArea, methodDepthDensity).

    Area is the sum of per-line nesting depths, so it grows with both
    length and nesting.
    """
    segment_profile = nesting_profile(fragment)
    total_area = sum(segment_profile)
    method_area = sum(enclosing.nesting_profile)
    return (
        total_area,
        total_area / fragment.line_count,
        method_area,
        method_area / enclosing.line_count,
    )


def size_metrics(
    fragment: Fragment, enclosing: MethodUnit | None, scope: str
) -> tuple[int, int, float]:
    """(lines, symbols, symbolDensity) for the segment or the method.

    Symbols are the non-whitespace characters of the scope's raw text.
    """
    if scope == "segment":
        lines = fragment.line_count
        symbols = fragment.symbol_count
    else:
        if enclosing is None:
            raise MissingContext("method-scoped size metrics need the enclosing method")
        lines = enclosing.line_count
        symbols = sum(1 for ch in enclosing.body_text if not ch.isspace())
    if lines < 1:
        raise EmptyScope("size scope has no lines")
    return lines, symbols, symbols / lines


def compute_vector(
    fragment: Fragment,
    enclosing: MethodUnit,
    owner: ClassContext,
    keywords: frozenset[str],
) -> MetricVector:
    """All submetric values for a fragment pasted inside a method."""
    kw_total, kw_density = keyword_metrics(fragment, keywords)
    coupling = coupling_counts(fragment.tokens, owner)
    area, area_density, method_area, method_depth_density = complexity_metrics(
        fragment, enclosing
    )
    seg_lines, seg_symbols, seg_density = size_metrics(fragment, enclosing, "segment")
    m_lines, m_symbols, m_density = size_metrics(fragment, enclosing, "methodDeclaration")
    lc = fragment.line_count
    return {
        Submetric.KEYWORD_TOTAL: kw_total,
        Submetric.KEYWORD_DENSITY: kw_density,
        Submetric.COUPLING_TOTAL_TOTAL: coupling.total,
        Submetric.COUPLING_TOTAL_FIELD: coupling.field,
        Submetric.COUPLING_TOTAL_METHOD: coupling.method,
        Submetric.COUPLING_DENSITY_TOTAL: coupling.total / lc,
        Submetric.COUPLING_DENSITY_FIELD: coupling.field / lc,
        Submetric.COUPLING_DENSITY_METHOD: coupling.method / lc,
        Submetric.COMPLEXITY_TOTAL_AREA: area,
        Submetric.COMPLEXITY_AREA_DENSITY: area_density,
        Submetric.COMPLEXITY_METHOD_AREA: method_area,
        Submetric.COMPLEXITY_METHOD_DEPTH_DENSITY: method_depth_density,
        Submetric.SIZE_LINES_SEGMENT: seg_lines,
        Submetric.SIZE_SYMBOLS_SEGMENT: seg_symbols,
        Submetric.SIZE_SYMBOL_DENSITY_SEGMENT: seg_density,
        Submetric.SIZE_LINES_METHOD: m_lines,
        Submetric.SIZE_SYMBOLS_METHOD: m_symbols,
        Submetric.SIZE_SYMBOL_DENSITY_METHOD: m_density,
    }


def method_vector(method: MethodUnit, keywords: frozenset[str]) -> MetricVector:
    """Submetric values of a method, treating the whole body as the segment."""
    lines = method.line_count
    kw_total = sum(1 for tok in method.body_tokens if tok.text in keywords)
    coupling = coupling_counts(method.body_tokens, method.owner)
    area = sum(method.nesting_profile)
    symbols = sum(1 for ch in method.body_text if not ch.isspace())
    return {
        Submetric.KEYWORD_TOTAL: kw_total,
        Submetric.KEYWORD_DENSITY: kw_total / lines,
        Submetric.COUPLING_TOTAL_TOTAL: coupling.total,
        Submetric.COUPLING_TOTAL_FIELD: coupling.field,
        Submetric.COUPLING_TOTAL_METHOD: coupling.method,
        Submetric.COUPLING_DENSITY_TOTAL: coupling.total / lines,
        Submetric.COUPLING_DENSITY_FIELD: coupling.field / lines,
        Submetric.COUPLING_DENSITY_METHOD: coupling.method / lines,
        Submetric.COMPLEXITY_TOTAL_AREA: area,
        Submetric.COMPLEXITY_AREA_DENSITY: area / lines,
        Submetric.COMPLEXITY_METHOD_AREA: area,
        Submetric.COMPLEXITY_METHOD_DEPTH_DENSITY: area / lines,
        Submetric.SIZE_LINES_SEGMENT: lines,
        Submetric.SIZE_SYMBOLS_SEGMENT: symbols,
        Submetric.SIZE_SYMBOL_DENSITY_SEGMENT: symbols / lines,
        Submetric.SIZE_LINES_METHOD: lines,
        Submetric.SIZE_SYMBOLS_METHOD: symbols,
        Submetric.SIZE_SYMBOL_DENSITY_METHOD: symbols / lines,
    }


@dataclass(frozen=True)
class ProjectDistribution:
    """Ascending per-method samples for every submetric."""

    samples: dict[Submetric, tuple[float, ...]]
    sample_size: int


def build_distributions(
    methods: list[MethodUnit], keywords: frozenset[str]
) -> ProjectDistribution:
    if not methods:
        raise EmptyDistribution("no indexed methods to sample")
    columns: dict[Submetric, list[float]] = {m: [] for m in Submetric}
    for method in sorted(methods, key=lambda m: m.id):
        vector = method_vector(method, keywords)
        for submetric, value in vector.items():
            columns[submetric].append(value)
    return ProjectDistribution(
        {m: tuple(sorted(vals)) for m, vals in columns.items()}, len(methods)
    )


def percentile_threshold(sample: tuple[float, ...], sensitivity: int) -> float:
    """Nearest-rank percentile: sample[ceil(s/100 * n)], 1-based.

    Integer arithmetic keeps the rank exact for any n and s.
    """
    if not isinstance(sensitivity, int) or isinstance(sensitivity, bool):
        raise InvalidSensitivity(f"sensitivity must be an integer, got {sensitivity!r}")
    if not 1 <= sensitivity <= 100:
        raise InvalidSensitivity(f"sensitivity {sensitivity} outside 1..100")
    if not sample:
        raise EmptyDistribution("empty sample")
    rank = (sensitivity * len(sample) + 99) // 100
    return sample[rank - 1]


def thresholds_for(
    distribution: ProjectDistribution,
    sensitivities: dict[str, int],
    submetrics: tuple[Submetric, ...] = ALL_SUBMETRICS,
) -> dict[Submetric, float]:
    """Per-submetric thresholds at each category's sensitivity."""
    return {
        m: percentile_threshold(distribution.samples[m], sensitivities[m.category])
        for m in submetrics
    }
