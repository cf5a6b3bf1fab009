"""Repeated-suffix search over integer symbol sequences.

Given a training sequence and the recent history's suffix, the matcher finds,
for each suffix length d (the "degree"), every place the last d symbols recur
in the training text, and tallies the symbol that immediately follows each
recurrence. Occurrences may overlap and are all counted; an occurrence that
ends at the very last training position has no successor and is ignored. The
search walks d = 1, 2, ... and stops at the first degree with no
successor-bearing occurrence, or at the degree cap.

Two interchangeable implementations are provided:

* :func:`match_degrees_naive` rescans the text per degree. It is the
  reference oracle: slow, obvious, and used to cross-check everything else.
* :class:`SuffixAutomatonIndex` (via :func:`build_index` or
  :func:`match_degrees`) builds a suffix automaton once and answers each
  degree in O(degree) transitions, independent of the text length.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

__all__ = [
    "SymbolSequence",
    "QuerySuffix",
    "DegreeStats",
    "MatchResult",
    "Matcher",
    "match_degrees_naive",
    "match_degrees",
    "build_index",
    "SuffixAutomatonIndex",
]


@dataclass(frozen=True)
class SymbolSequence:
    """Training text: interval labels in 1..alphabet_size."""

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        for s in self.symbols:
            if not 1 <= s <= self.alphabet_size:
                raise ValueError(f"symbol {s} outside 1..{self.alphabet_size}")

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class QuerySuffix:
    """Recent history, most recent symbol last; degrees 1..max_degree of its
    tail are searched."""

    symbols: tuple[int, ...]
    max_degree: int

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("query suffix is empty")
        if not 1 <= self.max_degree <= len(self.symbols):
            raise ValueError(
                f"max_degree {self.max_degree} outside 1..{len(self.symbols)}"
            )


@dataclass(frozen=True)
class DegreeStats:
    """Successor tally for one degree: successor_counts[s] is how many
    occurrences of the degree-d suffix are immediately followed by s."""

    degree: int
    successor_counts: Mapping[int, int]
    total: int


@dataclass(frozen=True)
class MatchResult:
    """Stats for consecutive degrees 1..depth; empty when even the last
    query symbol never recurs with a successor."""

    stats: tuple[DegreeStats, ...]

    @property
    def depth(self) -> int:
        return self.stats[-1].degree if self.stats else 0


Matcher = Callable[[SymbolSequence, QuerySuffix], MatchResult]


def _check_inputs(training: SymbolSequence, query: QuerySuffix) -> None:
    if not training.symbols:
        raise ValueError("training sequence is empty")
    for s in query.symbols:
        if not 1 <= s <= training.alphabet_size:
            raise ValueError(f"query symbol {s} outside training alphabet")


def match_degrees_naive(training: SymbolSequence, query: QuerySuffix) -> MatchResult:
    """Reference implementation: direct scan of the text for every degree."""
    _check_inputs(training, query)
    text = training.symbols
    n = len(text)
    stats: list[DegreeStats] = []
    for degree in range(1, query.max_degree + 1):
        suffix = query.symbols[len(query.symbols) - degree :]
        counts: dict[int, int] = {}
        # start positions leaving room for a successor symbol
        for start in range(n - degree):
            if text[start : start + degree] == suffix:
                succ = text[start + degree]
                counts[succ] = counts.get(succ, 0) + 1
        if not counts:
            break
        stats.append(DegreeStats(degree, counts, sum(counts.values())))
    return MatchResult(tuple(stats))


class SuffixAutomatonIndex:
    """Suffix automaton over the training text with per-state occurrence
    counts.

    The automaton recognises every substring of the text; the state reached
    by reading a pattern P carries the number of occurrences of P. The
    successor tally for P at one degree is then read off the state's outgoing
    transitions: the count of P followed by s equals the occurrence count of
    the pattern P+s. The index is immutable after construction and safe to
    query from multiple threads.
    """

    __slots__ = ("alphabet_size", "text_length", "_trans", "_occ")

    def __init__(self, training: SymbolSequence) -> None:
        if not training.symbols:
            raise ValueError("cannot index an empty training sequence")
        self.alphabet_size = training.alphabet_size
        self.text_length = len(training.symbols)

        trans: list[dict[int, int]] = [{}]
        link: list[int] = [-1]
        length: list[int] = [0]
        occ: list[int] = [0]
        last = 0
        for c in training.symbols:
            cur = len(trans)
            trans.append({})
            length.append(length[last] + 1)
            link.append(0)
            occ.append(1)
            p = last
            while p >= 0 and c not in trans[p]:
                trans[p][c] = cur
                p = link[p]
            if p >= 0:
                q = trans[p][c]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = len(trans)
                    trans.append(dict(trans[q]))
                    length.append(length[p] + 1)
                    link.append(link[q])
                    occ.append(0)  # clones inherit no occurrence of their own
                    while p >= 0 and trans[p].get(c) == q:
                        trans[p][c] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur

        # endpos sizes: push each state's count onto its suffix link,
        # longest states first (counting sort by state length)
        buckets = [0] * (self.text_length + 1)
        for ln in length:
            buckets[ln] += 1
        slot = [0] * (self.text_length + 1)
        acc = 0
        for ln, b in enumerate(buckets):
            slot[ln] = acc
            acc += b
        order = [0] * len(length)
        for state, ln in enumerate(length):
            order[slot[ln]] = state
            slot[ln] += 1
        for state in reversed(order):
            parent = link[state]
            if parent >= 0:
                occ[parent] += occ[state]

        self._trans = trans
        self._occ = occ

    def match_degrees(self, query: QuerySuffix) -> MatchResult:
        trans = self._trans
        occ = self._occ
        q = query.symbols
        stats: list[DegreeStats] = []
        for degree in range(1, query.max_degree + 1):
            state = 0
            for c in q[len(q) - degree :]:
                nxt = trans[state].get(c)
                if nxt is None:
                    state = -1
                    break
                state = nxt
            if state < 0:
                break
            # every outgoing transition extends the matched suffix by one
            # symbol, i.e. one distinct successor
            counts = {s: occ[t] for s, t in trans[state].items()}
            if not counts:
                break
            stats.append(DegreeStats(degree, counts, sum(counts.values())))
        return MatchResult(tuple(stats))


def build_index(training: SymbolSequence) -> SuffixAutomatonIndex:
    """Build the reusable automaton index for a training sequence."""
    return SuffixAutomatonIndex(training)


def match_degrees(training: SymbolSequence, query: QuerySuffix) -> MatchResult:
    """One-shot indexed match: build the automaton, then query it."""
    _check_inputs(training, query)
    return build_index(training).match_degrees(query)
