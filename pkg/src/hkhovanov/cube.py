"""Resolutions of a diagram and the cube of states.

A state is an n-bit mask, bit c giving the smoothing of crossing c: the
0-smoothing joins slot pairs (0,1) and (2,3), the 1-smoothing joins (0,3)
and (1,2).  Circles are traced through darts (edge, direction); each circle
is read from its least edge, traversed tail-to-head, concatenating edge
words (inverted against the traversal).  Circles are listed sorted by least
visited edge, with crossing-free loops appended after them in input order.

A cube edge flips one crossing from 0 to 1 and is a merge (two circles
become one), a split, or neutral (one circle re-glues to one circle);
neutral edges only occur when the diagram has no source-sink structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, HEAD, TAIL
from .words import ConjClass, Word, free_reduce, invert_word

__all__ = ["Circle", "Resolution", "CubeEdge", "resolve", "classify_edge", "cube_edges"]

_PAIRS0 = (1, 0, 3, 2)  # partner slot under the 0-smoothing
_PAIRS1 = (3, 2, 1, 0)  # partner slot under the 1-smoothing


@dataclass(frozen=True)
class Circle:
    """One smoothed component: its darts, traced word, and edge support.

    Free loops carry no darts; ``loop`` is their index in the diagram.
    """

    darts: tuple[tuple[int, int], ...]
    word: Word
    loop: int | None = None

    @property
    def support(self) -> frozenset[int]:
        return frozenset(e for e, _ in self.darts)


@dataclass(frozen=True)
class Resolution:
    state: int
    circles: tuple[Circle, ...]

    @property
    def n_circles(self) -> int:
        return len(self.circles)


def resolve(d: Diagram, state: int) -> Resolution:
    """Trace the circles of one state."""
    n_edges = len(d.edge_words)
    partners = [_PAIRS1 if (state >> c) & 1 else _PAIRS0 for c in range(d.n_crossings)]
    ends = d.edge_ends
    used = [False] * n_edges
    circles: list[Circle] = []
    for e0 in range(n_edges):
        if used[e0]:
            continue
        darts: list[tuple[int, int]] = []
        word: list[int] = []
        e, direction = e0, 1
        while True:
            if used[e]:
                raise RuntimeError("corrupted diagram: edge traversed twice")
            used[e] = True
            darts.append((e, direction))
            w = d.edge_words[e]
            word.extend(w if direction > 0 else invert_word(w))
            arrive = ends[e][HEAD if direction > 0 else TAIL]
            assert arrive is not None
            c, s = arrive
            s2 = partners[c][s]
            e, end = d.crossings[c][s2]
            direction = 1 if end == TAIL else -1
            if (e, direction) == (e0, 1):
                break
        circles.append(Circle(tuple(darts), tuple(word)))
    for k, w in enumerate(d.free_loops):
        circles.append(Circle((), tuple(w), loop=k))
    return Resolution(state, tuple(circles))


@dataclass(frozen=True)
class CubeEdge:
    """One differential edge of the cube: state -> state | (1 << crossing)."""

    source: int
    crossing: int
    kind: str  # "merge" | "split" | "neutral"
    # merge: (i, j, k) with circles i, j of the source joining into k of the
    # target; split: (i, j, k) with circle i splitting into j, k.  Neutral
    # carries the single re-glued circle as (i, None, k).
    indices: tuple
    # position pairs (source index, target index) of the untouched circles
    unchanged: tuple[tuple[int, int], ...] = ()

    @property
    def target(self) -> int:
        return self.source | (1 << self.crossing)


def _match(src: Resolution, tgt: Resolution):
    """Pair unchanged circles by support (loops by position).

    Returns (mapping src index -> tgt index for unchanged circles,
    unmatched src indices, unmatched tgt indices).
    """
    by_support: dict = {}
    for j, circ in enumerate(tgt.circles):
        key = ("loop", circ.loop) if circ.loop is not None else circ.support
        by_support[key] = j
    mapping: dict[int, int] = {}
    left_src: list[int] = []
    for i, circ in enumerate(src.circles):
        key = ("loop", circ.loop) if circ.loop is not None else circ.support
        j = by_support.pop(key, None)
        if j is None:
            left_src.append(i)
        else:
            mapping[i] = j
    left_tgt = sorted(by_support.values())
    return mapping, left_src, left_tgt


def classify_edge(d: Diagram, src: Resolution, tgt: Resolution) -> CubeEdge:
    crossing = (src.state ^ tgt.state).bit_length() - 1
    mapping, left_src, left_tgt = _match(src, tgt)
    pairs = tuple(sorted(mapping.items()))
    if len(left_src) == 2 and len(left_tgt) == 1:
        i, j = left_src
        return CubeEdge(src.state, crossing, "merge", (i, j, left_tgt[0]), pairs)
    if len(left_src) == 1 and len(left_tgt) == 2:
        return CubeEdge(src.state, crossing, "split",
                        (left_src[0],) + tuple(left_tgt), pairs)
    if not left_src and not left_tgt and src.n_circles == tgt.n_circles:
        # same supports on both sides: the crossing re-glued one circle to one
        seen = {e for e, _ in _crossing_edges(d, crossing)}
        i = next(
            k
            for k, circ in enumerate(src.circles)
            if circ.loop is None and circ.support & seen
        )
        return CubeEdge(src.state, crossing, "neutral", (i, None, mapping[i]), pairs)
    raise RuntimeError(
        f"corrupted diagram: state {src.state:b} -> {tgt.state:b} changes "
        f"{len(left_src)} circles into {len(left_tgt)}"
    )


def _crossing_edges(d: Diagram, c: int):
    return d.crossings[c]


def cube_edges(d: Diagram) -> list[CubeEdge]:
    """All n * 2^(n-1) cube edges, classified."""
    n = d.n_crossings
    cache = {s: resolve(d, s) for s in range(1 << n)}
    out = []
    for s in range(1 << n):
        for c in range(n):
            if not (s >> c) & 1:
                out.append(classify_edge(d, cache[s], cache[s | (1 << c)]))
    return out


def circle_classes(d: Diagram, res: Resolution) -> tuple[ConjClass, ...]:
    """Canonical class of each circle, in circle order."""
    surf = d.surface
    return tuple(surf.canonical_class(free_reduce(c.word)) for c in res.circles)
