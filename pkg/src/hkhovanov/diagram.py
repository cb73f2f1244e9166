"""Link diagrams on a closed oriented genus-g surface.

A diagram is a 4-valent graph with over/under data at each vertex plus a
word in the surface group on every directed edge: the diagram lives in the
fundamental polygon and the word records which sides an edge crosses.
Crossing-free components are kept separately as free loops (bare words).

Crossing slots are in counterclockwise cyclic order starting from the
incoming understrand, so slot 0 is the incoming and slot 2 the outgoing
understrand; the overstrand occupies slots 1 and 3.  The file format stores
bare edge ids per slot; which end of an edge sits in a slot is inferred by
constraint propagation (slot 0 takes a head, slot 2 a tail, the two over
slots take one head and one tail, and every edge has one of each).
Components that never pass under are orientation-ambiguous; their direction
is fixed deterministically by orienting the least (crossing, slot)
appearance as incoming.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .words import Surface, Word, check_word, invert_word, parse_word, word_to_str

__all__ = [
    "Diagram",
    "TAIL",
    "HEAD",
    "validate_json",
    "diagram_from_json",
    "diagram_to_json",
    "load_diagram",
    "validate",
    "crossing_sign",
    "crossing_signs",
    "source_sink_orientation",
    "has_source_sink",
    "reverse_orientation",
    "mirror",
]

TAIL, HEAD = 0, 1

# slot holds (edge index, end): HEAD means the edge flows into the crossing.
SlotRef = tuple[int, int]
Crossing = tuple[SlotRef, SlotRef, SlotRef, SlotRef]


@dataclass(frozen=True)
class Diagram:
    genus: int
    edge_words: tuple[Word, ...]
    crossings: tuple[Crossing, ...]
    free_loops: tuple[Word, ...]

    @cached_property
    def surface(self) -> Surface:
        return Surface(self.genus)

    @cached_property
    def edge_ends(self) -> tuple[tuple[SlotRef | None, SlotRef | None], ...]:
        """Per edge: ((crossing, slot) of its tail, (crossing, slot) of its head)."""
        locs: list[list[SlotRef | None]] = [[None, None] for _ in self.edge_words]
        for c, slots in enumerate(self.crossings):
            for s, (e, end) in enumerate(slots):
                locs[e][end] = (c, s)
        return tuple((t, h) for t, h in locs)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)


# ---------------------------------------------------------------------------
# file format


def validate_json(obj) -> list[str]:
    """Structural violations of a raw diagram object; empty iff loadable."""
    out: list[str] = []
    if not isinstance(obj, dict):
        return ["diagram must be a JSON object"]
    genus = obj.get("genus")
    if not isinstance(genus, int) or genus < 0:
        out.append("genus must be a nonnegative integer")
        genus = 0
    edges = obj.get("edges", [])
    crossings = obj.get("crossings", [])
    loops = obj.get("free_loops", [])
    ids: list[int] = []
    for k, e in enumerate(edges):
        if not isinstance(e, dict) or not isinstance(e.get("id"), int):
            out.append(f"edge #{k}: missing integer id")
            continue
        ids.append(e["id"])
        try:
            parse_word(str(e.get("word", "")), genus)
        except ValueError as exc:
            out.append(f"edge id {e['id']}: {exc}")
    if len(set(ids)) != len(ids):
        out.append("duplicate edge ids")
    known = set(ids)
    uses: dict[int, int] = {i: 0 for i in known}
    for k, c in enumerate(crossings):
        if not isinstance(c, dict) or not isinstance(c.get("slots"), list):
            out.append(f"crossing #{k}: missing slots")
            continue
        slots = c["slots"]
        if len(slots) != 4:
            out.append(f"crossing #{k}: needs exactly 4 slots")
            continue
        for e in slots:
            if e not in known:
                out.append(f"crossing #{k}: slot references unknown edge {e}")
            else:
                uses[e] += 1
    for i in sorted(known):
        if uses[i] != 2:
            out.append(f"edge id {i}: used {uses[i]} times, expected 2")
    for k, w in enumerate(loops):
        try:
            parse_word(str(w), genus)
        except ValueError as exc:
            out.append(f"free loop #{k}: {exc}")
    if out:
        return out
    # orientation consistency needs the structural part to be sound
    idx = {eid: n for n, eid in enumerate(sorted(known))}
    slot_tables = [tuple(idx[e] for e in c["slots"]) for c in crossings]
    ends = _infer_ends(len(known), slot_tables)
    if isinstance(ends, str):
        out.append(ends)
    return out


def _infer_ends(n_edges: int, slot_tables: list[tuple[int, int, int, int]]):
    """Resolve which end of each edge sits in each slot, or an error string.

    Appearance values: 1 = flows into the crossing (head), 0 = out (tail).
    Slot 0 is pinned to 1 and slot 2 to 0; the two over slots differ, and the
    two appearances of an edge differ.  Components with no pinned node get
    their least appearance set to 1.
    """
    apps: dict[int, list[tuple[int, int]]] = {e: [] for e in range(n_edges)}
    for c, slots in enumerate(slot_tables):
        for s, e in enumerate(slots):
            apps[e].append((c, s))
    # all constraints are "values differ"
    neighbours: dict[tuple[int, int], list[tuple[int, int]]] = {}

    def link(u, v):
        neighbours.setdefault(u, []).append(v)
        neighbours.setdefault(v, []).append(u)

    for c in range(len(slot_tables)):
        link((c, 1), (c, 3))
    for locs in apps.values():
        link(locs[0], locs[1])
    pinned = {}
    for c in range(len(slot_tables)):
        pinned[(c, 0)] = 1
        pinned[(c, 2)] = 0
    nodes = sorted({(c, s) for c in range(len(slot_tables)) for s in range(4)})
    val: dict[tuple[int, int], int] = {}
    seen: set[tuple[int, int]] = set()
    for start in nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            u = queue.pop()
            for v in neighbours.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        anchors = [v for v in comp if v in pinned]
        anchor = min(anchors) if anchors else min(comp)
        val[anchor] = pinned.get(anchor, 1)
        queue = [anchor]
        done = {anchor}
        while queue:
            u = queue.pop()
            for v in neighbours.get(u, ()):
                want = 1 - val[u]
                if v in done:
                    if val[v] != want:
                        return "orientation-inconsistent slot structure"
                else:
                    val[v] = want
                    done.add(v)
                    queue.append(v)
        for v in comp:
            if v in pinned and val[v] != pinned[v]:
                return "orientation-inconsistent slot structure"
    return val


def diagram_from_json(obj) -> Diagram:
    """Build a Diagram from a raw dict, raising on any violation."""
    problems = validate_json(obj)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))
    genus = obj["genus"]
    edges = sorted(obj.get("edges", []), key=lambda e: e["id"])
    idx = {e["id"]: n for n, e in enumerate(edges)}
    words = tuple(parse_word(str(e.get("word", "")), genus) for e in edges)
    slot_tables = [
        tuple(idx[e] for e in c["slots"])
        for c in sorted(obj.get("crossings", []), key=lambda c: c.get("id", 0))
    ]
    val = _infer_ends(len(edges), slot_tables)
    assert not isinstance(val, str)
    crossings = tuple(
        tuple((e, val[(c, s)]) for s, e in enumerate(slots))
        for c, slots in enumerate(slot_tables)
    )
    loops = tuple(parse_word(str(w), genus) for w in obj.get("free_loops", []))
    return Diagram(genus, words, crossings, loops)


def diagram_to_json(d: Diagram) -> dict:
    """Raw dict form.  End data is dropped; reloading re-infers it, which is
    stable unless a component never passes under."""
    return {
        "genus": d.genus,
        "edges": [
            {"id": i, "word": word_to_str(w, d.genus)}
            for i, w in enumerate(d.edge_words)
        ],
        "crossings": [
            {"id": c, "slots": [e for e, _ in slots]}
            for c, slots in enumerate(d.crossings)
        ],
        "free_loops": [word_to_str(w, d.genus) for w in d.free_loops],
    }


def load_diagram(path: str) -> Diagram:
    with open(path) as fh:
        return diagram_from_json(json.load(fh))


def validate(d: Diagram) -> list[str]:
    """Invariant violations of a built Diagram (defensive, e.g. after moves)."""
    out: list[str] = []
    seen: dict[tuple[int, int], int] = {}
    for c, slots in enumerate(d.crossings):
        if len(slots) != 4:
            out.append(f"crossing {c}: wrong slot count")
            continue
        for s, (e, end) in enumerate(slots):
            if not 0 <= e < len(d.edge_words):
                out.append(f"crossing {c} slot {s}: dangling edge {e}")
                continue
            key = (e, end)
            if key in seen:
                out.append(f"edge {e}: duplicate {'head' if end else 'tail'}")
            seen[key] = c
        if [end for _, end in slots][0::2] != [HEAD, TAIL]:
            out.append(f"crossing {c}: understrand ends inconsistent")
        over = sorted(end for _, end in slots[1::2])
        if over != [TAIL, HEAD]:
            out.append(f"crossing {c}: overstrand ends inconsistent")
    for e, w in enumerate(d.edge_words):
        if (e, TAIL) not in seen or (e, HEAD) not in seen:
            out.append(f"edge {e}: missing an end")
        try:
            check_word(w, d.genus)
        except ValueError as exc:
            out.append(f"edge {e}: {exc}")
    for k, w in enumerate(d.free_loops):
        try:
            check_word(w, d.genus)
        except ValueError as exc:
            out.append(f"free loop {k}: {exc}")
    return out


# ---------------------------------------------------------------------------
# crossing signs and source-sink structures


def crossing_sign(d: Diagram, c: int) -> int:
    """+1 when the overstrand comes in at slot 3, -1 at slot 1.

    Equivalently: the frame (overstrand direction, understrand direction)
    is positively oriented.
    """
    slots = d.crossings[c]
    if slots[3][1] == HEAD:
        return 1
    return -1


def crossing_signs(d: Diagram) -> tuple[int, int, tuple[int, ...]]:
    """(n_plus, n_minus, per-crossing signs)."""
    signs = tuple(crossing_sign(d, c) for c in range(d.n_crossings))
    return sum(1 for s in signs if s > 0), sum(1 for s in signs if s < 0), signs


def source_sink_orientation(d: Diagram) -> list[int] | None:
    """Edge re-orientation making every crossing a source-sink vertex.

    Source-sink: the two incoming slots are opposite (0,2 or 1,3).  Returns
    +1 (keep direction) / -1 (flip) per edge, or None when impossible.
    Free loops are unconstrained.
    """
    n = len(d.edge_words)
    # union-find with parity: flip[e] xor flip[root] tracked on the path
    parent = list(range(n))
    parity = [0] * n

    def find(x: int) -> tuple[int, int]:
        p = 0
        while parent[x] != x:
            p ^= parity[x]
            x = parent[x]
        return x, p

    def union(x: int, y: int, rel: int) -> bool:
        rx, px = find(x)
        ry, py = find(y)
        if rx == ry:
            return (px ^ py) == rel
        parent[rx] = ry
        parity[rx] = px ^ py ^ rel
        return True

    for slots in d.crossings:
        (e0, h0), (e1, h1), (e2, h2), (e3, h3) = slots
        # toward(s) = head(s) xor flip(e);  need toward0==toward2,
        # toward1==toward3, toward0!=toward1
        if not union(e0, e2, h0 ^ h2 ^ 0):
            return None
        if not union(e1, e3, h1 ^ h3 ^ 0):
            return None
        if not union(e0, e1, h0 ^ h1 ^ 1):
            return None
    out = []
    for e in range(n):
        _, p = find(e)
        out.append(-1 if p else 1)
    return out


def has_source_sink(d: Diagram) -> bool:
    return source_sink_orientation(d) is not None


# ---------------------------------------------------------------------------
# whole-diagram symmetries


def reverse_orientation(d: Diagram) -> Diagram:
    """Reverse every component: words invert, slots rotate by two."""
    words = tuple(invert_word(w) for w in d.edge_words)
    crossings = tuple(
        tuple((slots[(s + 2) % 4][0], 1 - slots[(s + 2) % 4][1]) for s in range(4))
        for slots in d.crossings
    )
    loops = tuple(invert_word(w) for w in d.free_loops)
    return Diagram(d.genus, words, crossings, loops)


def mirror(d: Diagram) -> Diagram:
    """Exchange over and under everywhere (reflection through the surface).

    Slots rotate by one so that the old overstrand entry becomes slot 0;
    every crossing sign negates.
    """
    crossings = []
    for slots in d.crossings:
        shift = 1 if slots[1][1] == HEAD else 3
        crossings.append(tuple(slots[(s + shift) % 4] for s in range(4)))
    return Diagram(d.genus, d.edge_words, tuple(crossings), d.free_loops)
