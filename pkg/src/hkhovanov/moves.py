"""Local diagram moves: kink add/remove, poke add/remove, triangle slide.

Moves are applied at caller-specified sites and return a new Diagram with
edges renumbered contiguously.  Interior arcs of a site (the kink loop, the
two middle arcs of a poke, the three triangle arcs) must carry empty words;
sites that do not match raise ValueError.  Word bookkeeping: adding a kink
or a poke splits an arc's word at a caller-chosen point, and a free loop is
cut open at a chosen rotation.

Slot conventions follow the diagram module: slot 0/2 are the understrand
in/out, the crossing is positive when the overstrand enters at slot 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, HEAD, TAIL, crossing_sign, validate
from .words import Word


@dataclass(frozen=True)
class MoveSpec:
    kind: str  # "r1+" | "r1-" | "r1rm" | "r2" | "r2rm" | "r3"
    params: dict = field(default_factory=dict)


Strand = tuple[str, int]  # ("edge", id) or ("loop", index)


def apply_move(d: Diagram, spec: MoveSpec) -> Diagram:
    p = spec.params
    if spec.kind in ("r1+", "r1-"):
        chirality = 1 if spec.kind == "r1+" else -1
        return r1_add(d, edge=p.get("edge"), loop=p.get("loop"),
                      split=p.get("split"), chirality=chirality)
    if spec.kind == "r1rm":
        return r1_remove(d, p["crossing"])
    if spec.kind == "r2":
        return r2_add(d, _strand_pair(p), splits=p.get("splits", (None, None)),
                      over=p.get("over", 2))
    if spec.kind == "r2rm":
        c1, c2 = p["crossings"]
        return r2_remove(d, c1, c2)
    if spec.kind == "r3":
        ta, tb, tc = p["edges"]
        return r3(d, ta, tb, tc)
    raise ValueError(f"unknown move kind {spec.kind!r}")


def _strand_pair(p: dict) -> tuple[Strand, Strand]:
    if "edges" in p:
        e1, e2 = p["edges"]
        return ("edge", e1), ("edge", e2)
    if "loops" in p:
        l1, l2 = p["loops"]
        return ("loop", l1), ("loop", l2)
    return ("edge", p["edge"]), ("loop", p["loop"])


# ---------------------------------------------------------------------------
# kinks


def r1_add(d: Diagram, edge: int | None = None, loop: int | None = None,
           split: int | None = None, chirality: int = 1) -> Diagram:
    """Add a kink on an arc.  chirality is the sign of the new crossing.

    On an edge, ``split`` letters of its word stay before the kink (default
    all); on a free loop, ``split`` rotates the word before cutting it open.
    """
    if (edge is None) == (loop is None):
        raise ValueError("pattern-mismatch: r1 add needs exactly one of edge/loop")
    words = list(d.edge_words)
    loops = list(d.free_loops)
    crossings = [list(slots) for slots in d.crossings]
    if edge is not None:
        if not 0 <= edge < len(words):
            raise ValueError(f"pattern-mismatch: no edge {edge}")
        w = words[edge]
        k = len(w) if split is None else split
        if not 0 <= k <= len(w):
            raise ValueError(f"pattern-mismatch: split {k} outside word of edge {edge}")
        kink = len(words)
        back = kink + 1
        words[edge] = w[:k]
        words.append(())     # kink loop
        words.append(w[k:])  # rear part, takes over the old head end
        head_loc = d.edge_ends[edge][HEAD]
        if head_loc is None:
            raise RuntimeError("edge without a head end")
        hc, hs = head_loc
        crossings[hc][hs] = (back, HEAD)
        u, v = edge, back
    else:
        if not 0 <= loop < len(loops):
            raise ValueError(f"pattern-mismatch: no free loop {loop}")
        w = loops.pop(loop)
        k = 0 if split is None else split % (len(w) or 1)
        arc = len(words)
        kink = arc + 1
        words.append(w[k:] + w[:k])
        words.append(())
        u = v = arc
    if chirality > 0:
        crossings.append([(kink, HEAD), (kink, TAIL), (v, TAIL), (u, HEAD)])
    else:
        crossings.append([(kink, HEAD), (u, HEAD), (v, TAIL), (kink, TAIL)])
    return Diagram(d.genus, tuple(words), tuple(tuple(c) for c in crossings),
                   tuple(loops))


def kink_at(d: Diagram, c: int) -> tuple[int, int, int] | None:
    """(kink edge, incoming outer edge, outgoing outer edge) if crossing c is
    a kink: one empty-word edge occupying two cyclically adjacent slots."""
    slots = d.crossings[c]
    for s in range(4):
        e1, _ = slots[s]
        e2, _ = slots[(s + 1) % 4]
        if e1 != e2 or d.edge_words[e1]:
            # not a lobe, or a decorated one; the opposite lobe may still do
            continue
        rest = [slots[(s + 2) % 4], slots[(s + 3) % 4]]
        u = next(e for e, end in rest if end == HEAD)
        v = next(e for e, end in rest if end == TAIL)
        return e1, u, v
    return None


def r1_remove(d: Diagram, c: int) -> Diagram:
    if not 0 <= c < d.n_crossings:
        raise ValueError(f"pattern-mismatch: no crossing {c}")
    found = kink_at(d, c)
    if found is None:
        raise ValueError(f"pattern-mismatch: crossing {c} is not a clean kink")
    kink, u, v = found
    return _splice(d, {c}, {kink}, {} if u == v else {u: v},
                   cycles=[(u,)] if u == v else [])


# ---------------------------------------------------------------------------
# pokes


def r2_add(d: Diagram, strands: tuple[Strand, Strand],
           splits: tuple[int | None, int | None] = (None, None),
           over: int = 2) -> Diagram:
    """Push one arc under another, creating a cancelling pair of crossings.

    ``over`` picks which of the two strands passes over (1 or 2).
    """
    if over not in (1, 2):
        raise ValueError("pattern-mismatch: over must be 1 or 2")
    if strands[0] == strands[1]:
        raise ValueError("pattern-mismatch: r2 needs two distinct arcs")
    if over == 2:
        (under, overs), (u_split, o_split) = strands, splits
    else:
        (overs, under), (o_split, u_split) = strands, splits
    words = list(d.edge_words)
    loops = list(d.free_loops)
    crossings = [list(slots) for slots in d.crossings]
    dead_loops = []

    def cut(strand: Strand, split: int | None) -> tuple[int, int, int]:
        """Returns (front edge, middle edge, rear edge) of the cut strand."""
        kind, idx = strand
        if kind == "edge":
            if not 0 <= idx < len(d.edge_words):
                raise ValueError(f"pattern-mismatch: no edge {idx}")
            w = words[idx]
            k = len(w) if split is None else split
            if not 0 <= k <= len(w):
                raise ValueError(f"pattern-mismatch: split {k} outside word of edge {idx}")
            mid = len(words)
            rear = mid + 1
            words[idx] = w[:k]
            words.append(())
            words.append(w[k:])
            hc, hs = d.edge_ends[idx][HEAD]
            crossings[hc][hs] = (rear, HEAD)
            return idx, mid, rear
        if not 0 <= idx < len(d.free_loops):
            raise ValueError(f"pattern-mismatch: no free loop {idx}")
        w = d.free_loops[idx]
        k = 0 if split is None else split % (len(w) or 1)
        arc = len(words)
        mid = arc + 1
        words.append(w[k:] + w[:k])
        words.append(())
        dead_loops.append(idx)
        return arc, mid, arc

    u_a, u_m, u_b = cut(under, u_split)
    o_a, o_m, o_b = cut(overs, o_split)
    crossings.append([(u_a, HEAD), (o_m, TAIL), (u_m, TAIL), (o_a, HEAD)])  # sign +
    crossings.append([(u_m, HEAD), (o_m, HEAD), (u_b, TAIL), (o_b, TAIL)])  # sign -
    for idx in sorted(dead_loops, reverse=True):
        loops.pop(idx)
    return Diagram(d.genus, tuple(words), tuple(tuple(c) for c in crossings),
                   tuple(loops))


def bigon_at(d: Diagram, c1: int, c2: int):
    """(under middle, over middle, outer under pair, outer over pair) of a
    removable poke between crossings c1 and c2, else None.

    Removable means one strand passes over at both crossings, both middle
    arcs are undecorated, and the crossing signs cancel.
    """
    if c1 == c2:
        return None
    under_slots = {(c1, 0), (c1, 2), (c2, 0), (c2, 2)}
    mu = mo = None
    for e in range(len(d.edge_words)):
        if d.edge_words[e]:
            continue
        t, h = d.edge_ends[e]
        if {t[0], h[0]} != {c1, c2}:
            continue
        t_under, h_under = t in under_slots, h in under_slots
        if t_under and h_under and mu is None:
            mu = e
        elif not t_under and not h_under and mo is None:
            mo = e
    if mu is None or mo is None:
        return None
    if crossing_sign(d, c1) + crossing_sign(d, c2) != 0:
        return None
    cu_from, cu_to = d.edge_ends[mu][TAIL][0], d.edge_ends[mu][HEAD][0]
    u_a = d.crossings[cu_from][0][0]
    u_b = d.crossings[cu_to][2][0]
    (cf, sf), (ct, st) = d.edge_ends[mo][TAIL], d.edge_ends[mo][HEAD]
    o_a = d.crossings[cf][sf ^ 2][0]  # the other over slot: 1 <-> 3
    o_b = d.crossings[ct][st ^ 2][0]
    return mu, mo, (u_a, u_b), (o_a, o_b)


def r2_remove(d: Diagram, c1: int, c2: int) -> Diagram:
    for c in (c1, c2):
        if not 0 <= c < d.n_crossings:
            raise ValueError(f"pattern-mismatch: no crossing {c}")
    found = bigon_at(d, c1, c2)
    if found is None:
        raise ValueError(
            f"pattern-mismatch: crossings {c1},{c2} do not bound a removable poke")
    mu, mo, (u_a, u_b), (o_a, o_b) = found
    succ = {}
    cycles = []
    if u_a == u_b and o_a == o_b:
        cycles = [(u_a,), (o_a,)]
    elif u_a == u_b:
        cycles = [(u_a,)]
        succ[o_a] = o_b
    elif o_a == o_b:
        cycles = [(o_a,)]
        succ[u_a] = u_b
    elif u_a == o_b and o_a == u_b:
        cycles = [(u_a, o_a)]  # the two outer arcs close up into one loop
    else:
        succ[u_a] = u_b
        succ[o_a] = o_b
    return _splice(d, {c1, c2}, {mu, mo}, succ, cycles)


# ---------------------------------------------------------------------------
# triangle slide


def r3(d: Diagram, ta: int, tb: int, tc: int) -> Diagram:
    """Slide a strand across a crossing: the three undecorated arcs bounding
    the triangle reverse, every strand meets its two crossings in the other
    order, and all crossing signs and over/under assignments stay put.
    """
    tri = (ta, tb, tc)
    if len(set(tri)) != 3:
        raise ValueError("pattern-mismatch: r3 needs three distinct arcs")
    for t in tri:
        if not 0 <= t < len(d.edge_words):
            raise ValueError(f"pattern-mismatch: no edge {t}")
        if d.edge_words[t]:
            raise ValueError(f"nonlocal-words: triangle arc {t} is decorated")
    pairs = []
    for t in tri:
        tail, head = d.edge_ends[t]
        pairs.append((tail[0], head[0]))
    crossings = {c for pq in pairs for c in pq}
    sides = {frozenset(pq) for pq in pairs}
    if (len(crossings) != 3 or len(sides) != 3
            or any(len(s) != 2 for s in sides)):
        raise ValueError("pattern-mismatch: arcs do not bound a triangle")
    ends_by_crossing: dict[int, list[int]] = {c: [] for c in crossings}
    for t in tri:
        for loc in d.edge_ends[t]:
            ends_by_crossing[loc[0]].append(loc[1])
    for c, ss in ends_by_crossing.items():
        if sorted(s % 2 for s in ss) != [0, 1]:
            raise ValueError(
                f"pattern-mismatch: triangle meets both passages of crossing {c}"
                " unevenly")

    new = [list(slots) for slots in d.crossings]
    for t in tri:
        (pc, ps), (qc, qs) = d.edge_ends[t]
        # passage slots at the first crossing: t leaves it, so ps is an out slot
        in_p = 0 if ps % 2 == 0 else (ps ^ 2)
        u = d.crossings[pc][in_p][0]
        # passage slots at the second crossing: t enters it, so qs is an in slot
        out_q = 2 if qs % 2 == 0 else (qs ^ 2)
        v = d.crossings[qc][out_q][0]
        new[pc][in_p] = (t, HEAD)
        new[pc][ps] = (v, TAIL)
        new[qc][qs] = (u, HEAD)
        new[qc][out_q] = (t, TAIL)
    out = Diagram(d.genus, d.edge_words, tuple(tuple(c) for c in new), d.free_loops)
    problems = validate(out)
    if problems:
        raise ValueError("pattern-mismatch: slide produced an invalid diagram: "
                         + "; ".join(problems))
    return out


# ---------------------------------------------------------------------------
# splicing out removed crossings


def _splice(d: Diagram, dead_crossings: set[int], dead_edges: set[int],
            succ: dict[int, int], cycles: list[tuple[int, ...]]) -> Diagram:
    """Rebuild after deleting crossings/arcs.

    succ maps an arc to the arc its head now feeds (chains concatenate into
    one edge); cycles are arc tuples that close up into free loops.
    """
    alias: dict[int, int] = {}
    merged_words: dict[int, Word] = {}
    consumed: set[int] = set()
    starts = [e for e in sorted(succ) if e not in succ.values()]
    for start in starts:
        chain = [start]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        word: Word = ()
        for e in chain:
            alias[e] = start
            word += d.edge_words[e]
            if e != start:
                consumed.add(e)
        merged_words[start] = word
    new_loops = list(d.free_loops)
    for cyc in cycles:
        word = ()
        for e in cyc:
            consumed.add(e)
        start = min(cyc)
        k = cyc.index(start)
        for e in cyc[k:] + cyc[:k]:
            word += d.edge_words[e]
        new_loops.append(word)

    keep = [e for e in range(len(d.edge_words))
            if e not in dead_edges and e not in consumed]
    renum = {e: n for n, e in enumerate(keep)}
    words = tuple(merged_words.get(e, d.edge_words[e]) for e in keep)
    crossings = []
    for c, slots in enumerate(d.crossings):
        if c in dead_crossings:
            continue
        crossings.append(tuple(
            (renum[alias.get(e, e)], end) for e, end in slots))
    return Diagram(d.genus, words, tuple(crossings), tuple(new_loops))


# ---------------------------------------------------------------------------
# site enumeration for the invariance harness


def r1_remove_sites(d: Diagram) -> list[MoveSpec]:
    return [MoveSpec("r1rm", {"crossing": c})
            for c in range(d.n_crossings) if kink_at(d, c) is not None]


def r2_remove_sites(d: Diagram) -> list[MoveSpec]:
    out = []
    for c1 in range(d.n_crossings):
        for c2 in range(c1 + 1, d.n_crossings):
            if bigon_at(d, c1, c2) is not None:
                out.append(MoveSpec("r2rm", {"crossings": (c1, c2)}))
    return out


def r1_add_sites(d: Diagram) -> list[MoveSpec]:
    out = []
    for e in range(len(d.edge_words)):
        out.append(MoveSpec("r1+", {"edge": e}))
        out.append(MoveSpec("r1-", {"edge": e}))
    for l in range(len(d.free_loops)):
        out.append(MoveSpec("r1+", {"loop": l}))
        out.append(MoveSpec("r1-", {"loop": l}))
    return out


def r2_add_sites(d: Diagram) -> list[MoveSpec]:
    strands: list[Strand] = [("edge", e) for e in range(len(d.edge_words))]
    strands += [("loop", l) for l in range(len(d.free_loops))]
    out = []
    for a in range(len(strands)):
        for b in range(a + 1, len(strands)):
            for over in (1, 2):
                params: dict = {"over": over}
                s1, s2 = strands[a], strands[b]
                if s1[0] == "edge" and s2[0] == "edge":
                    params["edges"] = (s1[1], s2[1])
                elif s1[0] == "loop" and s2[0] == "loop":
                    params["loops"] = (s1[1], s2[1])
                else:
                    e, l = (s1, s2) if s1[0] == "edge" else (s2, s1)
                    params["edge"], params["loop"] = e[1], l[1]
                out.append(MoveSpec("r2", params))
    return out
