"""Closures of braid words as surface diagrams.

A braid word is a list of nonzero integers: k means strand k-1 passes over
strand k (positions are 0-based, generators 1-based as usual), -k the
reverse.  Every crossing made by generator k is positive, by -k negative.
The closure arcs may carry words, which is how a classical braid gets
embedded in a higher genus surface in an interesting way.
"""

from __future__ import annotations

from .diagram import Diagram, HEAD, TAIL
from .words import parse_word


def braid_closure(letters: list[int], strands: int, genus: int = 0,
                  closure_words: list[str] | None = None) -> Diagram:
    if strands < 1:
        raise ValueError("need at least one strand")
    if closure_words is None:
        closure_words = [""] * strands
    if len(closure_words) != strands:
        raise ValueError("one closure word per strand position")
    next_id = 0

    def alloc() -> int:
        nonlocal next_id
        next_id += 1
        return next_id - 1

    first = [alloc() for _ in range(strands)]
    cur = list(first)
    crossings = []
    for v in letters:
        k = abs(v)
        if v == 0 or k >= strands:
            raise ValueError(f"generator {v} out of range for {strands} strands")
        a, b = alloc(), alloc()
        # slots run counterclockwise from the under-in ray; with the braid
        # flowing downward the rays read NW, SW, SE, NE
        if v > 0:
            crossings.append(((cur[k - 1], HEAD), (a, TAIL), (b, TAIL),
                              (cur[k], HEAD)))
        else:
            crossings.append(((cur[k], HEAD), (cur[k - 1], HEAD), (a, TAIL),
                              (b, TAIL)))
        cur[k - 1], cur[k] = a, b

    words = {e: () for e in range(next_id)}
    alias: dict[int, int] = {}
    drop: set[int] = set()
    free_loops = []
    for p in range(strands):
        w = parse_word(closure_words[p], genus)
        if cur[p] == first[p]:
            free_loops.append(w)
            drop.add(first[p])
        else:
            words[cur[p]] = w  # the closure arc carries the word
            alias[first[p]] = cur[p]
            drop.add(first[p])
    keep = [e for e in range(next_id) if e not in drop]
    renum = {e: n for n, e in enumerate(keep)}
    new_crossings = tuple(
        tuple((renum[alias.get(e, e)], end) for e, end in slots)
        for slots in crossings)
    edge_words = tuple(words[e] for e in keep)
    return Diagram(genus, edge_words, new_crossings, tuple(free_loops))
