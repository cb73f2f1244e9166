"""Independent reference implementations used to cross-check the package.

Everything here is written the dumb way on purpose: dict-of-tuples vector
spaces, list-of-lists elimination, exhaustive searches.  No imports from
hkhovanov internals beyond the Diagram data itself.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from hkhovanov.diagram import Diagram, HEAD, TAIL, crossing_sign


def naive_rank(rows: list[list[int]]) -> int:
    """GF(2) rank by textbook elimination on lists of 0/1."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                rows[k] = [(a + b) % 2 for a, b in zip(rows[k], rows[r])]
        r += 1
        rank += 1
    return rank


def rational_rank(rows: list[list[int]]) -> int:
    """Rank over Q, for sanity checks where char 2 does not matter."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c] / rows[r][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        r += 1
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# torus words: the genus-1 class is just the exponent pair up to sign


def torus_class(word: tuple[int, ...]) -> tuple[int, int]:
    p = sum(1 if x == 1 else -1 for x in word if abs(x) == 1)
    q = sum(1 if x == 2 else -1 for x in word if abs(x) == 2)
    if (p, q) < (0, 0) or (p == 0 and q < 0) or (p < 0):
        p, q = -p, -q
    return (p, q)


# ---------------------------------------------------------------------------
# circles of a state, by union-find over crossing dart joins


def state_circles(d: Diagram, state: int) -> int:
    """Number of circles of a resolution, counted independently of cube.py:
    union-find on edge ends plus free loops."""
    # nodes: (edge, end) pairs; a smoothing joins slot pairs, an edge joins
    # its own two ends
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for e in range(len(d.edge_words)):
        union((e, TAIL), (e, HEAD))
    for c, slots in enumerate(d.crossings):
        if (state >> c) & 1:
            pairs = ((0, 3), (1, 2))
        else:
            pairs = ((0, 1), (2, 3))
        for s1, s2 in pairs:
            union(d.crossings[c][s1], d.crossings[c][s2])
    roots = {find((e, end)) for e in range(len(d.edge_words))
             for end in (TAIL, HEAD)}
    return len(roots) + len(d.free_loops)


# ---------------------------------------------------------------------------
# classical Khovanov homology over GF(2), dict-based


def classical_khovanov(d: Diagram) -> dict[tuple[int, int], int]:
    """(i, j) -> dim table, built from scratch: generators are (state,
    labels) pairs, the differential toggles one crossing and applies m or
    delta to explicit circle membership sets."""
    n = d.n_crossings
    n_plus = sum(1 for c in range(n) if crossing_sign(d, c) > 0)
    n_minus = n - n_plus

    def circles(state):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(len(d.edge_words)):
            parent[find((e, TAIL))] = find((e, HEAD))
        for c in range(n):
            pairs = ((0, 3), (1, 2)) if (state >> c) & 1 else ((0, 1), (2, 3))
            for s1, s2 in pairs:
                parent[find(d.crossings[c][s1])] = find(d.crossings[c][s2])
        groups: dict = {}
        for e in range(len(d.edge_words)):
            groups.setdefault(find((e, TAIL)), set()).add(e)
        ordered = sorted(groups.values(), key=min)
        ordered += [{("loop", k)} for k in range(len(d.free_loops))]
        return ordered

    meta = {s: circles(s) for s in range(1 << n)}

    def gens(state):
        return itertools.product((0, 1), repeat=len(meta[state]))

    # basis index per (i, j): list of (state, labels)
    basis: dict[tuple[int, int], list] = {}
    for s in range(1 << n):
        beta = bin(s).count("1")
        for labels in gens(s):
            j = sum(1 if x else -1 for x in labels) + beta
            key = (beta - n_minus, j + n_plus - 2 * n_minus)
            basis.setdefault(key, []).append((s, labels))
    index = {}
    for key, items in basis.items():
        for k, g in enumerate(items):
            index[g] = (key, k)

    def boundary(state, labels):
        out = []
        for c in range(n):
            if (state >> c) & 1:
                continue
            t = state | (1 << c)
            src, tgt = meta[state], meta[t]
            if len(tgt) == len(src) - 1:  # merge
                # the two source circles that fused
                fused = [k for k, grp in enumerate(src)
                         if not any(grp == g2 for g2 in tgt)]
                a, b = fused
                merged = src[a] | src[b]
                k_t = next(k for k, g2 in enumerate(tgt) if g2 == merged)
                la, lb = labels[a], labels[b]
                if la and lb:
                    outs = [1]
                elif la or lb:
                    outs = [0]
                else:
                    outs = []
                for o in outs:
                    new = []
                    for k2, grp in enumerate(tgt):
                        if k2 == k_t:
                            new.append(o)
                        else:
                            k_s = next(ks for ks, g1 in enumerate(src)
                                       if g1 == grp)
                            new.append(labels[k_s])
                    out.append((t, tuple(new)))
            elif len(tgt) == len(src) + 1:  # split
                split_k = next(k for k, grp in enumerate(src)
                               if not any(grp == g2 for g2 in tgt))
                parts = [k for k, g2 in enumerate(tgt)
                         if not any(g2 == g1 for g1 in src)]
                pa, pb = parts
                x = labels[split_k]
                pairs = [(1, 0), (0, 1)] if x else [(0, 0)]
                for oa, ob in pairs:
                    new = []
                    for k2, grp in enumerate(tgt):
                        if k2 == pa:
                            new.append(oa)
                        elif k2 == pb:
                            new.append(ob)
                        else:
                            k_s = next(ks for ks, g1 in enumerate(src)
                                       if g1 == grp)
                            new.append(labels[k_s])
                    out.append((t, tuple(new)))
            else:  # same circle count: no classical analogue, skip
                raise AssertionError("resolution circle count changed by 0")
        return out

    # assemble per-(i,j) matrices into the next (i+1, j) block and diff dims
    mats: dict[tuple[int, int], list[list[int]]] = {}
    for key, items in sorted(basis.items()):
        i, j = key
        nxt = basis.get((i + 1, j), [])
        if not nxt:
            continue
        mat = [[0] * len(nxt) for _ in items]
        for r, (s, labels) in enumerate(items):
            for g in boundary(s, labels):
                key2, col = index[g]
                assert key2 == (i + 1, j)
                mat[r][col] ^= 1
        mats[key] = mat

    table = {}
    for (i, j), items in sorted(basis.items()):
        r_out = naive_rank(mats.get((i, j), [])) if (i, j) in mats else 0
        r_in = naive_rank(mats.get((i - 1, j), [])) if (i - 1, j) in mats else 0
        dim = len(items) - r_out - r_in
        if dim:
            table[(i, j)] = dim
    return table


# published GF(2) Khovanov dimensions of the right-handed trefoil
TREFOIL_RH_GF2 = {(0, 1): 1, (0, 3): 1, (2, 5): 1, (2, 7): 1,
                  (3, 7): 1, (3, 9): 1}


# ---------------------------------------------------------------------------
# source-sink orientations by exhaustive search


def source_sink_exhaustive(d: Diagram) -> bool:
    """Try all edge re-orientations; alternation means the four slots read
    in, out, in, out or out, in, out, in around the crossing."""
    m = len(d.edge_words)
    if m > 16:
        raise ValueError("too big for the exhaustive oracle")
    for flips in range(1 << m):
        ok = True
        for slots in d.crossings:
            flow = []
            for e, end in slots:
                inward = end == HEAD
                if (flips >> e) & 1:
                    inward = not inward
                flow.append(inward)
            if flow not in ([True, False, True, False],
                            [False, True, False, True]):
                ok = False
                break
        if ok:
            return True
    return False
