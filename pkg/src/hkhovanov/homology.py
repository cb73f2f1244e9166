"""Homology tables of the sliced chain complexes, comparison and reporting.

Within one (quantum, class-weighted) slice the boundary maps are plain GF(2)
matrices, so the homology dimension at degree i is
dim ker(d_i) - rank(d_{i-1}) = dims[i] - rank(d_i) - rank(d_{i-1}).
The output is a finite table (i, j, h) -> dimension with zero entries
dropped; over a field that table is the whole invariant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .chain import ChainComplex, build_complex
from .diagram import Diagram
from .words import (
    GradingElem,
    torus_class_exponents,
    word_to_str,
)

GradingTriple = tuple[int, int, GradingElem]


@dataclass
class HomologyTable:
    genus: int
    flavor: str
    entries: dict[GradingTriple, int] = field(default_factory=dict)

    def total_dim(self) -> int:
        return sum(self.entries.values())

    def sorted_items(self) -> list[tuple[GradingTriple, int]]:
        return sorted(self.entries.items(),
                      key=lambda kv: (kv[0][0], kv[0][1], kv[0][2].sort_key()))


def homology_table(cx: ChainComplex) -> HomologyTable:
    table = HomologyTable(cx.genus, cx.flavor)
    for (j, h), sc in cx.slices.items():
        ranks = {i: mat.rank() for i, mat in sc.mats.items()}
        for i, dim in sc.dims.items():
            hom = dim - ranks.get(i, 0) - ranks.get(i - 1, 0)
            if hom < 0:
                raise RuntimeError("rank bookkeeping produced a negative dimension")
            if hom:
                table.entries[(i, j, h)] = hom
    return table


def kh_h(d: Diagram, shift: bool = True, reverse_circles: bool = False,
         invert_circle_words: bool = False) -> HomologyTable:
    return homology_table(build_complex(
        d, "homotopical", shift=shift, reverse_circles=reverse_circles,
        invert_circle_words=invert_circle_words))


def kh_classical(d: Diagram, shift: bool = True) -> HomologyTable:
    return homology_table(build_complex(d, "classical", shift=shift))


def euler_consistent(cx: ChainComplex, table: HomologyTable) -> bool:
    """Alternating sums of chain and homology dimensions agree per slice."""
    for (j, h), sc in cx.slices.items():
        chain_sum = sum((-1) ** (i & 1) * dim for i, dim in sc.dims.items())
        hom_sum = sum((-1) ** (i & 1) * dim
                      for (i, jj, hh), dim in table.entries.items()
                      if jj == j and hh == h)
        if chain_sum != hom_sum:
            return False
    return True


def compare(a: HomologyTable, b: HomologyTable,
            remap: Callable[[GradingTriple], GradingTriple] | None = None,
            ) -> tuple[bool, str | None]:
    """Entrywise equality, optionally after remapping a's grading triples."""
    left = a.entries
    if remap is not None:
        left = {}
        for key, dim in a.entries.items():
            new = remap(key)
            left[new] = left.get(new, 0) + dim
    if left == b.entries:
        return True, None
    keys = sorted(set(left) | set(b.entries),
                  key=lambda k: (k[0], k[1], k[2].sort_key()))
    for key in keys:
        x, y = left.get(key, 0), b.entries.get(key, 0)
        if x != y:
            i, j, h = key
            return False, f"({i},{j},{h}): {x} vs {y}"
    return True, None


# ---------------------------------------------------------------------------
# rendering


def render_h(h: GradingElem, genus: int) -> str:
    if h.is_zero:
        return "0"
    body = "+".join(f"{k}*[{word_to_str(c.letters, genus)}]" for c, k in h.terms)
    return body.replace("+-", "-")


def _legend(table: HomologyTable) -> list[tuple[str, tuple[int, int]]]:
    """Torus classes appearing in the table, with their exponent pairs."""
    seen = {}
    for (_, _, h) in table.entries:
        for cls, _ in h.terms:
            seen[cls] = torus_class_exponents(cls)
    return sorted(((f"[{word_to_str(c.letters, 1)}]", pq) for c, pq in seen.items()),
                  key=lambda t: t[0])


def poincare_report(table: HomologyTable, fmt: str = "text",
                    meta: dict | None = None) -> str:
    """Deterministic rendering of a homology table.

    text: one "(i,j,h) : dim" line per entry; torus tables get a legend of
    (p,q) exponent pairs.  tsv: header plus tab-separated columns.  json: a
    single object with the table as a list, meta keys merged at top level.
    """
    items = table.sorted_items()
    if fmt == "text":
        lines = [f"# flavor={table.flavor} genus={table.genus}"]
        if meta:
            lines += [f"# {k}={v}" for k, v in sorted(meta.items())]
        lines += [f"({i},{j},{render_h(h, table.genus)}) : {dim}"
                  for (i, j, h), dim in items]
        lines.append(f"# total dimension {table.total_dim()}")
        if table.genus == 1:
            lines += [f"# {name} = {pq}" for name, pq in _legend(table)]
        return "\n".join(lines) + "\n"
    if fmt == "tsv":
        lines = ["i\tj\th\tdim"]
        lines += [f"{i}\t{j}\t{render_h(h, table.genus)}\t{dim}"
                  for (i, j, h), dim in items]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = dict(meta or {})
        doc["flavor"] = table.flavor
        doc["genus"] = table.genus
        doc["table"] = [
            {"i": i, "j": j, "h": render_h(h, table.genus), "dim": dim}
            for (i, j, h), dim in items
        ]
        if table.genus == 1:
            doc["legend"] = {name: list(pq) for name, pq in _legend(table)}
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
