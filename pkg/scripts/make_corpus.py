#!/usr/bin/env python3
"""Regenerate the corpus data files.

Everything here is deterministic; the files are committed so tests can
reference stable inputs.  The two-crossing torus link file bakes in the
first hit of scripts/search_torus_link.py.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hkhovanov.braid import braid_closure
from hkhovanov.diagram import Diagram, diagram_to_json, validate
from hkhovanov.moves import MoveSpec, apply_move
from hkhovanov.words import parse_word

OUT = pathlib.Path(__file__).resolve().parents[1] / "corpus"


def loops_diagram(genus: int, *words: str) -> Diagram:
    return Diagram(genus, (), (), tuple(parse_word(w, genus) for w in words))


def build() -> dict[str, Diagram]:
    unknot = loops_diagram(0, "")
    d = {
        "unknot": unknot,
        "kink_plus": apply_move(unknot, MoveSpec("r1+", {"loop": 0})),
        "kink_minus": apply_move(unknot, MoveSpec("r1-", {"loop": 0})),
        "clasp_plus": braid_closure([1, 1], 2),
        "clasp_minus": braid_closure([-1, -1], 2),
        "loop_trivial": loops_diagram(1, ""),
        "loop_a": loops_diagram(1, "a"),
        "loop_b": loops_diagram(1, "b"),
        "loop_ab": loops_diagram(1, "a b"),
        "genus2_loops": loops_diagram(2, "a1 b1", "a2"),
        "trefoil_rh": braid_closure([1, 1, 1], 2),
        "trefoil_lh": braid_closure([-1, -1, -1], 2),
        "fig8": braid_closure([1, -2, 1, -2], 3),
        "trefoil_g1": braid_closure([1, 1, 1], 2, genus=1,
                                    closure_words=["a", ""]),
        "perf12_genus1": braid_closure([1, 2, 3] * 4, 4, genus=1,
                                       closure_words=["a", "", "", ""]),
    }
    # one crossing whose both resolutions keep a single circle: the
    # differential through it vanishes in both flavors
    d["neutral1"] = Diagram(
        1,
        (parse_word("a", 1), parse_word("b", 1)),
        (((0, 1), (1, 1), (0, 0), (1, 0)),),
        ())
    # two-crossing torus link whose homotopical table is (Z2)^8 carrying the
    # longitude and meridian classes; found by search_torus_link.py
    d["torus_link2"] = Diagram(
        1,
        tuple(parse_word(w, 1) for w in ("", "a", "A b", "b")),
        (((2, 1), (3, 1), (0, 0), (1, 0)),
         ((0, 1), (3, 0), (2, 0), (1, 1))),
        ())
    return d


def main() -> int:
    OUT.mkdir(exist_ok=True)
    for name, d in sorted(build().items()):
        bad = validate(d)
        if bad:
            print(f"{name}: INVALID: {bad}")
            return 1
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(diagram_to_json(d), indent=1) + "\n")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
