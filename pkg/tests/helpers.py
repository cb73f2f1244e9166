"""Small shared utilities for the test suite."""

from pathlib import Path

from hkhovanov import load_diagram

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

CORPUS_NAMES = sorted(p.stem for p in CORPUS.glob("*.json"))

# genus-0 inputs small enough for the brute-force classical oracle
SMALL_GENUS0 = ["unknot", "kink_plus", "kink_minus", "clasp_plus",
                "clasp_minus", "trefoil_rh", "trefoil_lh", "fig8"]


def corpus(name):
    return load_diagram(str(CORPUS / f"{name}.json"))


def corpus_path(name) -> str:
    return str(CORPUS / f"{name}.json")


def ij(table):
    """Project a homology table onto the (homological, quantum) plane."""
    out = {}
    for (i, j, _), dim in table.entries.items():
        out[(i, j)] = out.get((i, j), 0) + dim
    return out
