"""Triply graded homotopical Khovanov homology over GF(2) for links in
thickened closed oriented surfaces.

The grading triple is (homological degree, quantum degree, a formal sum of
free homotopy classes of the resolution circles).  At genus zero the third
grading vanishes and the classical GF(2) Khovanov homology comes back.
"""

from .braid import braid_closure
from .chain import build_complex, differential_squares_to_zero, verify_table1
from .diagram import (
    Diagram,
    diagram_from_json,
    diagram_to_json,
    load_diagram,
    mirror,
    reverse_orientation,
    validate,
)
from .homology import (
    HomologyTable,
    compare,
    euler_consistent,
    kh_classical,
    kh_h,
    poincare_report,
)
from .moves import MoveSpec, apply_move
from .words import Surface, parse_word, word_to_str

__version__ = "0.1.0"

__all__ = [
    "braid_closure",
    "build_complex",
    "differential_squares_to_zero",
    "verify_table1",
    "Diagram",
    "diagram_from_json",
    "diagram_to_json",
    "load_diagram",
    "mirror",
    "reverse_orientation",
    "validate",
    "HomologyTable",
    "compare",
    "euler_consistent",
    "kh_classical",
    "kh_h",
    "poincare_report",
    "MoveSpec",
    "apply_move",
    "Surface",
    "parse_word",
    "word_to_str",
    "__version__",
]
