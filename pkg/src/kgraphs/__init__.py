"""Finite higher-rank graphs: skeletons, duals, words, and exact K-theory."""

from .core import (
    Edge,
    KGraph,
    Path,
    Square,
    StructuralReport,
    ValidationReport,
    compose,
    coordinate_matrix,
    count_paths,
    normalize,
    paths_from,
    relabeled,
    segment,
    structural_report,
    validate,
)
from .degree import Degree, lattice_points
from .dual import DualGraph, build_dual, dual, dual_matrix, iterated_dual_equal, name_of
from .errors import (
    ConnectorError,
    DualSizeError,
    EnumerationCapError,
    InvalidGraphError,
    KGraphError,
    NotComposableError,
    ParseError,
    WordError,
)
from .intlinalg import (
    CokernelResult,
    SNFResult,
    cokernel,
    rational_rank,
    smith_normal_form,
    snf_oracle_minor_gcd,
)
from .io import load_kgraph, parse_kgraph, save_kgraph, serialize_kgraph
from .ktheory import (
    KTheoryResult,
    format_group,
    k_groups,
    mode_agreement,
    qualifies_rs,
)
from .matrix import IntMatrix
from .words import (
    AperiodicPrefix,
    RSReport,
    Word,
    aperiodic_prefix,
    check_rs,
    h2_iff_strongly_connected,
    letters_at,
    path_of_word,
    spiral_offsets,
    word_of_path,
)

__version__ = "0.1.0"

__all__ = [
    "AperiodicPrefix",
    "CokernelResult",
    "ConnectorError",
    "Degree",
    "DualGraph",
    "DualSizeError",
    "Edge",
    "EnumerationCapError",
    "IntMatrix",
    "InvalidGraphError",
    "KGraph",
    "KGraphError",
    "KTheoryResult",
    "NotComposableError",
    "ParseError",
    "Path",
    "RSReport",
    "SNFResult",
    "Square",
    "StructuralReport",
    "ValidationReport",
    "Word",
    "WordError",
    "aperiodic_prefix",
    "build_dual",
    "check_rs",
    "cokernel",
    "compose",
    "coordinate_matrix",
    "count_paths",
    "dual",
    "dual_matrix",
    "format_group",
    "h2_iff_strongly_connected",
    "iterated_dual_equal",
    "k_groups",
    "lattice_points",
    "letters_at",
    "load_kgraph",
    "mode_agreement",
    "name_of",
    "normalize",
    "parse_kgraph",
    "path_of_word",
    "paths_from",
    "qualifies_rs",
    "rational_rank",
    "relabeled",
    "save_kgraph",
    "segment",
    "serialize_kgraph",
    "smith_normal_form",
    "snf_oracle_minor_gcd",
    "spiral_offsets",
    "structural_report",
    "validate",
    "word_of_path",
]
