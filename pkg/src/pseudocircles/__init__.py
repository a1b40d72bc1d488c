"""Arrangements of pseudocircles as signed intersection codes.

The package builds the three unavoidable families C1, C2 and C3, decides
isomorphism, and extracts a certified copy of one of them from any large
enough arrangement.
"""

from .codes import (
    LEFT,
    MINUS,
    PLUS,
    RIGHT,
    Arrangement,
    ArcView,
    CodeError,
    ValidationReport,
    arcs,
    mirror,
    parse_arrangement,
    relabel,
    reorient,
    restrict,
    rotate_start,
    validate,
)
from .extraction import (
    BudgetExhausted,
    ExtractionResult,
    InvalidInput,
    NotFound,
    StageFailure,
    find_unavoidable,
    normalize_rainbow,
    rainbow_extract,
    rainbow_to_family,
)
from .families import (
    KRUPP,
    NONKRUPP,
    classify_triple,
    find_bad_labeling,
    gen_C1,
    gen_C2,
    gen_C3,
    gen_X4,
    generate,
    is_bad,
    is_packed,
    is_rainbow,
)
from .geometry import PlaneCircle, check_general_position, circles_to_arrangement, random_circles
from .isomorphism import (
    Certificate,
    FamilyId,
    Transform,
    apply,
    canonical_form,
    check_certificate,
    exhaustive_find,
    is_isomorphic,
)
from .pseudolines import (
    WiringDiagram,
    antipodal_cut,
    double_wiring,
    find_cyclic_subarrangement,
    gen_cyclic,
    is_cyclic,
)
from .ramsey import ColoredHypergraph, find_monochromatic, largest_monochromatic

__version__ = "0.1.0"
