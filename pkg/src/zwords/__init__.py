"""Constructive combinatorics for two-sided located words: Schreier
families over Cantor normal form ordinals, the word substitution algebra,
tuple-family closures with Cantor-Bendixson indices, the exact codec
between rationals and words, and desk-scale partition witness search."""

from .ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalError,
    classify,
    compare,
    format_ordinal,
    from_int,
    fundamental_sequence,
    omega_power,
    parse_ordinal,
    predecessor_sequence,
)
from .schreier import (
    CanonicalDecomposition,
    SchreierError,
    canonical_decompose,
    enumerate_members,
    is_member,
    is_proper_initial,
    restriction_check,
)
from .words import (
    ABS,
    VARIABLE,
    DominationProfile,
    LocatedWord,
    OrderlyTuple,
    WordError,
    concat,
    extracted_sets,
    format_word,
    h_map,
    is_extraction,
    make_tuple,
    make_word,
    merge,
    pair_enumeration,
    parse_profile,
    parse_word,
    project_positive,
    rel_r1,
    rel_r2,
    substitute,
    substitute_nat,
)
from .families import (
    FamilyError,
    WordFamily,
    cb_derivative,
    cb_index,
    family_at,
    family_minus,
    family_of,
    hereditary_closure,
    l_xi_member,
    largest_hereditary,
    serialize_tuple,
    set_family_cb_index,
    tree_closure,
)
from .rationals import (
    RationalCodecError,
    decode,
    encode,
    evaluate,
    integer_alt_factorial,
    q_xi_member,
    rational_pattern,
    rational_precedes,
)
from .search import (
    Coloring,
    INT_LINEAR,
    SearchCapExceeded,
    SearchError,
    SearchReport,
    SearchWindow,
    SemigroupSpec,
    fs_enumerate,
    fs_two_sided,
    hj_witness_search,
    length_slice,
    psi_map,
    semigroup_pattern,
    verify_witness,
    verify_xi_witness,
    word_length,
    xi_witness_search,
    z_fin_set_less,
)

__version__ = "0.1.0"
