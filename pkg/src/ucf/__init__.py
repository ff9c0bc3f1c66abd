"""Exact bounds, chain decompositions, and audits for union-closed set families."""

from .bounds import (
    BoundReport,
    DyadicRational,
    binomial,
    bound_report,
    chain_identity_check,
    erdos_bound,
    geometric_sum,
    p_hat,
    reimer_check,
    theorem1_bound,
    theorem2_bound,
    theta,
    theta_min_scan,
)
from .decomposition import (
    Block,
    Decomposition,
    VerificationRecord,
    build_decomposition,
    max_chain,
    verify_decomposition,
)
from .enumeration import AuditReport, audit, enumerate_exhaustive, sample_random
from .family import (
    Chain,
    NotUnionClosedError,
    SetFamily,
    element_frequencies,
    elements_of,
    is_union_closed,
    length,
    mask_from_elements,
    split_on_element,
    top_layers,
    union_closure,
    universe,
)
from .ucfio import UcfParseError, dump_ucf, format_ucf, load_ucf, parse_ucf

__version__ = "0.1.0"
