"""Exact computation of Kloosterman-sum power moments over GF(3^r) through
the ternary codes of the minus-type orthogonal groups."""

from .charsums import (
    DeltaTable,
    OmegaSum,
    delta_count,
    kloosterman,
    kloosterman_omega,
    omega_reduce,
    sk_moment,
)
from .codes import (
    CodeSpec,
    WeightPrefix,
    build_code_spec,
    codeword_weight,
    codeword_weight_formula,
    dual_codeword,
    weight_prefix_bruteforce,
    weight_prefix_dp,
)
from .combinat import stirling2, trinomial
from .errors import (
    CapacityError,
    ConsistencyError,
    DomainError,
    FieldConstructionError,
    KloosterError,
)
from .gauss import (
    GaussSumRequest,
    b_r_closed,
    gauss_sum_closed,
    gauss_sum_enumerated,
    kloosterman_gl,
    q_binomial,
)
from .gf3r import FieldContext, field_create, field_ops, load_modulus_config
from .moments import (
    MomentReport,
    PlessCheck,
    pless_check,
    sk2_recursive,
    sk2_recursive_chain,
    sk_initial,
    sk_recursive,
    sk_recursive_chain,
    verify_report,
)
from .ogroups import (
    GroupId,
    TraceHistogram,
    enumerate_group,
    group_order,
    histogram_closed_form,
    o_minus_order,
    so_minus_order,
)

__version__ = "0.1.0"
