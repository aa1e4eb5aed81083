"""Exact Birch-Swinnerton-Dyer special-value data over F_q(t).

Computes every term of the special-value formula for a non-isotrivial
elliptic curve over a rational function field of odd characteristic >= 5:
the L-function as an integer polynomial (by two independent routes), local
reduction data and Tamagawa numbers, canonical heights and the regulator,
the coherent Euler characteristic, and the analytic order of the
Tate-Shafarevich group the formula implies.  All arithmetic is exact.
"""

from .ff import (
    ExtFieldElement,
    FieldElement,
    FieldSpec,
    Fq,
    FqExt,
    build_tower,
    frobenius,
    quadratic_character,
)
from .funcfield import (
    Place,
    Poly,
    RationalFunction,
    enumerate_places,
    factor,
    residue,
    valuation,
)
from .curve import (
    Curve,
    HeightPairingMatrix,
    KPoint,
    MWInput,
    UnsupportedCurveError,
    canonical_height,
    height_pairing,
    naive_height,
    torsion_bound,
)
from .localred import (
    InternalCheckError,
    LocalData,
    conductor_degree,
    count_reduced_points,
    euler_factor,
    local_data,
    verify_special_value,
)
from .lseries import LSeries, TraceSum, assemble_L_euler, assemble_L_exp, \
    compute_lseries, rank_and_leading, trace_sum
from .bsd import (
    BSDReport,
    GlobalInvariants,
    InputError,
    assemble_report,
    chi_weil_etale,
    global_invariants,
    measure_identity_trace,
    riemann_roch_check,
)

__version__ = "0.1.0"
