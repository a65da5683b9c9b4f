"""Small-intersection and disjoint summation over commutative semigroups.

The core objects are arithmetic circuits whose only operation is the
semigroup addition.  Builders produce circuits for the two summation
families, `evaluate` runs them over any registered algebra instance, and
the application layer uses them for path counting, rectangular
permanents, and disjoint feature-subset queries.
"""

from .algebra import (
    CONTRACTS,
    COUNT_WEIGHT,
    FREE_MULTISET,
    IDENTITY,
    MAX_WEIGHT,
    MIN_PLUS,
    NAT_SUM,
    WITNESS_MAX,
    WORD_SUM,
    CountingContract,
    Multiset,
    SemigroupContract,
    SemiringContract,
    check_axioms,
    fold,
    oplus,
    otimes,
)
from .apps import (
    FeatureTable,
    Graph,
    featsel_brute_force,
    featsel_precompute,
    featsel_query,
    kpath_count,
    oracle_kpath,
    oracle_permanent,
    permanent,
)
from .builders import (
    build_p1,
    build_pq,
    build_q1,
    build_valiant,
    build_yates,
    predicted_gate_count,
)
from .circuit import (
    AddGate,
    Circuit,
    GateCounts,
    InputGate,
    deserialize,
    evaluate,
    evaluate_gates,
    gate_counts,
    serialize,
    to_dot,
    validate,
)
from .errors import CircuitFormatError, FormatError, ScaleGuardError
from .summation import (
    disjoint_sum,
    intersection_sum,
    oracle_disjoint,
    oracle_intersection,
    pair_sum,
)
from .universe import Subset, Universe
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "AddGate",
    "CONTRACTS",
    "COUNT_WEIGHT",
    "Circuit",
    "CircuitFormatError",
    "CountingContract",
    "FREE_MULTISET",
    "FeatureTable",
    "FormatError",
    "GateCounts",
    "Graph",
    "IDENTITY",
    "InputGate",
    "MAX_WEIGHT",
    "MIN_PLUS",
    "Multiset",
    "NAT_SUM",
    "ScaleGuardError",
    "SemigroupContract",
    "SemiringContract",
    "Subset",
    "Universe",
    "WITNESS_MAX",
    "WORD_SUM",
    "build_p1",
    "build_pq",
    "build_q1",
    "build_valiant",
    "build_yates",
    "check_axioms",
    "deserialize",
    "disjoint_sum",
    "evaluate",
    "evaluate_gates",
    "featsel_brute_force",
    "featsel_precompute",
    "featsel_query",
    "fold",
    "gate_counts",
    "intersection_sum",
    "kpath_count",
    "oplus",
    "oracle_disjoint",
    "oracle_intersection",
    "oracle_kpath",
    "oracle_permanent",
    "otimes",
    "pair_sum",
    "permanent",
    "predicted_gate_count",
    "run_verify",
    "serialize",
    "to_dot",
    "validate",
]
