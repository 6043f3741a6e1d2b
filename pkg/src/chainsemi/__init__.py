"""Semigroups of partial contractions of a finite chain.

Enumeration of P_n, CP_n, OCP_n, ORCP_n, CT_n and OCT_n; Green's and starred
Green's relations by brute-force oracle and by closed-form characterization;
abundance, regularity and strongly regular elements; and a claim-by-claim
verification harness with a command line front end.
"""

from .estimators import GreenPartition, PropertyEncoder, RegularityClassifier
from .exceptions import *  # noqa: F401,F403
from .families import ElementSet, FamilyTag, enumerate_family, member, verify_closure
from .green import (
    Relation,
    RelationClasses,
    abundance,
    classic_classes,
    jstar_classes,
    star_classes_char,
    star_classes_oracle,
)
from .maps import (
    KernelPartition,
    PartialMap,
    PropertySet,
    canonical_id,
    classify,
    compose,
    decode,
    is_idempotent_via_fixpoints,
    kernel,
    make,
)
from .regularity import (
    is_regular,
    is_strongly_regular,
    product_of_regulars_counterexample,
    regular_char_orcp,
    sreg,
    verify_idempotent_form,
    verify_sreg_closure,
)
from .report import Config, VerificationReport, verify
from .transversals import (
    Transversal,
    all_transversals,
    is_admissible,
    is_convex,
    is_relatively_convex,
    lemma_witness,
)

__version__ = "0.1.0"
