"""Finite-model workbench for ill-founded membership universes."""

from .audit import (
    ABSENT,
    CYCLE,
    HOLDS,
    LEMMA_TAGS,
    LENGTH_CAP,
    MAIN_RESULT_NOTE,
    MULTIPLE,
    PREDECESSOR,
    SUCCESSOR,
    VACUOUS,
    VIOLATED,
    AxiomReport,
    Chain,
    LemmaReport,
    Verdict,
    check_axiom,
    trace_chain,
    verify_lemma_suite,
)
from .classifier import (
    ASCENDING,
    DESCENDING,
    PREDICATES,
    Classification,
    Link,
    classify,
    classify_all,
    comprehension_witness,
    is_lower,
    is_strictly_russellian,
    is_upper,
    link,
    nonself_mask,
    phi_link,
    predicate,
    russell_witness,
    self_mask,
)
from .dsl import (
    IndexSpec,
    UniverseDoc,
    UrelementDecl,
    parse_document,
    parse_universe,
    print_universe,
)
from .enumerator import (
    DEFAULT_MAX_N,
    FILTERS,
    HF_SIZES,
    EnumSpec,
    EnumStats,
    canonical_form,
    enumerate_universes,
    hf_universe,
)
from .errors import (
    CapExceededError,
    CollisionError,
    DslSyntaxError,
    DuplicateDefinitionError,
    LemmaViolationError,
    PoolExhaustedError,
    PreconditionError,
    SetlabError,
    UndefinedNameError,
    UnknownElementError,
    UntaggedUrelementWarning,
)
from .interp import (
    LEVEL_ONE,
    LEVEL_ZERO,
    SHARED_REP,
    BaseModel,
    ForsterReport,
    Index,
    RepToken,
    Sprig,
    UpperChainResult,
    complement_index,
    default_demo_model,
    extension_interp,
    find_universal,
    forster_demo_model,
    level_rep,
    listing_index,
    materialize,
    member_interp,
    model_from_doc,
    own_rep,
    parse_model,
    quine_universe,
    retag_counterexample_pair,
    sprig,
    universal_index,
    upper_chain_interp,
    verify_forster_counterexample,
)
from .universe import (
    Absent,
    ElementId,
    LookupResult,
    Multiple,
    Unique,
    Universe,
)

__version__ = "0.1.0"
