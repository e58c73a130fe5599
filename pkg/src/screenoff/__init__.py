"""Exact model checking for screening-off conditions on causal partial orders.

Everything is computed in exact rational (or complex-rational) arithmetic:
a verdict of "holds" means the condition was verified, not approximated.
The public surface re-exported here covers the order/event layer, the two
model kinds with their checks, the model file format, and the built-in
model corpus; ``screenoff.cli.main`` backs the ``screenoff`` console script.
"""

from .corpus import (
    CorpusEntry,
    CorpusError,
    builtin,
    corpus_entries,
    corpus_names,
    fuzz_equivalence,
    random_deterministic_local,
    random_diagonal_quantal,
    random_quantal,
    random_stochastic,
    verify_corpus,
)
from .events import (
    dom,
    full_specifications,
    history_digits,
    history_index,
    n_histories,
    omega,
    restriction,
    verify_dom_axioms,
    verify_fullspec_lemmas,
)
from .exprs import ExpressionError, parse_event
from .modelfile import (
    LoadedModel,
    ModelFileError,
    load_model,
    parse_model,
    parse_model_text,
    render_model,
    render_model_json,
)
from .order import CausalSite, NotSpacelikeError, OrderError, RegionError
from .quantal import (
    ComplexFraction,
    PseudoEvent,
    QuantalError,
    QuantalModel,
    check_qso1,
    check_qso2,
    diagonal_reduction,
    validate_quantal,
    verify_quantal_lemmas,
)
from .report import (
    HOLDS,
    VACUOUS,
    VIOLATED,
    CheckReport,
    Counterexample,
    EventRef,
    InternalCheckError,
)
from .stochastic import (
    MeasureError,
    PreconditionError,
    SelectorError,
    StochasticModel,
    check_generalized_so,
    check_multi_so,
    check_pcc_original,
    check_pcc_rev1,
    check_pcc_rev2,
    check_penrose_percival,
    check_so1,
    check_so2,
    check_so2w,
    check_wrc,
    correlated,
    deterministic_local_model,
    deterministic_local_satisfies_so1,
    find_screening_events,
    find_simpson_events,
)

__version__ = "0.1.0"

__all__ = [
    "CausalSite",
    "CheckReport",
    "ComplexFraction",
    "CorpusEntry",
    "CorpusError",
    "Counterexample",
    "EventRef",
    "ExpressionError",
    "HOLDS",
    "InternalCheckError",
    "LoadedModel",
    "MeasureError",
    "ModelFileError",
    "NotSpacelikeError",
    "OrderError",
    "PreconditionError",
    "PseudoEvent",
    "QuantalError",
    "QuantalModel",
    "RegionError",
    "SelectorError",
    "StochasticModel",
    "VACUOUS",
    "VIOLATED",
    "builtin",
    "check_generalized_so",
    "check_multi_so",
    "check_pcc_original",
    "check_pcc_rev1",
    "check_pcc_rev2",
    "check_penrose_percival",
    "check_qso1",
    "check_qso2",
    "check_so1",
    "check_so2",
    "check_so2w",
    "check_wrc",
    "corpus_entries",
    "corpus_names",
    "correlated",
    "deterministic_local_model",
    "deterministic_local_satisfies_so1",
    "diagonal_reduction",
    "dom",
    "find_screening_events",
    "find_simpson_events",
    "full_specifications",
    "fuzz_equivalence",
    "history_digits",
    "history_index",
    "load_model",
    "n_histories",
    "omega",
    "parse_event",
    "parse_model",
    "parse_model_text",
    "random_deterministic_local",
    "random_diagonal_quantal",
    "random_quantal",
    "random_stochastic",
    "render_model",
    "render_model_json",
    "restriction",
    "validate_quantal",
    "verify_corpus",
    "verify_dom_axioms",
    "verify_fullspec_lemmas",
    "verify_quantal_lemmas",
    "__version__",
]
