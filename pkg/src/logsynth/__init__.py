"""Synthetic labelled log datasets for failure-prediction research.

Behaviour models (DFAs over log-template IDs) are walked to produce normal
sequences; failure sequences are drawn from regular-expression failure
patterns.  See the README for an overview.
"""

__version__ = "0.1.0"

from .automaton import (  # noqa: E402
    REJECT,
    UNREACHABLE,
    BehaviourModel,
    SValueMap,
    TemplateCatalog,
    accepts,
    compute_s_values,
    dump_model,
    extended_transition,
    load_model,
    load_model_file,
)
from .errors import *  # noqa: E402,F401,F403
