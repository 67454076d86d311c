"""Scored region algebra for structured text retrieval.

Language-model rankings (unigram, smoothed, multi-level mixtures, priors,
translation models) are compiled into queries over five region operators
and evaluated against a positional index of an XML corpus.
"""

from .algebra import and_, contained_by, containing, or_, scale
from .errors import (
    CorpusError,
    IndexFormatError,
    QuerySyntaxError,
    RegionError,
    RegionLMError,
    ScopeError,
    SpecError,
    UnknownStoredSet,
    UnsupportedNexi,
)
from .index import (
    CorpusIndex,
    build_index,
    element_regions,
    load_index,
    register_stored_set,
    save_index,
    word_regions,
)
from .lm import LMSpec, TermProb, WeightedSum, compile_lm, direct_score, spec_from_json
from .nexi import translate_nexi
from .query import evaluate, format_query, parse_query, rank
from .regions import Region, RegionSet, canonicalize
from .rewrite import check_equivalent, rewrite_all

__version__ = "0.1.0"
