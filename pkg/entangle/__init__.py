from .criteria import (
    bipartitions,
    ccnr,
    concurrence,
    leading_permutation,
    mrealign,
    negativity,
    optspinsq,
    overlapb,
    pt,
    pt_nonorm,
    realign,
    schmidt,
)
from .models import BipartitionMask, SearchParams, SearchResult, SpinSqueezingReport
from .search import maxb, maxbisep, maxsep, maxsymsep

__all__ = [
    "BipartitionMask",
    "SearchParams",
    "SearchResult",
    "SpinSqueezingReport",
    "bipartitions",
    "ccnr",
    "concurrence",
    "leading_permutation",
    "maxb",
    "maxbisep",
    "maxsep",
    "maxsymsep",
    "mrealign",
    "negativity",
    "optspinsq",
    "overlapb",
    "pt",
    "pt_nonorm",
    "realign",
    "schmidt",
]
