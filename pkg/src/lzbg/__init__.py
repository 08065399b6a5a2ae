"""Linear-time LZ77 factorization from suffix arrays via PSV/NSV candidates."""

from ._oracle import OracleLimitError
from .codec import decode, encode
from .corpus import CorpusSpec, CorpusStats, compute_stats, gen_fibonacci, gen_random
from .factorizer import (
    VARIANTS,
    Factor,
    Factorization,
    LpfArrays,
    factorize,
    factorize_naive,
    factorize_run,
    lcp_extend,
    lpf_brute_force,
    lz_from_lpf,
)
from .neighbors import (
    NeighborArrays,
    interleave,
    psv_nsv_brute,
    psv_nsv_peak_lex,
    psv_nsv_peak_text,
    psv_nsv_stack,
)
from .report import RunReport, modeled_bytes
from .suffix_array import SuffixArrayBundle, build_phi, build_sa, build_sa_naive

__version__ = "0.1.0"
