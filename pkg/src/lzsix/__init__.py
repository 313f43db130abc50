"""lzsix: a compressed self-index for repetitive texts built on LZ77 and
LZ-End parsings, with corpus generators and text statistics."""

from ._kernels import backend
from .corpus import gen_fibonacci, gen_mutated, gen_thue_morse
from .parsing import (
    LZ77,
    LZ78,
    LZEND,
    EncodedParsing,
    Parsing,
    ParsingStats,
    Phrase,
    compute_height,
    encode_parsing,
    extract,
    parse_lz77,
    parse_lz78,
    parse_lzend,
    parse_raw,
)
from .selfindex import IndexFormatError, Occurrence, SelfIndex, build_index
from .textcore import (
    BwsRange,
    SuffixArrayBundle,
    Text,
    TextStats,
    empirical_entropy,
    entropy_table,
    ipm,
    suffix_array,
    text_stats,
)

__version__ = "0.1.0"

__all__ = [
    "backend",
    "gen_fibonacci",
    "gen_mutated",
    "gen_thue_morse",
    "LZ77",
    "LZ78",
    "LZEND",
    "EncodedParsing",
    "Parsing",
    "ParsingStats",
    "Phrase",
    "compute_height",
    "encode_parsing",
    "extract",
    "parse_lz77",
    "parse_lz78",
    "parse_lzend",
    "parse_raw",
    "IndexFormatError",
    "Occurrence",
    "SelfIndex",
    "build_index",
    "BwsRange",
    "SuffixArrayBundle",
    "Text",
    "TextStats",
    "empirical_entropy",
    "entropy_table",
    "ipm",
    "suffix_array",
    "text_stats",
]
