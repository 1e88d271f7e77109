"""Mining frequent positive and negative sequential patterns under gap constraints."""
from .matcher import (
    ItemIndex, KeyValueArray, brute_force_support, build_item_index, extend,
    negative_absent, negpair, support_of,
)
from .miner import (
    FrequentEntry, FrequentLevel, MiningResult, MiningStats,
    baseline_candidate_counts, mine, mine_frequent_items, nspg2, nspgm,
)
from .model import (
    Alphabet, GapConstraint, Pattern, PatternError, PatternParseError, Sequence,
    SequenceDatabase, SupportRecord, Threshold, WideOverflowError,
    format_pattern, is_frequent, join, ofs_total, parse_pattern, positivize, prefix, suffix,
)
from .ingest import InputSpec, read_database, parse_database, split_fixed_length, write_results

__version__ = "0.1.0"
