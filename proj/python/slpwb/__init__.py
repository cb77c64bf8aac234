"""Word Break on SLP-compressed text.

The heavy lifting lives in the compiled extension; this package re-exports
its surface and adds a couple of pure-python conveniences.
"""

from ._core import (
    Dictionary,
    Graph,
    IndexStats,
    Slp,
    SlpwbError,
    SlpwbLimitError,
    SlpwbParseError,
    SlpwbRangeError,
    WordBreakIndex,
    balance,
    brute_force_clique,
    build_balanced_slp,
    build_dictionary_from_graph,
    build_w_slp,
    clique_id,
    enumerate_k_cliques,
    f_transform,
    is_biclique,
    parse_slp,
    read_slp_file,
    reduction_tokens,
    witness,
    word_break_prefixes,
)

__all__ = [
    "Dictionary",
    "Graph",
    "IndexStats",
    "Slp",
    "SlpwbError",
    "SlpwbLimitError",
    "SlpwbParseError",
    "SlpwbRangeError",
    "WordBreakIndex",
    "balance",
    "brute_force_clique",
    "build_balanced_slp",
    "build_dictionary_from_graph",
    "build_w_slp",
    "clique_id",
    "enumerate_k_cliques",
    "f_transform",
    "is_biclique",
    "parse_slp",
    "read_slp_file",
    "reduction_tokens",
    "solve",
    "witness",
    "word_break_prefixes",
]

__version__ = "0.1.0"


def solve(text, words, balance=True):
    """One-shot Word Break: text and words may be bytes, str or token lists."""
    slp = build_balanced_slp(text)
    return WordBreakIndex.build(slp, Dictionary(words), balance=balance).solve()
