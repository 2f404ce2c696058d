"""Python bindings for the partsrl ARG1 toolkit."""

from ._partsrl import (
    Error,
    Instance,
    Role,
    Sentence,
    System,
    Token,
    candidate_ngrams,
    collapse_bio_path,
    combine,
    extract_instance,
    f1,
    fit_weights,
    match_arg1,
    parse_conll,
    parse_tree_string,
    prf,
    read_scores,
    synth,
    tree_path,
    type2_path_flags,
    write_conll,
    write_scores,
)

__all__ = [
    "Error",
    "Instance",
    "Role",
    "Sentence",
    "System",
    "Token",
    "candidate_ngrams",
    "collapse_bio_path",
    "combine",
    "extract_instance",
    "f1",
    "fit_weights",
    "match_arg1",
    "parse_conll",
    "parse_tree_string",
    "prf",
    "read_scores",
    "synth",
    "tree_path",
    "type2_path_flags",
    "write_conll",
    "write_scores",
]
