"""Strength-4 covering arrays from PGL(2,q) starter-vector constructions:
build, verify, search, extend, and post-optimize."""

from .field import (SUPPORTED_Q, FieldSpec, make_field, symbol_count,
                    symbol_to_token, token_to_symbol, parse_symbols,
                    format_symbols)
from .group import (GroupElement, enumerate_group, apply, compose,
                    normalize_coeffs, action_table,
                    check_sharp_3_transitivity)
from .orbits import (OrbitTable, build_orbit_table, pack_tuple, unpack_index,
                     dump_orbits)
from .classes import (EquivClass, FixedRowClass, enumerate_classes,
                      class_size, class_of, class_members, d_set, d_set_codes,
                      enumerate_fixed_row_classes, fixed_row_class_of,
                      fixed_row_class_members, d_set_fixed)
from .builder import (TestingArray, ResidualReport, as_vector, circulant,
                      develop, constant_columns, assemble, assemble_extended,
                      assembled_size, starter_check, fixed_row_residual,
                      check_extension, write_array, read_array, write_vectors,
                      read_vectors, write_matrix, read_matrix)
from .verifier import (VerifyResult, CoverageResult, is_covering_array,
                       coverage_brute, coverage_by_classes)
from .search import (SearchConfig, SearchResult, CompletionResult,
                     search_starters, search_residual_matrix,
                     search_extension, score_completion)
from .postopt import FlexState, mark_flexible, post_optimize

__version__ = "0.1.0"

__all__ = [
    "SUPPORTED_Q", "FieldSpec", "make_field", "symbol_count",
    "symbol_to_token", "token_to_symbol", "parse_symbols", "format_symbols",
    "GroupElement", "enumerate_group", "apply", "compose", "normalize_coeffs",
    "action_table", "check_sharp_3_transitivity",
    "OrbitTable", "build_orbit_table", "pack_tuple", "unpack_index",
    "dump_orbits",
    "EquivClass", "FixedRowClass", "enumerate_classes", "class_size",
    "class_of", "class_members", "d_set", "d_set_codes",
    "enumerate_fixed_row_classes",
    "fixed_row_class_of", "fixed_row_class_members", "d_set_fixed",
    "TestingArray", "ResidualReport", "as_vector", "circulant", "develop",
    "constant_columns", "assemble", "assemble_extended", "assembled_size",
    "starter_check", "fixed_row_residual", "check_extension", "write_array",
    "read_array", "write_vectors", "read_vectors", "write_matrix",
    "read_matrix",
    "VerifyResult", "CoverageResult", "is_covering_array", "coverage_brute",
    "coverage_by_classes",
    "SearchConfig", "SearchResult", "CompletionResult", "search_starters",
    "search_residual_matrix", "search_extension", "score_completion",
    "FlexState", "mark_flexible", "post_optimize",
]
