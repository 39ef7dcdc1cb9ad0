"""Sigma sets, condition (dagger), structure verification, search and products."""

from .product import ProductFailure, i2_order_obstruction, product_structure, two_generated_obstruction
from .records import product_factor_check, realize_record, verify_record
from .search import SearchResult, exhaustive_search, randomized_search, search_structures
from .sigma import CLASS_BOUND, DaggerCertificate, InvariantKey, SigmaFingerprint, check_dagger, invariant_key, sigma
from .verify import (
    EXACT_LIMIT,
    SCHEMA_VERSION,
    BeauvilleReport,
    BeauvilleStructure,
    choose_mode,
    find_inverting_element,
    inverts,
    verify_strongly_real,
    verify_unmixed,
)

__all__ = [
    "BeauvilleReport",
    "BeauvilleStructure",
    "CLASS_BOUND",
    "DaggerCertificate",
    "EXACT_LIMIT",
    "InvariantKey",
    "ProductFailure",
    "SCHEMA_VERSION",
    "SearchResult",
    "SigmaFingerprint",
    "check_dagger",
    "choose_mode",
    "exhaustive_search",
    "find_inverting_element",
    "i2_order_obstruction",
    "invariant_key",
    "inverts",
    "product_factor_check",
    "product_structure",
    "randomized_search",
    "realize_record",
    "search_structures",
    "sigma",
    "two_generated_obstruction",
    "verify_record",
    "verify_strongly_real",
    "verify_unmixed",
]
