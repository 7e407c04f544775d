"""Algebraic identifiers over the unitriangular group UT(4, p)."""

from ._algid import (
    AlgidError,
    Element,
    Store,
    Version,
    adaptor,
    birthday_bound,
    census,
    commuting_probability,
    compose,
    decode,
    expected_expressions,
    factor_outputs,
    function_element,
    import_legacy,
    key_element,
    map_entry,
    plan,
    removal_index,
    removal_name,
    rho,
    test_group,
    theta,
    value_element,
    version,
)

__all__ = [
    "AlgidError",
    "Element",
    "Store",
    "Version",
    "adaptor",
    "birthday_bound",
    "census",
    "commuting_probability",
    "compose",
    "decode",
    "expected_expressions",
    "factor_outputs",
    "function_element",
    "import_legacy",
    "key_element",
    "map_entry",
    "plan",
    "removal_index",
    "removal_name",
    "rho",
    "test_group",
    "theta",
    "value_element",
    "version",
]
