from ._core import (
    Workspace,
    a_closed,
    builtin,
    closed_forms,
    eval_bounded,
    expand,
    field_arith,
    field_compare,
    standard_part,
    translate,
    validate_params,
    __version__,
)

__all__ = [
    "Workspace",
    "a_closed",
    "builtin",
    "closed_forms",
    "eval_bounded",
    "expand",
    "field_arith",
    "field_compare",
    "standard_part",
    "translate",
    "validate_params",
    "__version__",
]
