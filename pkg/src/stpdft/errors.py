"""Exception types shared across the library and the CLI.

The CLI maps these onto process exit codes: schema violations exit 2,
shape inconsistencies exit 3, anything else that trips an internal
invariant exits 4.
"""


class ShapeError(ValueError):
    """Operand shapes are mutually inconsistent; the message names both."""


class SchemaError(ValueError):
    """An input file does not match its documented JSON schema."""


class SizeBudgetError(ValueError):
    """An intermediate result would exceed the 2**31-1 element budget."""


class NonFactorizableError(ValueError):
    """A flat vector is not a Kronecker product with the requested dims."""


class DegenerateRowError(ValueError):
    """softmax over a row whose entries are all -inf is undefined."""
