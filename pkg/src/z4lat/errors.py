"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ValidationError -> 2, BudgetError -> 3,
reference mismatches in `table` -> 4.
"""


class Z4LatError(Exception):
    """Base class for all package errors."""


class ValidationError(Z4LatError):
    """Bad input: domain violations, malformed files, contract breaches."""


class ClosureError(ValidationError):
    """A nested binary chain is not closed under the element-wise product."""

    def __init__(self, row_i, row_j):
        self.offending_pair = (row_i, row_j)
        super().__init__(
            f"chain not closed: product of basis rows {row_i} and {row_j} "
            "lies outside the outer code"
        )


class BudgetError(Z4LatError):
    """An enumeration would exceed the configured codeword budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration needs {required} codewords, budget is {budget}")


class TailBoundError(Z4LatError):
    """A truncated q-series cannot certify the requested evaluation accuracy."""

    def __init__(self, tail, needed):
        self.tail = tail
        self.needed = needed
        super().__init__(f"series tail bound {tail:.3e} exceeds requested accuracy {needed:.3e}")
