"""Exception types shared across pipeline stages."""


class ScalemineError(Exception):
    """Base class for all pipeline errors."""


class DataError(ScalemineError):
    """Input data is missing, unreadable or malformed."""


class ContradictionError(ScalemineError):
    """A relation set asserts both a<b and b<a."""

    def __init__(self, weak, strong):
        super().__init__(f"contradictory relations: ({weak}, {strong}) and ({strong}, {weak})")
        self.pair = (weak, strong)
