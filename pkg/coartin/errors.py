"""Error types shared by every layer; status_code doubles as the CLI exit status."""


class CoartinError(Exception):
    def __init__(self, status_code: int, detail: str):
        super().__init__(detail)
        self.status_code = status_code
        self.detail = detail


# Validation failures (exit status 2)
class InvalidInputError(CoartinError):
    def __init__(self, detail: str):
        super().__init__(status_code=2, detail=f"Invalid input: {detail}")


class NotInAmError(InvalidInputError):
    """The generated algebra contains x^(m-1) or an element of order 1."""


class WrongCaseError(InvalidInputError):
    """The operation does not apply to this semigroup case."""


class TruncationMismatchError(InvalidInputError):
    pass


# Two independent computations disagreed, or a verified postcondition failed (exit status 1)
class InternalComputationError(CoartinError):
    def __init__(self, detail: str):
        super().__init__(status_code=1, detail=f"Internal computation error: {detail}")
