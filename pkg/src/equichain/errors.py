"""Exception hierarchy shared by all equichain modules."""


class EquichainError(Exception):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class DomainError(EquichainError):
    code = "domain-too-short"


class ArgumentOrderError(EquichainError):
    code = "argument-order"


class WidthError(EquichainError):
    code = "width-violation"


class ZeroIdealError(EquichainError):
    code = "zero-ideal"


class InvarianceError(EquichainError):
    code = "non-invariant-chain"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_json(self):
        out = super().to_json()
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class InvariantViolation(EquichainError):
    code = "invariant-violation"


class DuplicateFactorError(EquichainError):
    code = "duplicate-factor"


class CrossCheckMismatch(EquichainError):
    code = "cross-check-mismatch"

    def __init__(self, message, symbolic=None, per_width=None):
        super().__init__(message)
        self.symbolic = symbolic
        self.per_width = per_width

    def to_json(self):
        out = super().to_json()
        out["symbolic"] = self.symbolic
        out["per_width"] = self.per_width
        return out


class WindowExhausted(EquichainError):
    code = "window-exhausted"


class ParseError(EquichainError):
    code = "malformed-input"
