from __future__ import annotations

from typing import Any


class AlgebraError(Exception):
    """Domain violation raised by a construction or verifier.

    ``code`` is a stable upper-case identifier (``NOT_ASSOCIATIVE``,
    ``MCALISTER_VIOLATION``, ...) and ``witness`` carries the concrete
    counterexample, when there is one.
    """

    def __init__(self, code: str, message: str = "", witness: Any = None):
        self.code = code
        self.witness = witness
        super().__init__(f"{code}: {message}" if message else code)

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": str(self), "witness": self.witness}


class ParseError(ValueError):
    """Input text or JSON could not be read as the expected format."""
