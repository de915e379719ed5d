"""Errors raised across the package, each tagged with a stable code string."""


class CoxError(Exception):
    """Base error. `code` is a stable machine-readable tag, `message` is for humans."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class ParseError(CoxError):
    """A `.cox` file problem, with the 1-based line number it was found on."""

    def __init__(self, code: str, message: str, line: int):
        super().__init__(code, f"line {line}: {message}")
        self.line = line


class CertificationFailed(CoxError):
    """A transform produced maps that do not certify. Always indicates a bug."""

    def __init__(self, message: str):
        super().__init__("CERTIFICATION_FAILED", message)


class InternalInconsistency(CoxError):
    """A postcondition guaranteed by theory failed. Always indicates a bug."""

    def __init__(self, message: str):
        super().__init__("INTERNAL_INCONSISTENCY", message)
