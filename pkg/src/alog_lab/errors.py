"""Exception hierarchy shared by every engine."""

from __future__ import annotations


class AlogError(Exception):
    """Base class for all errors raised by alog_lab."""


class ParseError(AlogError):
    def __init__(self, message: str, span=None):
        self.span = span
        if span is not None:
            message = f"{span.line}:{span.column}: {message}"
        super().__init__(message)


class GroundingError(AlogError):
    pass


class UnsafeRuleError(GroundingError):
    def __init__(self, variable: str, rule_text: str, span=None):
        self.variable = variable
        self.span = span
        where = f" (line {span.line})" if span is not None else ""
        super().__init__(f"unsafe variable {variable} in rule{where}: {rule_text}")


class FragmentError(AlogError):
    """The program uses a construct the selected engine does not handle."""


class CapExceeded(AlogError):
    """An exhaustive search would exceed its configured size limit."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} exceeds cap {cap}")
