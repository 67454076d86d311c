"""Exception hierarchy shared by all regionlm modules."""


class RegionLMError(Exception):
    """Base class for every user-facing error raised by the package."""


class RegionError(RegionLMError, ValueError):
    """A region or region set violates ``1 <= start < end`` or ``score > 0``."""


class CorpusError(RegionLMError):
    """The corpus could not be indexed (malformed XML, no words)."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class IndexFormatError(RegionLMError):
    """An on-disk index is missing, corrupt, or of an unsupported version."""


class QuerySyntaxError(RegionLMError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownStoredSet(RegionLMError, KeyError):
    def __init__(self, name):
        super().__init__(f"unknown stored set ${name}")
        self.name = name

    def __str__(self):
        return self.args[0]


class SpecError(RegionLMError):
    """An LMSpec document is structurally invalid."""

    def __init__(self, message, field=None):
        if field:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field


class ScopeError(RegionLMError):
    """A target region has no unique enclosing instance of a scope tag."""


class UnsupportedNexi(RegionLMError):
    def __init__(self, construct, position=None):
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unsupported construct: {construct}{where}")
        self.construct = construct
