"""Exception hierarchy shared by every latticeforge module."""


class LatticeForgeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LatticeForgeError):
    """Bad input data (exit code 1 on the command line)."""


class ConfigurationError(LatticeForgeError):
    """Bad or incomplete run configuration (exit code 2)."""


class DuplicateLabel(InputError, ValueError):
    pass


class UnknownLabel(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidLabel(InputError, ValueError):
    pass


class EmptyAxis(InputError, ValueError):
    pass


class EmptyInput(InputError, ValueError):
    pass


class OracleSizeExceeded(LatticeForgeError, ValueError):
    pass


class ParseError(InputError):
    """A malformed line in a text input.

    ``source`` names the file (or ``"<string>"``) and ``line`` is 1-based.
    """

    def __init__(self, message, source="<string>", line=None):
        self.source = source
        self.line = line
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")


class MissingDatabaseFile(ConfigurationError, FileNotFoundError):
    pass


class XmlError(InputError):
    pass


class UnsupportedDocument(InputError):
    pass


class DanglingReference(InputError):
    pass


class FrequencyMismatch(InputError):
    pass
