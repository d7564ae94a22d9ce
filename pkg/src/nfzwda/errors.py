"""Exception hierarchy shared across the package."""


class NFZError(Exception):
    """Base class for every error raised by nfzwda."""


class DataError(NFZError):
    """Input data is unusable (maps to CLI exit code 2)."""


class EmptyText(DataError):
    pass


class EmptyCorpus(DataError):
    pass


class MissingRoot(DataError):
    pass


class UnreadableFile(DataError):
    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class FormatError(DataError):
    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


class DuplicateWord(FormatError):
    pass


class MixedConfig(DataError):
    """Style vectors built with different schemes or ODV modes were combined."""


class ConfigMismatch(DataError):
    """A vector does not match the configuration a model was trained with."""


class SingleClass(DataError):
    pass


class EmptyTraining(DataError):
    pass


class UnknownAuthor(DataError):
    pass


class NoSegments(DataError):
    pass
