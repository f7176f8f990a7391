"""Exception types shared across the toolkit."""


class DastkitError(Exception):
    """Base class for every error raised by this package."""


class EmptySentenceError(DastkitError):
    """Raised when a sentence is empty or whitespace-only."""


class EmptyCorpusError(DastkitError):
    """Raised when an operation receives no records to work with."""


class ParseError(DastkitError):
    """A corpus file line could not be parsed."""

    def __init__(self, message, path=None, line_no=None):
        self.path = path
        self.line_no = line_no
        where = f"{path}:{line_no}: " if path is not None else ""
        super().__init__(f"{where}{message}")


class UnknownStyleError(DastkitError):
    """A style label is not part of the declared style set."""


class ConfigError(DastkitError):
    """Invalid or inconsistent configuration."""


class SpecError(DastkitError):
    """A synthetic-corpus spec violates its invariants."""


class InvalidInputError(DastkitError):
    """A tensor or sequence argument violates a precondition."""


class InvalidDistributionError(DastkitError):
    """A vector that should be a probability distribution is degenerate."""


class InvalidStyleError(DastkitError):
    """A style id is not allowed in this context (e.g. unknown style in a styled loss)."""


class FrozenClassifierRequired(DastkitError):
    """A loss that scores generations needs its classifier frozen first."""


class BatchShapeError(DastkitError):
    """A batch is empty or its halves do not line up."""


class StyleSetMismatchError(DastkitError):
    """Source and target style sets must coincide for this regime."""


class DegenerateLabelsError(DastkitError):
    """Classifier training needs at least two classes with data."""


class DivergenceError(DastkitError):
    """Training produced a non-finite loss."""

    def __init__(self, message, step):
        self.step = step
        super().__init__(f"step {step}: {message}")


class IncompatibleCheckpointError(DastkitError):
    """A checkpoint does not match the current vocabulary or config."""


class InputMismatchError(DastkitError):
    """Metric inputs are empty or their counts disagree."""


class InvalidMetricError(DastkitError):
    """A metric argument is outside its legal range."""
