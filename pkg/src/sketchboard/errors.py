"""Exception types shared across the engine."""


class BoardError(Exception):
    """Base class for all sketchboard errors."""


class DegenerateStroke(BoardError):
    """Stroke or stroke set has no spatial extent (zero arc length / bbox)."""


class StrokeCountMismatch(BoardError):
    """Glyph distance requested between glyphs of different stroke counts."""


class EmptyLibrary(BoardError):
    """Recognition attempted against a library with no templates."""


class MalformedLibrary(BoardError):
    """Library file failed to parse or violates the schema."""


class DuplicateTemplate(BoardError):
    """Two library templates share a name."""


class UnknownSketchType(BoardError):
    """A sketch type id is not registered in the runtime."""


class UnknownSketch(BoardError):
    """A sketch id does not exist in the scene."""


class SelfLink(BoardError):
    """A link's source and target are the same sketch."""


class DuplicateLink(BoardError):
    """A (source, target) link already exists."""


class NoBreakpointActive(BoardError):
    """Breakpoint resume requested but no op is paused at a breakpoint."""


class FrameMismatch(BoardError):
    """An exit record does not match the top call-stack frame."""


class MalformedScript(BoardError):
    """A session script line failed to parse or violates event ordering.

    Carries the 1-based line number of the offending record.
    """

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
