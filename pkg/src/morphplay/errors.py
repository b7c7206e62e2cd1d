"""Exception types shared across the package."""

from __future__ import annotations


class SceneFormatError(ValueError):
    """A scene document failed parsing or invariant validation.

    ``path`` points at the offending field (e.g. ``parts[2].bbox.min``) so CLI
    output can name it; ``part_id`` is set when the error belongs to one part.
    """

    def __init__(self, message: str, *, path: str = "", part_id: str | None = None):
        detail = message if not path else f"{path}: {message}"
        super().__init__(detail)
        self.path = path
        self.part_id = part_id


class SelectionRangeError(IndexError):
    """Part index outside the selectable range; carries the valid range."""

    def __init__(self, index: int, count: int):
        self.index = index
        self.valid_range = (0, count - 1)
        if count == 0:
            message = f"index {index} invalid: scene has no rotatable parts"
        else:
            message = f"index {index} outside valid range 0..{count - 1}"
        super().__init__(message)


class ProtocolError(ValueError):
    """A client message was rejected; ``code`` is the wire-level error code."""

    def __init__(self, code: str, detail: str):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail
