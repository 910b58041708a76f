"""Exception types shared across the package."""


class MeshError(Exception):
    """Invalid mesh topology or geometry."""


class MeshLoadError(MeshError):
    """A mesh file could not be parsed.

    Carries the offending path and, when known, the 1-based line number.
    """

    def __init__(self, message, path=None, line=None):
        loc = ""
        if path is not None:
            loc = f" [{path}" + (f":{line}" if line is not None else "") + "]"
        super().__init__(message + loc)
        self.path = path
        self.line = line


class ValidationFailure(MeshError):
    """Pipeline entry rejected the mesh (not a closed genus-zero surface)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SeparationError(MeshError):
    """A vertex loop did not split the surface into the expected regions."""
