"""Exception types. Every error carries a short, stable ``code`` string."""


class TamError(Exception):
    code = "E_TAM"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def __str__(self):
        return f"[{self.code}] {self.args[0]}"


class InvalidGlueError(TamError):
    code = "E_INVALID_GLUE"


class GeometrySizeError(TamError):
    code = "E_GEOMETRY_SIZE"


class AsymmetricGlueError(TamError):
    code = "E_ASYMMETRIC_GLUES"


class ModelError(TamError):
    """Tile kinds, glue function or temperature inconsistent with the model."""
    code = "E_MODEL"


class UnstableSeedError(TamError):
    code = "E_UNSTABLE_SEED"


class AttachmentError(TamError):
    code = "E_ATTACHMENT"


class UnsupportedInputError(TamError):
    code = "E_UNSUPPORTED"


class ResourceLimitError(TamError):
    code = "E_RESOURCE_LIMIT"

    def __init__(self, message, partial_count=0, **details):
        super().__init__(message, partial_count=partial_count, **details)
        self.partial_count = partial_count


class ImageConflictError(TamError):
    """Representation produced overlapping or undefined target tiles."""
    code = "E_IMAGE_CONFLICT"


class WindowError(TamError):
    code = "E_WINDOW"


class PreconditionError(TamError):
    code = "E_PRECONDITION"


class SchemaError(TamError):
    code = "E_SCHEMA"
