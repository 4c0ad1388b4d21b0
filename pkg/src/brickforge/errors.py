"""Exception hierarchy shared by every brickforge module.

Each error carries a stable ``code`` string so the HTTP service and CLI can
map failures without string-matching messages.
"""

from __future__ import annotations


class BrickforgeError(Exception):
    """Base class for all domain errors."""

    code = "Internal"
    http_status = 500


class NonPositiveDimensionError(BrickforgeError):
    code = "NonPositiveDimension"
    http_status = 400


class OutOfBoundsError(BrickforgeError):
    code = "OutOfBounds"
    http_status = 400


class WrongCanvasTypeError(BrickforgeError):
    code = "WrongCanvasType"
    http_status = 400


class EmptySelectionError(BrickforgeError):
    code = "EmptySelection"
    http_status = 422


class InvalidBaseError(BrickforgeError):
    code = "InvalidBase"
    http_status = 400


class LengthMismatchError(BrickforgeError):
    code = "LengthMismatch"
    http_status = 400


class EmptySequenceError(BrickforgeError):
    code = "EmptySequence"
    http_status = 400


class SequenceSpaceExhaustedError(BrickforgeError):
    code = "SequenceSpaceExhausted"
    http_status = 422


class MissingBondSequenceError(BrickforgeError):
    code = "MissingBondSequence"
    http_status = 400


class UnplacedStrandError(BrickforgeError):
    code = "UnplacedStrand"
    http_status = 400


class UnencodableCharacterError(BrickforgeError):
    code = "UnencodableCharacter"
    http_status = 400


class AlreadyExistsError(BrickforgeError):
    code = "AlreadyExists"
    http_status = 409


class InvalidNameError(BrickforgeError):
    code = "InvalidName"
    http_status = 400


class IoFailureError(BrickforgeError):
    code = "IoFailure"
    http_status = 500


class NotFoundError(BrickforgeError):
    code = "NotFound"
    http_status = 404


class CorruptManifestError(BrickforgeError):
    code = "CorruptManifest"
    http_status = 500


class MalformedHeaderError(BrickforgeError):
    code = "MalformedHeader"
    http_status = 400


class DimensionMismatchError(BrickforgeError):
    code = "DimensionMismatch"
    http_status = 400


class DuplicateEntryError(BrickforgeError):
    code = "DuplicateEntry"
    http_status = 400
