# treesylow/errors.py
# Every domain error also derives from the matching builtin so callers can
# catch either the specific class or ValueError / RuntimeError.


class TreeSylowError(Exception):
    """Base class for all treesylow errors."""


# ==============================================================================
# PORTRAITS
# ==============================================================================

class InvalidDepthError(TreeSylowError, ValueError):
    pass


class LeafHasNoStateError(TreeSylowError, ValueError):
    pass


class IncompatibleDepthsError(TreeSylowError, ValueError):
    pass


class LevelOutOfRangeError(TreeSylowError, ValueError):
    pass


class SerializationError(TreeSylowError, ValueError):
    pass


class NotATreeAutomorphismError(TreeSylowError, ValueError):
    pass


# ==============================================================================
# PERMUTATIONS
# ==============================================================================

class NotAPermutationError(TreeSylowError, ValueError):
    pass


class DegreeMismatchError(TreeSylowError, ValueError):
    pass


class BlockOverflowError(TreeSylowError, ValueError):
    pass


# ==============================================================================
# GROUP ENGINES
# ==============================================================================

class ClosureCapExceeded(TreeSylowError, RuntimeError):
    """Raised when an exhaustive closure grows past its element cap."""

    def __init__(self, count, cap):
        super().__init__(f'closure exceeded cap of {cap} elements ({count} found so far)')
        self.count = count
        self.cap = cap


class NotASubgroupError(TreeSylowError, ValueError):
    pass


class NotNormalError(TreeSylowError, ValueError):
    pass


class NotATwoGroupError(TreeSylowError, ValueError):
    pass


# ==============================================================================
# CONSTRUCTIONS
# ==============================================================================

class InvalidParameterError(TreeSylowError, ValueError):
    pass
