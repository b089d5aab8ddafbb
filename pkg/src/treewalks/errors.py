"""Exception hierarchy shared by all treewalks modules."""


class TreeWalksError(ValueError):
    """Base class; every error raised by treewalks derives from it."""


class SumMismatch(TreeWalksError):
    pass


class NonPositiveEntry(TreeWalksError):
    pass


class TooSmall(TreeWalksError):
    pass


class LengthMismatch(TreeWalksError):
    pass


class NotComparable(TreeWalksError):
    pass


class InvalidParameter(TreeWalksError):
    pass


class InvalidTree(TreeWalksError):
    pass


class InconsistentLevels(TreeWalksError):
    pass


class TooLarge(TreeWalksError):
    pass


class NotSameLevel(TreeWalksError):
    pass


class WouldDisconnect(TreeWalksError):
    pass


class NotABranchEdge(TreeWalksError):
    pass


class NotAnEdge(TreeWalksError):
    pass


class NotParentChild(TreeWalksError):
    pass


class BadPermutation(TreeWalksError):
    pass
