class Ext2Error(Exception):
    """Base class for every error raised by the Ext computation apps"""


class AlgebraMismatchError(Ext2Error):
    """Operands tagged with different algebras"""


class NotInSubalgebraError(Ext2Error):
    """An element does not lie in the tagged subalgebra A(n)"""


class NotationError(Ext2Error):
    """Text could not be parsed as a Steenrod algebra element"""
