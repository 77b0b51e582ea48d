from steenrod.exceptions import Ext2Error


class WindowError(Ext2Error):
    """The requested (s, t) window is not covered by the available data"""


class NonMinimalError(Ext2Error):
    """A differential has a unit entry where a minimal resolution needs none"""


class LiftingError(Ext2Error):
    """A chain map could not be extended through the requested window"""


class InexactSequenceError(Ext2Error):
    """A sequence of modules claimed exact is not"""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report or {}
