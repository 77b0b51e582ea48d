from steenrod.exceptions import Ext2Error


class ChartError(Ext2Error):
    """Malformed chart data or incompatible chart windows"""


class FactError(Ext2Error):
    """A recorded differential or extension does not fit the chart"""
