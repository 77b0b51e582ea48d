from steenrod.exceptions import Ext2Error


class UnknownCaseError(Ext2Error):
    """No suite case is registered under the requested id"""
