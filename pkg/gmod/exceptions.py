from steenrod.exceptions import Ext2Error


class ModuleDefinitionError(Ext2Error):
    """Basis or action data that does not describe a graded module"""


class ModuleValidationError(Ext2Error):
    """The action does not respect the relations of the algebra"""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report or {}


class UnknownModuleError(Ext2Error):
    """No module registered under the requested name"""
