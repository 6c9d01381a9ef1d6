"""
qtorb CLI package

The QtorbApp class is composed of the following modules:
- core.py: dispatch, model loading, argument parsing helpers and exit codes
- display.py: tables, JSON reports and styled status messages
- handlers.py: subcommands that inspect a model
- handlers_blowup.py: subcommands that blow up and resolve a model
"""

from .core import QtorbApp
from .display import CliDisplay
from .handlers import CommandHandlers
from .handlers_blowup import BlowupCommandHandlers

__all__ = [
    "QtorbApp",
    "CliDisplay",
    "CommandHandlers",
    "BlowupCommandHandlers",
]
