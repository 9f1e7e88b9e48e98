from ._tropcram import *  # noqa: F401,F403
from ._tropcram import DomainError, ParseError

__version__ = "0.1.0"
