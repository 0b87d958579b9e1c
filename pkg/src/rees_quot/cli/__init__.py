"""Script and REPL front end."""

from .grammar import parse_script, render_command
from .main import main
from .session import Session, execute

__all__ = ["Session", "execute", "main", "parse_script", "render_command"]
