"""Legendrian front words, contact surgery diagrams and verified handle moves."""

from .front import FrontDiagram, Event, Site, Handle, L, R, X

__version__ = "0.1.0"

__all__ = ["FrontDiagram", "Event", "Site", "Handle", "L", "R", "X"]
