"""periodforge: exact graph periods at desk scale."""

__version__ = "0.1.0"
