"""detstress: stress-testing toolkit for machine-generated-text detectors."""

__version__ = "0.1.0"
