"""Gate set tomography for single-qubit gates under coloured drive noise."""

__version__ = "0.1.0"
