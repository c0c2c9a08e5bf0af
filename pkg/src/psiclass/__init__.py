"""Psi-class intersection numbers on moduli of curves, computed two independent ways:
Kontsevich's trivalent map sum and Hurwitz numbers through the ELSV formula."""

__version__ = "0.1.0"
