"""Numerical certification of the nearly Kahler structure on the complex
flag six-manifold (compact and split-signature forms), the classification
of its totally geodesic almost complex surfaces, and the six explicit
example immersions."""

__version__ = "1.0.0"

from .lie_structure import PSEUDO, RIEMANNIAN, SIGNATURES
from .report import CheckReport

__all__ = ["RIEMANNIAN", "PSEUDO", "SIGNATURES", "CheckReport", "__version__"]
