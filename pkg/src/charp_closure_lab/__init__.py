"""Exact tight-closure and test-ideal computations over F_p."""

from .config import Config
from .groebner import Ideal, groebner_basis, ideal_member
from .poly import Polynomial, RingSpec

__all__ = ["Config", "Ideal", "Polynomial", "RingSpec", "groebner_basis", "ideal_member"]
__version__ = "0.1.0"
