"""Free ideal subarrangements of Weyl arrangements, verified in exact arithmetic."""
from .lattice import CharPoly, build_lattice, characteristic_polynomial, point_count_charpoly
from .matengine import run_induction
from .partition import dual_partition, height_distribution, ideal_exponents
from .rootposet import Ideal, enumerate_ideals, ideal_closure, truncation_ideal
from .rootsys import RootSystem, RootSystemType, build_root_system

__version__ = "0.1.0"

__all__ = [
    "CharPoly",
    "Ideal",
    "RootSystem",
    "RootSystemType",
    "build_lattice",
    "build_root_system",
    "characteristic_polynomial",
    "dual_partition",
    "enumerate_ideals",
    "height_distribution",
    "ideal_closure",
    "ideal_exponents",
    "point_count_charpoly",
    "run_induction",
    "truncation_ideal",
]
