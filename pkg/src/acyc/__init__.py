"""Click and reflection equivalence of acyclic orientations, with the
deletion/contraction machinery that ties the class count to the Tutte
polynomial."""

from .graph import Graph, GraphError
from .orientation import Orientation, OrientationError, enumerate_acyclic
from .equivalence import ClassPartition, delta_partition, kappa_partition
from .tutte import TuttePolynomial, tutte

__all__ = [
    "ClassPartition",
    "Graph",
    "GraphError",
    "Orientation",
    "OrientationError",
    "TuttePolynomial",
    "delta_partition",
    "enumerate_acyclic",
    "kappa_partition",
    "tutte",
]
