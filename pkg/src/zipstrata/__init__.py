"""Strata, stabilizers and simple-object counts for G-zip stacks of small groups."""

from .finfield import FieldSpec, FieldElement, make_field
from .weyl import CoxeterDescriptor, WeylElement
from .zipdata import Stratum, ZipDatum
from .stabilizer import GroupDescriptor, irrep_count, order_at, stabilizer_descriptor

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "FieldElement", "make_field", "CoxeterDescriptor", "WeylElement",
    "Stratum", "ZipDatum", "GroupDescriptor", "irrep_count", "order_at",
    "stabilizer_descriptor", "__version__",
]
