"""framecat: exact desk-scale toolkit for finite categories, truncated
simplicial sets, thick subdivisions, chain complexes over F_p, and
truncated frames with their comparison maps."""

from . import chaincof, dsub, fincat, frames, hocat, io, linmod, rand, sset

__all__ = ["chaincof", "dsub", "fincat", "frames", "hocat", "io", "linmod",
           "rand", "sset"]

__version__ = "0.1.0"
