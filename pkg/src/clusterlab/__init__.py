"""clusterlab: exact cluster-algebra engine for unpunctured surfaces."""

__version__ = "0.1.0"
