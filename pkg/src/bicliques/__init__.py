"""Balanced bi-clique certificates for interval, cograph and chordal instances."""

from .core import (
    BicliqueCertificate,
    CapExceededError,
    CertificateReport,
    Graph,
    InputError,
    InternalInvariantError,
    IntervalFamily,
    IntervalMember,
    OverlappingSidesError,
    Partition,
    Subtree,
    SubtreeFamily,
    SubtreeMember,
    Tree,
    UnknownIdError,
    intersection_graph,
    intersects,
    verify_certificate,
)

__all__ = [
    "BicliqueCertificate",
    "CapExceededError",
    "CertificateReport",
    "Graph",
    "InputError",
    "InternalInvariantError",
    "IntervalFamily",
    "IntervalMember",
    "OverlappingSidesError",
    "Partition",
    "Subtree",
    "SubtreeFamily",
    "SubtreeMember",
    "Tree",
    "UnknownIdError",
    "intersection_graph",
    "intersects",
    "verify_certificate",
]

__version__ = "0.1.0"
