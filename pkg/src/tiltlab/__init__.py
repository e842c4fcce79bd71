"""Exact-arithmetic derived-equivalence certificates for quiver algebras."""

from .linalg import FieldSpec, GF, Mat, QQ, SubspaceBasis, kernel_image, rref_rank, subspace_ops

__all__ = [
    "FieldSpec",
    "GF",
    "Mat",
    "QQ",
    "SubspaceBasis",
    "kernel_image",
    "rref_rank",
    "subspace_ops",
]
