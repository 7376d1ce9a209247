"""Exact Chow rings and augmented Chow rings of matroids."""
from .chow import ChowRing, Element, TensorRing, Variant, chow_ring, tensor_ring
from .matroid import Matroid, boolean, corpus, graphic, uniform

__all__ = ["ChowRing", "Element", "Matroid", "TensorRing", "Variant", "boolean",
           "chow_ring", "corpus", "graphic", "tensor_ring", "uniform"]
