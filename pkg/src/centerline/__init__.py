"""Anaphora resolution in the centering framework with functional ranking."""

from centerline.centering import compute_cb, compute_cf
from centerline.corpus_io import load_document, parse_document, serialize_document
from centerline.evaluation import classify_errors, score
from centerline.model import Document, validate_document
from centerline.resolution import ResolutionConfig, Strategy, resolve_document
from centerline.segmentation import segment

__version__ = "0.1.0"

__all__ = [
    "Document",
    "ResolutionConfig",
    "Strategy",
    "classify_errors",
    "compute_cb",
    "compute_cf",
    "load_document",
    "parse_document",
    "resolve_document",
    "score",
    "segment",
    "serialize_document",
    "validate_document",
]
