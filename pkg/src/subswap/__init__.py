"""Structure-aware subtree-swapping augmentation for dependency-parsed parallel corpora."""

__version__ = "0.1.0"
