"""Exact cohomology of generalized complex structures on Lie algebra models.

Typical use::

    from gcx import parse_model, build_gcs, cohomology_report
    model, spec = parse_model("dim 4; algebra (0,0,0,12); structure symplectic omega = e14 + e23")
    report = cohomology_report(build_gcs(model, spec))
"""

from importlib.resources import files

from .cohomology import (
    cohomology_report,
    ddJ_lemma_check,
    de_rham_dims,
    frolicher_verdict,
    gh_dims,
    harmonic_dims,
    psi_maps,
    varouchas_dims,
)
from .errors import ContainmentError, GcxError, ParseError, StructureError, TheoremViolation
from .gcs_engine import build_gcs
from .linalg import GaussianRational, Matrix, Subspace
from .model_parser import LieModel, StructureSpec, format_model, parse_model, parse_model_file
from .report import RunConfig, analyze, run_corpus, run_model
from .spectral import spectral_data

__version__ = "0.1.0"


def corpus_dir():
    """Directory holding the bundled example models."""
    return files(__package__) / "corpus"


def corpus_path(name):
    return corpus_dir() / f"{name}.gcx"
