"""Exact computations with 2-step nilpotent groups of affine isometries of
flat pseudo-Riemannian space: validation, Witt frames, fixed points,
centralizers, low-dimensional classification and cotangent models."""

__version__ = "0.1.0"

from .centralizer import CentralizerReport, IsoAlgebraElement, centralizer_algebra, homogeneity_verdict, translation_independence
from .errors import (
    ConstructionError,
    FlatIsoError,
    InputError,
    ParseError,
    PreconditionError,
    ScopeError,
    StructureError,
)
from .exactlin import Matrix, Subspace
from .fixpoint import (
    FixedPointWitness,
    commutator_fixed_point,
    criteria_witnesses,
    dimension_diagnostic,
    fixed_point,
    freeness_scan,
    sig44_pair_family,
)
from .groupfile import fixture_path, load_group, parse_group, serialize_group
from .isogrp import (
    AffineIsometry,
    GroupPresentation,
    block_form,
    check_rules,
    commutator,
    compose,
    enumerate_words,
    group_rank,
    holonomy_abelian,
    inverse,
    u_gamma,
    u_zero,
    validate,
    validate_presentation,
)
from .lowdim import ClassificationVerdict, alpha_of, classify, construct_dim6, construct_sig2, cross_matrix
from .nilrep import NilLieAlgebra, bch_multiply, build_cotangent, realize_group, represent
from .quadspace import QuadraticSpace, WittFrame, signature, witt_frame, witt_index
