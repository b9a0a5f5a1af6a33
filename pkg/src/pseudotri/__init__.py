"""Cluster algebras of type D_n via centrally symmetric pseudotriangulations.

The configuration is a regular 2n-gon with a small disk at its center.
Chords of the configuration (non-long diagonals and disk-tangent segments)
come in centrally symmetric pairs, which carry the cluster variables.
This package models the combinatorics (chords, crossings, flips, flip-graph
enumeration), the algebra (exact Laurent polynomials, seeds, quiver mutation,
d-vectors), the perfect-matching formula for cluster variables, and the
subword-complex / c-cluster correspondences, together with a batch CLI and
a small HTTP API for the interactive explorer.
"""

from .chords import Chord, CsPair, ChordTable, all_cs_pairs, crosses, crossing_number
from .laurent import LaurentPoly, NotDivisible
from .pseudo import (
    Pseudotriangulation,
    is_pseudotriangulation,
    flip,
    classify,
    enumerate_flip_graph,
    FlipGraph,
)
from .faces import faces, Pseudotriangle
from .cluster import Seed, Quiver, initial_seed, mutate, all_cluster_variables, d_vector
from .matchings import openings, variable_via_matching, NoValidOpening
from . import coxeter

__all__ = [
    "Chord",
    "CsPair",
    "ChordTable",
    "all_cs_pairs",
    "crosses",
    "crossing_number",
    "LaurentPoly",
    "NotDivisible",
    "Pseudotriangulation",
    "is_pseudotriangulation",
    "flip",
    "classify",
    "enumerate_flip_graph",
    "FlipGraph",
    "faces",
    "Pseudotriangle",
    "Seed",
    "Quiver",
    "initial_seed",
    "mutate",
    "all_cluster_variables",
    "d_vector",
    "openings",
    "variable_via_matching",
    "NoValidOpening",
    "coxeter",
]
