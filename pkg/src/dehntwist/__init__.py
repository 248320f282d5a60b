"""Intersection numbers of Dehn-twisted curves on possibly nonorientable surfaces."""

from .bigon import find_bigon, minimal_position, remove_bigon
from .caps import MENU, Cap
from .corpus import CorpusEntry, Filters, canonical_form, enumerate_instances, load_goldens
from .criteria import braid_criterion, check_inter_bounds, commutation_criterion, distinct_twist_criterion
from .fileformat import ParseError, dump, load, parse, serialize
from .overlay import Edge, Instance, OverlayError, SignedOverlay, make_instance, trace_faces, validate
from .segments import Gamma, build_gamma, find_adjacencies, side_labels
from .topology import SurfaceKind, classify_ambient, classify_complement, is_generic
from .twist import (construct_twisted_overlay, fast_path, formula_intersection, oracle_intersection,
                    predicted_intersection)

__all__ = [
    "MENU", "Cap", "CorpusEntry", "Edge", "Filters", "Gamma", "Instance", "OverlayError", "ParseError",
    "SignedOverlay", "SurfaceKind", "braid_criterion", "build_gamma", "canonical_form", "check_inter_bounds",
    "classify_ambient", "classify_complement", "commutation_criterion", "construct_twisted_overlay",
    "distinct_twist_criterion", "dump", "enumerate_instances", "fast_path", "find_adjacencies", "find_bigon",
    "formula_intersection", "is_generic", "load", "load_goldens", "make_instance", "minimal_position",
    "oracle_intersection", "parse", "predicted_intersection", "remove_bigon", "serialize", "side_labels",
    "trace_faces", "validate",
]
