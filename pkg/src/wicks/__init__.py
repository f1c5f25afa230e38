"""Enumeration, counting and hyperbolic realization of single-face Wicks forms."""
from .canonical import (CanonicalClass, aut_order, automorphisms, canonicalize,
                        detect_structures, equivalent)
from .census import (check_aut_histogram, check_bounds, lemma_bounds, rooted_count,
                     asymptotic_main_term, stats_from_orders)
from .corpus import list_examples, load_example, verify_example
from .errors import *  # noqa: F401,F403
from .hyperbolic import (develop_polygon, membership_residual, project_to_variety,
                         regular_side_length, triangle_side)
from .surface import build_ordered_graph, invariants, single_face_genus
from .transforms import (apply_alpha, apply_beta, apply_gamma, apply_transform,
                         enumerate_genus, insert_edges, TransformSite)
from .words import (MultiWord, SignedWord, distance, format_word, parse_multiword,
                    parse_word, reduce, validate_wicks)

__version__ = "0.1.0"
