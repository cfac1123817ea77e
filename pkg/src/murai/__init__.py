"""Generalized Bier spheres from multicomplexes.

Build the sphere of a proper multicomplex by the facet formula or through its
polarized Stanley-Reisner presentation, analyze its combinatorics (chordality,
stackedness, neighborliness, colorings, characteristic maps), and reproduce
the low-dimensional classifications by exhaustive desk-scale censuses.
"""

from .multicomplex import (CompositionVector, Multicomplex, complement,
                           diamond, enumerate_proper)
from .simplicial import Graph, SimplicialComplex, Vertex
from .spheres import bier_sphere, classical_bier, facet_set, polarize, polarize_star, sr_ideal
from .analysis import (ChordalityReport, CyclicSpec, StackednessReport,
                       chordality, chordless_cycle_bound, chromatic_number,
                       classify_dim1, classify_dim2, cyclic_compare,
                       gale_facets, murai_cyclic_instance, murai_cyclic_map,
                       neighborliness, shellability_witness, stackedness)
from .buchstaber import (BuchstaberReport, CharMap, buchstaber_report,
                         canonical_char_map, search_char_map_mod_p,
                         search_integer_char_map, verify_char_map)
from .census import CensusRecord, compute_record, run_census

__version__ = "0.1.0"

__all__ = [
    "CompositionVector", "Multicomplex", "complement", "diamond", "enumerate_proper",
    "Graph", "SimplicialComplex", "Vertex",
    "bier_sphere", "classical_bier", "facet_set", "polarize", "polarize_star", "sr_ideal",
    "ChordalityReport", "CyclicSpec", "StackednessReport",
    "chordality", "chordless_cycle_bound", "chromatic_number",
    "classify_dim1", "classify_dim2", "cyclic_compare", "gale_facets",
    "murai_cyclic_instance", "murai_cyclic_map", "neighborliness",
    "shellability_witness", "stackedness",
    "BuchstaberReport", "CharMap", "buchstaber_report", "canonical_char_map",
    "search_char_map_mod_p", "search_integer_char_map", "verify_char_map",
    "CensusRecord", "compute_record", "run_census",
]
