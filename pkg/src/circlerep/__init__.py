"""Exact computational dynamics of circle homeomorphisms.

Rotation and translation numbers with certificates, combinatorial bounds
for products of homeomorphisms with prescribed periodic orbits, Euler
numbers of surface group representations, commutator-preserving rewriting
and semi-conjugacy fingerprints.
"""

__version__ = "0.1.0"

from .maps import MobiusLift, PL, Translation, compose, evaluate, from_json, invert, to_json
from .rotation import RotResult, rot_circle, rott, rott_compare
from .cw import OrbitConfig, check_max_constraints, realize, word_translation_bound
from .surface import SurfaceRep, euler, extend_by_rotations, fuchsian_rep, lift_rep
from .euclid import euclid_reduce
from .semiconj import Fingerprint, fingerprint, same_class_candidate, tau

__all__ = [
    "MobiusLift", "PL", "Translation", "compose", "evaluate", "from_json", "invert", "to_json",
    "RotResult", "rot_circle", "rott", "rott_compare",
    "OrbitConfig", "check_max_constraints", "realize", "word_translation_bound",
    "SurfaceRep", "euler", "extend_by_rotations", "fuchsian_rep", "lift_rep",
    "euclid_reduce",
    "Fingerprint", "fingerprint", "same_class_candidate", "tau",
]
