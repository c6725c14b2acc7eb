"""egl: finite groups from presentations and the E-group predicates."""

from .engine import CayleyGroup, GroupMap, cyclic_group, direct_product, materialize, quotient
from .errors import *  # noqa: F401,F403
from .presentation import Presentation, Word, eval_word, load_presentation, parse_presentation, parse_word
from .structure import (
    Subgroup,
    VerdictReport,
    center,
    centralizer,
    closure,
    commutator_subgroup,
    derived,
    exponent,
    frattini,
    gamma3,
    is_2_engel,
    lower_central_series,
    min_generators,
    nilpotency_class,
    omega,
    power_subgroup,
    regular_power_identity,
    second_center,
)
from .morphisms import (
    EGroupVerdict,
    are_isomorphic,
    aut_is_abelian,
    automorphisms,
    endomorphisms,
    homomorphisms,
    is_central_auto,
    is_e_group,
    is_p_epsilon,
    non_auto_endos_land_in_center,
)

__version__ = "0.1.0"
