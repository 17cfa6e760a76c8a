"""Finite categories, acyclic categories, and a computational toolkit for their homotopy theory."""

from .acyclic import ReflectionResult, check_unit_counit, factor_through_unit, reflect
from .congruence import (DEFAULT_CAP, DiagramInCat, RelationPair, coequalizer,
                         coproduct_by_pushouts, filtered_colimit, finite_colimit, is_filtered,
                         present_category, pushout, quotient, saturate, sieve_pushout_direct)
from .errors import (AccatError, GrowthExceeded, InvalidCategory, InvalidFunctor,
                     SearchBudgetExceeded, StageBudgetExceeded, TruncatedInput, UnknownSuite)
from .fincat import (FinCat, FinFunctor, are_isomorphic, coproduct, count_functors,
                     enumerate_functors, find_isomorphism, is_acyclic, is_dwyer, is_sieve)
from .generate import SuiteConfig, generate_instance
from .homology import HomologyProfile, homology, homology_equivalent, smith_normal_form
from .model import (LiftingSquare, find_lift, has_rlp, smallness_witness, soa_factorize)
from .simplicial import (BoundedSSet, Poset, SimplicialComplex, boundary, csd2, face_poset,
                         horn, nerve, order_complex, sd, standard_simplex, tau1, thol_generator)
from .suites import SUITES, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
