"""Symbolic correspondence calculus for motive decompositions.

The package verifies, by exact term rewriting over the rational-function
field Q(n), the explicit splitting identities of motives of fibrations
and smooth blow-ups; cross-checks accepted decompositions numerically
through graded Betti ledgers; and derives conjecture-level consequences
with a citation-carrying forward-chaining rule engine.
"""

from .scalars import Scalar
from .corr import (AlgebraError, Atom, Generator, Presentation, RewriteRule,
                   Term, Word, check_confluence_sample, compose_terms,
                   normalize, transpose_term)
from .motives import (MotiveError, MotiveMorphism, MotiveObject, Summand,
                      TriangularityError, TriangularReport, classify_triangular,
                      compose_morphisms, identity_morphism, neumann_inverse,
                      transpose_morphism, verify_idempotent)
from .fibration import (Decomposition, FibrationScenario, ProjectorWitness,
                        Remainder, ScenarioError, build_base_inclusion,
                        build_base_projection, build_fibration_presentation,
                        build_projector, chow_rank_map, split_motive)
from .blowup import (BlowupError, BlowupMorphisms, BlowupScenario,
                     CKProjectorSet, TwoSidedReport, build_blowup_morphisms,
                     build_blowup_presentation, synthesize_chow_kunneth,
                     verify_two_sided)
from .inference import (Fact, FiberDescriptor, InferenceError, InferenceResult,
                        Trace, elv_check, fiber_facts, infer, replay)
from .realization import (FamilyEntry, GradedPoly, Rank, RealizationError,
                          check_decomposition_realization, family, poincare_of)

__version__ = "0.1.0"
