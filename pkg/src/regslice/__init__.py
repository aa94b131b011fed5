"""Regular Slodowy slices of sl_n, the model space G x S_reg, and sampled
checks of when a Hamiltonian SL_n-space is equivariantly G x S_reg."""
from .adjoint_quotient import char_invariants, orbit_representative, slice_from_invariants
from .lie_core import GroupSpec, bracket, is_regular, killing_form
from .model_space import ModelPoint, ModelSpace, negation_twist
from .normal_form import conjugate_into_slice, model_trivialize, transporter
from .scenarios import ScenarioSpec, build
from .slodowy import SlodowySlice, principal_triple
from .verifier import PresentedSpace, VerifierConfig, classify

__version__ = "0.1.0"

__all__ = [
    "GroupSpec", "bracket", "is_regular", "killing_form",
    "SlodowySlice", "principal_triple",
    "char_invariants", "orbit_representative", "slice_from_invariants",
    "ModelPoint", "ModelSpace", "negation_twist",
    "conjugate_into_slice", "model_trivialize", "transporter",
    "PresentedSpace", "VerifierConfig", "classify",
    "ScenarioSpec", "build",
]
