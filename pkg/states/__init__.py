from .models import GellMannVariant, GraphSpec, PauliBasis, SU3Basis, StabilizerSet, StandardGates
from .service import (
    bell_states,
    bes_horodecki3x3,
    bes_horodecki4x2,
    bes_upb3x3,
    cstate,
    dstate,
    gellmann_basis,
    ghzstate,
    gstate,
    gstate_stabilizer,
    mestate,
    mmstate,
    named_state,
    orthogobs,
    pauli_basis,
    rstate,
    singlet,
    smolinstate,
    standard_gates,
    su3_alternative,
    upb_tiles,
    wstate,
)

__all__ = [
    "GellMannVariant",
    "GraphSpec",
    "PauliBasis",
    "SU3Basis",
    "StabilizerSet",
    "StandardGates",
    "bell_states",
    "bes_horodecki3x3",
    "bes_horodecki4x2",
    "bes_upb3x3",
    "cstate",
    "dstate",
    "gellmann_basis",
    "ghzstate",
    "gstate",
    "gstate_stabilizer",
    "mestate",
    "mmstate",
    "named_state",
    "orthogobs",
    "pauli_basis",
    "rstate",
    "singlet",
    "smolinstate",
    "standard_gates",
    "su3_alternative",
    "upb_tiles",
    "wstate",
]
