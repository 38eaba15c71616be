from .closed_forms import (
    classical_chain_ground,
    fermion_energies,
    ising_classical_ground,
    ising_free,
    ising_ground,
    ising_thermal,
    xy_classical_ground,
)
from .models import Boundary, ChainSpec, IsingMethod, ThermalParams, XYParams
from .service import (
    cluster_hamiltonian,
    coll,
    grstate,
    heisenberg,
    heisenbergp,
    interact,
    ising,
    ising2d,
    isingp,
    lattice2d,
    lattice_bonds,
    nnchain,
    nnchainp,
    quditop,
    spcoll,
    spectrum,
    spinteract,
    spising,
    spising2dp,
    spisingp,
    splattice,
    splatticep,
    spnnchain,
    spnnchainp,
    spquditop,
    sptwoquditop,
    thstate,
    twoquditop,
    xy_hamiltonian,
)

__all__ = [
    "Boundary",
    "ChainSpec",
    "IsingMethod",
    "ThermalParams",
    "XYParams",
    "classical_chain_ground",
    "cluster_hamiltonian",
    "coll",
    "fermion_energies",
    "grstate",
    "heisenberg",
    "heisenbergp",
    "interact",
    "ising",
    "ising2d",
    "ising_classical_ground",
    "ising_free",
    "ising_ground",
    "ising_thermal",
    "isingp",
    "lattice2d",
    "lattice_bonds",
    "nnchain",
    "nnchainp",
    "quditop",
    "spcoll",
    "spectrum",
    "spinteract",
    "spising",
    "spising2dp",
    "spisingp",
    "splattice",
    "splatticep",
    "spnnchain",
    "spnnchainp",
    "spquditop",
    "sptwoquditop",
    "thstate",
    "twoquditop",
    "xy_classical_ground",
    "xy_hamiltonian",
]
