from .document import QuantumDocument, dumps_document, loads_document, read_document, write_document
from .models import NumericPolicy, RegisterShape, StateKind, Storage
from .policy import current_policy, use_policy
from .service import (
    addnoise,
    as_operator,
    as_storage,
    as_vector,
    binom,
    bra,
    braket,
    comm,
    density,
    ensure_within_cap,
    ex,
    is_hermitian,
    is_vector_like,
    ket,
    ketbra,
    ketbra2,
    maxeig,
    mineig,
    mkron,
    nm,
    pkron,
    proj_asym,
    proj_sym,
    qeye,
    qsize,
    qvec,
    register_size,
    require_hermitian,
    side,
    to_dense,
    to_sparse,
    trace2,
    trnorm,
    va,
)

__all__ = [
    "NumericPolicy",
    "RegisterShape",
    "StateKind",
    "Storage",
    "QuantumDocument",
    "dumps_document",
    "loads_document",
    "read_document",
    "write_document",
    "current_policy",
    "use_policy",
    "addnoise",
    "as_operator",
    "as_storage",
    "as_vector",
    "binom",
    "bra",
    "braket",
    "comm",
    "density",
    "ensure_within_cap",
    "ex",
    "is_hermitian",
    "is_vector_like",
    "ket",
    "ketbra",
    "ketbra2",
    "maxeig",
    "mineig",
    "mkron",
    "nm",
    "pkron",
    "proj_asym",
    "proj_sym",
    "qeye",
    "qsize",
    "qvec",
    "register_size",
    "require_hermitian",
    "side",
    "to_dense",
    "to_sparse",
    "trace2",
    "trnorm",
    "va",
]
