from .models import Permutation, QuditList, ShiftDirection
from .service import (
    compose_permutations,
    keep,
    keep_nonorm,
    qudit_count,
    remove,
    reorder,
    reordermat,
    reordervec,
    shift_permutation,
    shift_qudits,
    shift_qudits_left,
    shift_qudits_right,
    spreordermat,
    swapqudits,
)

__all__ = [
    "Permutation",
    "QuditList",
    "ShiftDirection",
    "compose_permutations",
    "keep",
    "keep_nonorm",
    "qudit_count",
    "remove",
    "reorder",
    "reordermat",
    "reordervec",
    "shift_permutation",
    "shift_qudits",
    "shift_qudits_left",
    "shift_qudits_right",
    "spreordermat",
    "swapqudits",
]
