from .service import RandomSource, make_rng, rdmat, rproduct, runitary, rvec, twirl, twirl2

__all__ = [
    "RandomSource",
    "make_rng",
    "rdmat",
    "rproduct",
    "runitary",
    "rvec",
    "twirl",
    "twirl2",
]
