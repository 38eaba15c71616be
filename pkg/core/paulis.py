import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

for _matrix in (SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2):
    _matrix.setflags(write=False)
