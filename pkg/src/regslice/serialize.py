"""JSON encodings shared by report writers: complex values as [re, im]."""
import numpy as np


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def encode_vector(v):
    return [encode_complex(z) for z in np.asarray(v).reshape(-1)]


def encode_matrix(m):
    """Row-major nested list of [re, im] pairs."""
    m = np.asarray(m)
    return [[encode_complex(z) for z in row] for row in m]


def decode_vector(data):
    return np.array([complex(re, im) for re, im in data], dtype=complex).reshape(len(data))


def decode_matrix(data):
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)
