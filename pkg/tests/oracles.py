"""Independent reference computations used by the tests.

A dense state-vector simulator that applies every controlled-phase gate as an
explicit diagonal matrix, then evaluates observables with Kronecker products.
"""

import numpy as np

X = np.array([[0.0, 1.0], [1.0, 0.0]])
Z = np.diag([1.0, -1.0])
PAULI = {"I": np.eye(2), "X": X, "Z": Z}


def dense_state(h):
    n = h.n
    psi = np.ones(2**n) / np.sqrt(2**n)
    for e in h.edges:
        diag = np.array([-1.0 if all(x >> v & 1 for v in e) else 1.0 for x in range(2**n)])
        psi = np.diag(diag) @ psi
    return psi


def kron_qubits(mats):
    """Tensor product with qubit 0 as the least significant basis bit."""
    out = np.eye(1)
    for m in reversed(mats):
        out = np.kron(out, m)
    return out


def dense_operator(symbols):
    return kron_qubits([PAULI[s] for s in symbols])


def dense_probability(h, settings, outcomes):
    """<psi| prod of (1 + r P)/2 |psi> with identities on the traced qubits."""
    psi = dense_state(h)
    it = iter(outcomes)
    mats = []
    for s in settings:
        if s == "I":
            mats.append(np.eye(2))
        else:
            r = 1 if next(it) == "+" else -1
            mats.append((np.eye(2) + r * PAULI[s]) / 2)
    return float(psi @ kron_qubits(mats) @ psi)


def reduced_density(h, keep):
    """Partial trace of |psi><psi| onto the qubits in ``keep`` (sorted)."""
    n = h.n
    psi = dense_state(h).reshape([2] * n)  # axis j is qubit n-1-j
    axes_keep = [n - 1 - q for q in sorted(keep, reverse=True)]
    axes_drop = [a for a in range(n) if a not in axes_keep]
    t = np.transpose(psi, axes_keep + axes_drop).reshape(2 ** len(keep), -1)
    return t @ t.T
