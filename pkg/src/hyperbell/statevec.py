"""Exact sign-vector simulation of hypergraph states.

A hypergraph state on ``n`` qubits has amplitudes ``signs[x] * 2**(-n/2)``
with ``signs[x] = (-1)**#{e : e subset of ones(x)}``. Bit ``i`` of the basis
label ``x`` is the computational value of qubit ``i``. All correlators and
probabilities come out as :class:`~hyperbell.dyadic.Dyadic` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .dyadic import Dyadic
from .hypergraph import MAX_QUBITS, Hypergraph, stabilizer_generators

MAGIC = b"HGSV"
FORMAT_VERSION = 1

Number = Union[int, float, Fraction, Dyadic]


class StateError(ValueError):
    pass


@lru_cache(maxsize=None)
def _labels(n: int) -> np.ndarray:
    x = np.arange(1 << n, dtype=np.int64)
    x.flags.writeable = False
    return x


def _parity(values: np.ndarray) -> np.ndarray:
    return np.bitwise_count(values) & 1


@dataclass(frozen=True, eq=False)
class SignState:
    n: int
    signs: np.ndarray

    def __post_init__(self):
        if self.signs.shape != (1 << self.n,):
            raise StateError(f"expected {1 << self.n} signs, got {self.signs.shape}")
        self.signs.flags.writeable = False

    def amplitudes(self) -> np.ndarray:
        return self.signs.astype(float) / math.sqrt(1 << self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignState)
            and self.n == other.n
            and np.array_equal(self.signs, other.signs)
        )

    def to_bytes(self) -> bytes:
        bits = np.packbits(self.signs < 0, bitorder="little")
        return MAGIC + bytes([FORMAT_VERSION, self.n]) + bits.tobytes()

    @classmethod
    def from_bytes(cls, blob: bytes) -> SignState:
        if blob[:4] != MAGIC:
            raise StateError("not a sign-vector dump (bad magic)")
        if len(blob) < 6 or blob[4] != FORMAT_VERSION:
            raise StateError("unsupported sign-vector dump version")
        n = blob[5]
        if not 1 <= n <= MAX_QUBITS:
            raise StateError(f"qubit count {n} outside [1, {MAX_QUBITS}]")
        size = 1 << n
        payload = np.frombuffer(blob[6:], dtype=np.uint8)
        if payload.size != (size + 7) // 8:
            raise StateError("truncated sign-vector dump")
        bits = np.unpackbits(payload, bitorder="little")[:size]
        return cls(n, (1 - 2 * bits.astype(np.int8)).astype(np.int8))


def build_state(h: Hypergraph, edge_order: Sequence[int] | None = None) -> SignState:
    """Apply every ``C_e`` to ``|+>^n``; each flips the sign of all x containing e."""
    if h.n > MAX_QUBITS:
        raise StateError(f"n={h.n} exceeds cap {MAX_QUBITS}")
    x = _labels(h.n)
    signs = np.ones(1 << h.n, dtype=np.int8)
    masks = h.edge_masks()
    order = range(len(masks)) if edge_order is None else edge_order
    for j in order:
        m = masks[j]
        signs[(x & m) == m] *= -1
    return SignState(h.n, signs)


@dataclass(frozen=True)
class PauliString:
    """Per-qubit symbols over ``I``, ``X``, ``Z``; ``symbols[i]`` acts on qubit ``i``."""

    symbols: str

    def __post_init__(self):
        bad = set(self.symbols) - set("IXZ")
        if bad:
            raise StateError(f"invalid Pauli symbols {sorted(bad)}; use I, X, Z")

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def x_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.symbols) if s == "X")

    @property
    def z_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.symbols) if s == "Z")

    @classmethod
    def from_masks(cls, n: int, x_mask: int, z_mask: int) -> PauliString:
        if x_mask & z_mask:
            raise StateError("a qubit cannot carry both X and Z")
        sym = []
        for i in range(n):
            sym.append("X" if x_mask >> i & 1 else "Z" if z_mask >> i & 1 else "I")
        return cls("".join(sym))


def _expectation_numerator(state: SignState, x_mask: int, z_mask: int) -> int:
    x = _labels(state.n)
    s = state.signs
    prod = s * s[x ^ x_mask] if x_mask else s * s
    if z_mask:
        neg = _parity(x & z_mask).astype(bool)
        return int(prod.sum(dtype=np.int64)) - 2 * int(prod[neg].sum(dtype=np.int64))
    return int(prod.sum(dtype=np.int64))


def expectation(state: SignState, p: PauliString | str) -> Dyadic:
    """``<H| P |H>``, exact."""
    if isinstance(p, str):
        p = PauliString(p)
    if p.n != state.n:
        raise StateError(f"Pauli string length {p.n} != {state.n} qubits")
    return Dyadic(_expectation_numerator(state, p.x_mask, p.z_mask), state.n)


def _normalize_settings(settings: str, n: int) -> str:
    settings = settings.replace("-", "I").replace(".", "I").upper()
    if len(settings) != n:
        raise StateError(f"settings length {len(settings)} != {n} qubits")
    if set(settings) - set("XZI"):
        raise StateError(f"invalid settings {settings!r}; use X, Z or I (traced out)")
    return settings


def _outcome_bits(outcomes, count: int) -> list[int]:
    if isinstance(outcomes, str):
        bits = []
        for ch in outcomes:
            if ch not in "+-":
                raise StateError(f"invalid outcome {ch!r}; use + or -")
            bits.append(0 if ch == "+" else 1)
    else:
        bits = []
        for r in outcomes:
            if r not in (1, -1):
                raise StateError(f"invalid outcome {r!r}; use +1 or -1")
            bits.append(0 if r == 1 else 1)
    if len(bits) != count:
        raise StateError(f"expected {count} outcomes, got {len(bits)}")
    return bits


def _walsh_hadamard(values: np.ndarray) -> np.ndarray:
    out = values.copy()
    h = 1
    while h < out.size:
        out = out.reshape(-1, 2, h)
        a = out[:, 0, :].copy()
        out[:, 0, :] += out[:, 1, :]
        out[:, 1, :] = a - out[:, 1, :]
        out = out.reshape(-1)
        h *= 2
    return out


def outcome_distribution(state: SignState, settings: str) -> dict[str, Dyadic]:
    """All outcome probabilities for one setting string.

    Keys are outcome strings over the measured qubits in increasing qubit
    order. Each probability is the expansion
    ``2**-k * sum_T prod(r_T) <P_T>`` over subsets T of the k measured qubits,
    evaluated for all outcomes at once with a Walsh-Hadamard transform.
    """
    settings = _normalize_settings(settings, state.n)
    measured = [i for i, s in enumerate(settings) if s != "I"]
    k = len(measured)
    corr = np.zeros(1 << k, dtype=np.int64)
    for t in range(1 << k):
        xm = zm = 0
        for j, q in enumerate(measured):
            if t >> j & 1:
                if settings[q] == "X":
                    xm |= 1 << q
                else:
                    zm |= 1 << q
        corr[t] = _expectation_numerator(state, xm, zm)
    probs = _walsh_hadamard(corr)
    out = {}
    for b in range(1 << k):
        key = "".join("-" if b >> j & 1 else "+" for j in range(k))
        out[key] = Dyadic(int(probs[b]), state.n + k)
    return out


def outcome_probability(state: SignState, settings: str, outcomes) -> Dyadic:
    """``P(outcomes | settings)``; ``I`` (or ``-``) in ``settings`` traces a qubit out.

    ``outcomes`` lists one result per measured qubit, as a ``+``/``-`` string
    or a sequence of +1/-1.
    """
    settings = _normalize_settings(settings, state.n)
    measured = [i for i, s in enumerate(settings) if s != "I"]
    bits = _outcome_bits(outcomes, len(measured))
    total = 0
    for t in range(1 << len(measured)):
        xm = zm = 0
        sign = 1
        for j, q in enumerate(measured):
            if t >> j & 1:
                if bits[j]:
                    sign = -sign
                if settings[q] == "X":
                    xm |= 1 << q
                else:
                    zm |= 1 << q
        total += sign * _expectation_numerator(state, xm, zm)
    return Dyadic(total, state.n + len(measured))


def verify_stabilizers(state: SignState, h: Hypergraph) -> bool:
    """Check ``g_i |H> = |H>`` for every generator by direct application."""
    if state.n != h.n:
        return False
    x = _labels(h.n)
    s = state.signs
    for g in stabilizer_generators(h):
        applied = s[x ^ (1 << g.qubit)].astype(np.int8) * g.sign
        for e in g.reduced_edges:
            m = sum(1 << v for v in e)
            applied = np.where((x & m) == m, -applied, applied)
        if not np.array_equal(applied, s):
            return False
    return True


# behaviors ---------------------------------------------------------------


def setting_index(settings: str) -> int:
    """X=1, Z=0, party 0 most significant."""
    idx = 0
    for s in settings:
        idx = idx << 1 | (s == "X")
    return idx


def outcome_index(outcomes: str) -> int:
    """+=0, -=1, party 0 most significant."""
    idx = 0
    for r in outcomes:
        idx = idx << 1 | (r == "-")
    return idx


def setting_string(idx: int, n: int) -> str:
    return "".join("X" if idx >> (n - 1 - i) & 1 else "Z" for i in range(n))


def outcome_string(idx: int, n: int) -> str:
    return "".join("-" if idx >> (n - 1 - i) & 1 else "+" for i in range(n))


@dataclass(frozen=True)
class Behavior:
    """Full table ``P(r|s)`` for X/Z settings, flattened as ``setting * 2**n + outcome``."""

    parties: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != 4**self.parties:
            raise StateError(f"behavior for {self.parties} parties needs {4 ** self.parties} entries")

    def entry(self, settings: str, outcomes: str):
        return self.entries[(setting_index(settings) << self.parties) + outcome_index(outcomes)]

    def vector(self) -> np.ndarray:
        return np.array([float(v) for v in self.entries])

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.entries)


def _mix(p: Dyadic, epsilon, uniform: Dyadic):
    if isinstance(epsilon, float):
        return (1.0 - epsilon) * float(p) + epsilon * float(uniform)
    eps = epsilon.to_fraction() if isinstance(epsilon, Dyadic) else Fraction(epsilon)
    value = (1 - eps) * p.to_fraction() + eps * uniform.to_fraction()
    den = value.denominator
    return Dyadic.from_fraction(value) if den & (den - 1) == 0 else value


def behavior_table(state: SignState, epsilon: Number = 0) -> Behavior:
    """Probabilities of ``(1-eps)|H><H| + eps * 1/2**n`` for all X/Z settings."""
    if not 0 <= float(epsilon) <= 1:
        raise StateError(f"noise epsilon={epsilon} outside [0, 1]")
    n = state.n
    uniform = Dyadic(1, n)
    entries = []
    for s_idx in range(1 << n):
        settings = setting_string(s_idx, n)
        dist = outcome_distribution(state, settings)
        for r_idx in range(1 << n):
            entries.append(_mix(dist[outcome_string(r_idx, n)], epsilon, uniform))
    return Behavior(n, tuple(entries))
