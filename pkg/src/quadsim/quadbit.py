"""Four-level (quadbit) encoding of one photon over two spatial modes.

Logical levels over a codec with spatial modes (k1, k2):

    |0> = H in k1,  |1> = V in k1,  |2> = H in k2,  |3> = V in k2

The generalized Hadamard is the order-4 discrete Fourier transform with
omega = e^{i pi/2} = i, sending |k> to (1/2) sum_l i^{kl} |l>.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import EncodingError
from .fock import (H, V, FockState, Mode, make_registry, occ_of,
                   state_from_terms)


@dataclass(frozen=True)
class QuadbitCodec:
    k1: int
    k2: int

    def level_modes(self) -> tuple[Mode, Mode, Mode, Mode]:
        return (Mode(self.k1, H), Mode(self.k1, V),
                Mode(self.k2, H), Mode(self.k2, V))

    def spatials(self) -> tuple[int, int]:
        return (self.k1, self.k2)


def quadbit_fourier() -> np.ndarray:
    """4x4 logical DFT: F[l, k] = i^{k l} / 2."""
    w = 1j
    return np.array([[w ** (k * l) / 2 for k in range(4)] for l in range(4)],
                    dtype=complex)


def encode(level: int, codec: QuadbitCodec,
           registry: frozenset[Mode] | None = None) -> FockState:
    if level not in (0, 1, 2, 3):
        raise EncodingError(f"quadbit level must be 0..3, got {level}")
    if registry is None:
        registry = make_registry(codec.spatials())
    mode = codec.level_modes()[level]
    return state_from_terms(registry, {occ_of(mode): 1.0})


def encode_vector(amplitudes, codec: QuadbitCodec,
                  registry: frozenset[Mode] | None = None) -> FockState:
    """Single-photon state sum_k amplitudes[k] |k> over the codec."""
    if registry is None:
        registry = make_registry(codec.spatials())
    modes = codec.level_modes()
    terms = {occ_of(modes[k]): complex(a)
             for k, a in enumerate(amplitudes) if abs(complex(a)) > 0}
    return state_from_terms(registry, terms)


def decode(state: FockState, codec: QuadbitCodec) -> np.ndarray:
    """Logical 4-vector of a single-photon state on the codec's modes."""
    modes = codec.level_modes()
    vec = np.zeros(4, dtype=complex)
    for occ, amp in state.items():
        if len(occ) != 1 or occ[0][1] != 1:
            raise EncodingError("state is not a one-photon quadbit")
        mode = occ[0][0]
        if mode not in modes:
            raise EncodingError(f"photon outside codec modes: {mode}")
        vec[modes.index(mode)] += amp
    if np.linalg.norm(vec) == 0:
        raise EncodingError("no support on codec modes")
    return vec


def plus_state(i: int, codec: QuadbitCodec,
               registry: frozenset[Mode] | None = None) -> FockState:
    """|+_i> = (1/2) sum_k e^{i k pi/2 * i} |k>."""
    amps = [cmath.exp(1j * cmath.pi / 2 * i * k) / 2 for k in range(4)]
    return encode_vector(amps, codec, registry)
