"""Optical elements as mode unitaries, and their action on Fock states.

Sign conventions (fixed project-wide):

  beam splitter BS_{r^2} on spatial modes (a, b), identical for H and V:
      a -> t*a + r*b,   b -> -r*a + t*b,   t = sqrt(1-r^2) >= 0, r >= 0

  polarization rotator R_theta on one spatial mode:
      H -> cos(theta) H + sin(theta) V,   V -> -sin(theta) H + cos(theta) V

  PBS on (a, b): H passes, V swaps spatial modes.

  phase shifter P_phi: both polarizations of the mode pick up e^{i phi}.

  four-port interferometer on (a, b, c, d), identical per polarization:
      a -> ( a + b + c + d)/2
      b -> (-a + b - c + d)/2
      c -> (-a - b + c + d)/2
      d -> ( a - b - c + d)/2

A mode unitary U acts on creation operators by a_i -> sum_j U[j, i] a_j;
`apply` lifts this substitution to sparse Fock states by multinomial
expansion, which preserves photon number exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from .errors import ModeError, ParameterError
from .fock import (H, V, FockState, Mode, Occ, occ_drop, occ_get, occ_merge,
                   occ_restrict, prune)

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class ElementSpec:
    kind: str                 # bs | rot | pbs | phase | fourport
    params: tuple             # numeric parameters (r_sq or angle), may be empty
    spatial_modes: tuple      # acted spatial modes, ordered

    def acted_modes(self) -> tuple[Mode, ...]:
        out = []
        for s in self.spatial_modes:
            out.append(Mode(s, H))
            out.append(Mode(s, V))
        return tuple(out)


def beam_splitter(r_sq: float, m1: int, m2: int) -> ElementSpec:
    if not 0.0 <= r_sq <= 1.0:
        raise ParameterError(f"beam splitter r^2 out of [0,1]: {r_sq}")
    return ElementSpec("bs", (float(r_sq),), (m1, m2))


def rotator(theta: float, m: int) -> ElementSpec:
    return ElementSpec("rot", (float(theta),), (m,))


def pbs(m1: int, m2: int) -> ElementSpec:
    return ElementSpec("pbs", (), (m1, m2))


def phase_shifter(phi: float, m: int) -> ElementSpec:
    return ElementSpec("phase", (float(phi),), (m,))


def four_port(m1: int, m2: int, m3: int, m4: int) -> ElementSpec:
    return ElementSpec("fourport", (), (m1, m2, m3, m4))


# --- unitaries --------------------------------------------------------------

def bs_unitary(r_sq: float) -> np.ndarray:
    """4x4 matrix over (m1 H, m1 V, m2 H, m2 V)."""
    if not 0.0 <= r_sq <= 1.0:
        raise ParameterError(f"beam splitter r^2 out of [0,1]: {r_sq}")
    t = math.sqrt(1.0 - r_sq)
    r = math.sqrt(r_sq)
    u = np.zeros((4, 4), dtype=complex)
    for p in (0, 1):  # H block, V block
        u[0 + p, 0 + p] = t
        u[2 + p, 0 + p] = r
        u[0 + p, 2 + p] = -r
        u[2 + p, 2 + p] = t
    return u


def rotator_unitary(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def pbs_unitary() -> np.ndarray:
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = 1.0  # H1 -> H1
    u[2, 2] = 1.0  # H2 -> H2
    u[3, 1] = 1.0  # V1 -> V2
    u[1, 3] = 1.0  # V2 -> V1
    return u


def phase_unitary(phi: float) -> np.ndarray:
    return np.exp(1j * phi) * np.eye(2, dtype=complex)


def four_port_unitary() -> np.ndarray:
    """8x8 matrix over (m1..m4) x (H, V), identical per polarization."""
    spatial = 0.5 * np.array([
        [1, -1, -1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, 1, 1, 1],
    ], dtype=complex)
    u = np.zeros((8, 8), dtype=complex)
    for p in (0, 1):
        u[p::2, p::2] = spatial
    return u


_UNITARY_BUILDERS = {
    "bs": lambda params: bs_unitary(*params),
    "rot": lambda params: rotator_unitary(*params),
    "pbs": lambda params: pbs_unitary(),
    "phase": lambda params: phase_unitary(*params),
    "fourport": lambda params: four_port_unitary(),
}


def element_unitary(element: ElementSpec) -> np.ndarray:
    try:
        builder = _UNITARY_BUILDERS[element.kind]
    except KeyError:
        raise ParameterError(f"unknown element kind {element.kind!r}")
    u = builder(element.params)
    assert np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) < UNITARITY_TOL
    return u


# --- lifting to Fock space --------------------------------------------------

def _mode_power_expansion(col: np.ndarray, n: int) -> dict[tuple, complex]:
    """Expand (sum_j col[j] a_j)^n as {target-count tuple: coefficient}."""
    nonzero = [(j, col[j]) for j in range(len(col)) if abs(col[j]) > 0]
    out: dict[tuple, complex] = {}
    for combo in combinations_with_replacement(range(len(nonzero)), n):
        counts = [0] * len(col)
        coeff = 1.0 + 0j
        for idx in combo:
            j, c = nonzero[idx]
            counts[j] += 1
            coeff *= c
        # multinomial factor n! / prod(k_j!)
        mult = math.factorial(n)
        for k in counts:
            mult //= math.factorial(k)
        key = tuple(counts)
        out[key] = out.get(key, 0j) + coeff * mult
    return out


def apply_matrix(state: FockState, mode_order: Sequence[Mode],
                 u: np.ndarray) -> FockState:
    """Apply a mode unitary given its ordered mode basis."""
    modes = tuple(mode_order)
    mode_set = frozenset(modes)
    for m in modes:
        if m not in state.registry:
            raise ModeError(f"mode {m} not in registry")
    index = {m: i for i, m in enumerate(modes)}
    out: dict[Occ, complex] = {}
    for occ, amp in state.terms.items():
        acted = occ_restrict(occ, mode_set)
        passive = occ_drop(occ, mode_set)
        if not acted:
            out[occ] = out.get(occ, 0j) + amp
            continue
        # seed: amplitude divided by the input monomial normalization
        poly: dict[tuple, complex] = {tuple([0] * len(modes)): amp}
        for mode, n in acted:
            poly_mode = _mode_power_expansion(u[:, index[mode]], n)
            merged: dict[tuple, complex] = {}
            for k1, c1 in poly.items():
                for k2, c2 in poly_mode.items():
                    key = tuple(a + b for a, b in zip(k1, k2))
                    merged[key] = merged.get(key, 0j) + c1 * c2
            poly = merged
        in_norm = math.sqrt(math.prod(math.factorial(n) for _, n in acted))
        for counts, coeff in poly.items():
            out_norm = math.sqrt(math.prod(math.factorial(k) for k in counts))
            new_occ = occ_merge(passive,
                                tuple((modes[j], k) for j, k in enumerate(counts) if k))
            value = coeff * out_norm / in_norm
            if abs(value) == 0.0:
                continue
            out[new_occ] = out.get(new_occ, 0j) + value
    return prune(FockState(state.registry, out, state.prune_eps))


def apply(state: FockState, element: ElementSpec) -> FockState:
    return apply_matrix(state, element.acted_modes(), element_unitary(element))


def apply_all(state: FockState, elements: Sequence[ElementSpec]) -> FockState:
    for e in elements:
        state = apply(state, e)
    return state
