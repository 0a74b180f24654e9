"""Constructors for the resource and target states of the catalogue.

All constructors return normalized FockStates on explicitly given spatial
modes, so they can be placed wherever a circuit needs them.
"""
from __future__ import annotations

import math
from itertools import product

from .errors import ConfigurationError
from .fock import (H, V, POLS, FockState, Mode, make_registry, occ_of,
                   state_from_terms, tensor)
from .quadbit import QuadbitCodec, plus_state, quadbit_fourier, encode_vector

_SQ2 = math.sqrt(2.0)


def _reg(*spatials):
    return make_registry(spatials)


def bell_phi_plus(m1: int, m2: int, registry=None) -> FockState:
    """(|HH> + |VV>)/sqrt(2) across two spatial modes."""
    reg = registry or _reg(m1, m2)
    return state_from_terms(reg, {
        occ_of(Mode(m1, H), Mode(m2, H)): 1 / _SQ2,
        occ_of(Mode(m1, V), Mode(m2, V)): 1 / _SQ2,
    })


def bell_phi_minus(m1: int, m2: int, registry=None) -> FockState:
    reg = registry or _reg(m1, m2)
    return state_from_terms(reg, {
        occ_of(Mode(m1, H), Mode(m2, H)): 1 / _SQ2,
        occ_of(Mode(m1, V), Mode(m2, V)): -1 / _SQ2,
    })


def bell_psi_plus(m1: int, m2: int, registry=None) -> FockState:
    reg = registry or _reg(m1, m2)
    return state_from_terms(reg, {
        occ_of(Mode(m1, H), Mode(m2, V)): 1 / _SQ2,
        occ_of(Mode(m1, V), Mode(m2, H)): 1 / _SQ2,
    })


def ghz(modes: tuple[int, ...], registry=None) -> FockState:
    """(|H...H> + |V...V>)/sqrt(2) over the listed spatial modes."""
    if len(modes) < 2:
        raise ConfigurationError("GHZ needs at least two modes")
    reg = registry or _reg(*modes)
    return state_from_terms(reg, {
        occ_of(*(Mode(m, H) for m in modes)): 1 / _SQ2,
        occ_of(*(Mode(m, V) for m in modes)): 1 / _SQ2,
    })


def hes(photon_a: tuple[int, int], photon_b: tuple[int, int],
        registry=None, signs=(1, 1), pol_pairing="same") -> FockState:
    """Hyper-entangled state of two photons.

    photon_a spans spatial modes (a1, a2), photon_b spans (b1, b2); the state
    pairs a1 with b1 and a2 with b2:

        (1/2) sum_P [ s1 |P a1>|P' b1> + s2 |P a2>|P' b2> ]

    with P' = P for pol_pairing "same" (the Phi+ form) and P' = flipped for
    "anti" (the Psi+ form used by the Ex3 ancilla).
    """
    a1, a2 = photon_a
    b1, b2 = photon_b
    reg = registry or _reg(a1, a2, b1, b2)
    flip = {H: V, V: H}
    terms = {}
    for p in POLS:
        q = p if pol_pairing == "same" else flip[p]
        terms[occ_of(Mode(a1, p), Mode(b1, q))] = signs[0] * 0.5
        terms[occ_of(Mode(a2, p), Mode(b2, q))] = signs[1] * 0.5
    return state_from_terms(reg, terms)


def hes_phi_plus(m1=1, m2=2, m3=3, m4=4, registry=None) -> FockState:
    """The canonical HES: photon A over (m1, m2), photon B over (m3, m4),
    (1/2)(|H1 H3> + |V1 V3> + |H2 H4> + |V2 V4>)."""
    return hes((m1, m2), (m3, m4), registry=registry)


def quadbit_product(codecs, logical_states, registry=None) -> FockState:
    """Tensor of single-photon quadbit states, one per codec.

    logical_states: per codec, either an int level or a 4-vector.
    """
    spatials = [s for c in codecs for s in c.spatials()]
    reg = registry or _reg(*spatials)
    state = None
    for codec, logical in zip(codecs, logical_states):
        if isinstance(logical, int):
            vec = [0] * 4
            vec[logical] = 1
        else:
            vec = list(logical)
        part = encode_vector(vec, codec, make_registry(codec.spatials()))
        state = part if state is None else tensor(state, part)
    return FockState(reg, dict(state.terms), state.prune_eps)


def _sum_over_levels(codecs, amp_fn, registry):
    """sum over level tuples of amp_fn(levels) * |levels over codecs>."""
    terms = {}
    for levels in product(range(4), repeat=len(codecs)):
        amp = amp_fn(levels)
        if abs(amp) < 1e-15:
            continue
        modes = [c.level_modes()[k] for c, k in zip(codecs, levels)]
        terms[occ_of(*modes)] = terms.get(occ_of(*modes), 0) + amp
    return state_from_terms(registry, terms)


def qdc2(codec_a: QuadbitCodec, codec_b: QuadbitCodec, registry=None) -> FockState:
    """2-quadbit cluster (1/2) sum_i |i>|+_i>."""
    reg = registry or _reg(*codec_a.spatials(), *codec_b.spatials())
    fourier = quadbit_fourier()

    def amp(levels):
        i, l = levels
        return 0.5 * fourier[l, i]

    return _sum_over_levels((codec_a, codec_b), amp, reg)


def qdc_ghz(codecs, registry=None, signs=None) -> FockState:
    """(1/2) sum_i s_i |i i ... i> over n quadbits (GHZ form)."""
    reg = registry or _reg(*(s for c in codecs for s in c.spatials()))
    signs = signs or (1, 1, 1, 1)

    def amp(levels):
        if len(set(levels)) != 1:
            return 0.0
        return 0.5 * signs[levels[0]]

    return _sum_over_levels(codecs, amp, reg)


def qdc3(codec_a, codec_b, codec_c, registry=None) -> FockState:
    """3-quadbit cluster in the form (1/2) sum_i |i> |+_i> |i>.

    This is what the K1 output becomes after its recorded correction (a
    polarization phase on the middle photon followed by the generalized
    Hadamard there); it is the GHZ form rotated by the Fourier gate on the
    central quadbit.
    """
    reg = registry or _reg(*codec_a.spatials(), *codec_b.spatials(),
                           *codec_c.spatials())
    fourier = quadbit_fourier()

    def amp(levels):
        i, l, j = levels
        if i != j:
            return 0.0
        return 0.5 * fourier[l, i]

    return _sum_over_levels((codec_a, codec_b, codec_c), amp, reg)


def qdc3_redundant(codecs, registry=None) -> FockState:
    """(1/2) sum_i |+_i> |i i> |+_i>: the 4-photon fusion product with the
    central quadbit redundantly encoded."""
    if len(codecs) != 4:
        raise ConfigurationError("redundant 3-cluster uses four photons")
    reg = registry or _reg(*(s for c in codecs for s in c.spatials()))
    fourier = quadbit_fourier()

    def amp(levels):
        a, i, j, b = levels
        if i != j:
            return 0.0
        return 0.5 * fourier[a, i] * fourier[b, i]

    return _sum_over_levels(codecs, amp, reg)


def qdc4_star(codecs, registry=None) -> FockState:
    """4-quadbit star cluster (1/2) sum_d |+_d> |d> |+_d> |+_d>."""
    if len(codecs) != 4:
        raise ConfigurationError("star cluster uses four photons")
    reg = registry or _reg(*(s for c in codecs for s in c.spatials()))
    fourier = quadbit_fourier()

    def amp(levels):
        a, d, b, c = levels
        return 0.5 * fourier[a, d] * fourier[b, d] * fourier[c, d]

    return _sum_over_levels(codecs, amp, reg)
