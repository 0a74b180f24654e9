"""Destructive photodetection, post-selection and Kraus measurements.

Two detector classes are modeled:

* polarization-resolving: the outcome fixes (n_H, n_V) per measured spatial
  mode, and the conditional state is the exact cofactor of that occupation.

* number-only ("bucket"): the outcome fixes the total count per measured
  spatial mode.  The branch probability is the Born sum over all compatible
  polarization splits.  The conditional state is taken as the coherent sum of
  the split cofactors, i.e. the detectors are treated as erasing polarization
  information rather than recording it.  This is the reading under which a
  non-polarization-sensitive detection of the 4-GHZ-fed HES circuit heralds a
  pure hyper-entangled state; branches where the erased sum cancels are
  flagged in the branch note and fall back to the dominant split.

Detection is destructive: measured spatial modes are removed from the
registry of every conditional state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ModeError, ParameterError, PreconditionError
from .fock import (H, V, POLS, FockState, Mode, Occ, inner_product, occ_drop,
                   occ_get, occ_restrict, modes_of, normalize, occ_new)
from .elements import ElementSpec, pbs as pbs_element, rotator, apply

NUMBER_ONLY = "number"
POL_RESOLVING = "pol"

PROB_FLOOR = 1e-15


@dataclass(frozen=True, order=True)
class DetectionPattern:
    """Per-spatial-mode outcome of one detection round.

    entries: sorted tuple of (spatial, (n_H, n_V)) for polarization-resolving
    detection, or (spatial, n) for number-only detection.
    """
    resolving: str
    entries: tuple

    def total(self) -> int:
        return sum(n if self.resolving == NUMBER_ONLY else sum(n)
                   for _, n in self.entries)

    def count(self, spatial: int) -> int:
        for s, n in self.entries:
            if s == spatial:
                return n if self.resolving == NUMBER_ONLY else sum(n)
        return 0

    def pol_count(self, spatial: int, pol: str) -> int:
        if self.resolving != POL_RESOLVING:
            raise ParameterError("pattern is not polarization-resolved")
        for s, (nh, nv) in self.entries:
            if s == spatial:
                return nh if pol == H else nv
        return 0

    def key(self) -> str:
        if self.resolving == NUMBER_ONLY:
            return ";".join(f"{s}:{n}" for s, n in self.entries)
        if self.resolving == POL_RESOLVING:
            return ";".join(f"{s}:{nh}H{nv}V" for s, (nh, nv) in self.entries)
        return ";".join(str(e) for e in self.entries)

    def __str__(self) -> str:
        return self.key() or "vacuum"


@dataclass
class OutcomeBranch:
    pattern: DetectionPattern
    probability: float
    post_state: FockState | None  # None for zero-probability / terminal branches
    note: str = ""


def _pol_pattern(occ_part: Occ, spatials: Sequence[int]) -> DetectionPattern:
    entries = []
    for s in sorted(spatials):
        nh = occ_get(occ_part, Mode(s, H))
        nv = occ_get(occ_part, Mode(s, V))
        entries.append((s, (nh, nv)))
    return DetectionPattern(POL_RESOLVING, tuple(entries))


def _number_pattern(pol_pat: DetectionPattern) -> DetectionPattern:
    entries = tuple((s, nh + nv) for s, (nh, nv) in pol_pat.entries)
    return DetectionPattern(NUMBER_ONLY, entries)


def enumerate_outcomes(state: FockState, spatials: Sequence[int],
                       resolving: str = POL_RESOLVING) -> list[OutcomeBranch]:
    """All detection branches over the given spatial modes.

    Branches are sorted canonically by pattern; probabilities sum to the
    squared norm of the input state (1 for a normalized input).
    """
    measured = frozenset(modes_of(*spatials))
    for m in measured:
        if m not in state.registry:
            raise ModeError(f"measured mode {m} not in registry")
    remaining_registry = state.registry - measured

    cofactors: dict[DetectionPattern, dict[Occ, complex]] = {}
    for occ, amp in state.terms.items():
        pat = _pol_pattern(occ_restrict(occ, measured), spatials)
        rest = occ_drop(occ, measured)
        bucket = cofactors.setdefault(pat, {})
        bucket[rest] = bucket.get(rest, 0j) + amp

    def branch_from(pattern, terms_list, note=""):
        prob = 0.0
        coherent: dict[Occ, complex] = {}
        best = None
        for terms in terms_list:
            p = sum(abs(a) ** 2 for a in terms.values())
            prob += p
            if best is None or p > best[0]:
                best = (p, terms)
            for occ, a in terms.items():
                coherent[occ] = coherent.get(occ, 0j) + a
        if prob < PROB_FLOOR:
            return None
        post = FockState(remaining_registry, coherent, state.prune_eps)
        if post.norm_sq() < 1e-12 * prob:
            # erased-polarization sum cancelled: keep dominant split
            post = FockState(remaining_registry, dict(best[1]), state.prune_eps)
            note = (note + " " if note else "") + "pol-splits-cancelled"
        return OutcomeBranch(pattern, prob, normalize(post), note)

    branches: list[OutcomeBranch] = []
    if resolving == POL_RESOLVING:
        for pat in sorted(cofactors):
            b = branch_from(pat, [cofactors[pat]])
            if b:
                branches.append(b)
    elif resolving == NUMBER_ONLY:
        grouped: dict[DetectionPattern, list[dict]] = {}
        for pat, terms in cofactors.items():
            grouped.setdefault(_number_pattern(pat), []).append(terms)
        for pat in sorted(grouped):
            b = branch_from(pat, grouped[pat])
            if b:
                branches.append(b)
    else:
        raise ParameterError(f"unknown resolving mode {resolving!r}")
    return branches


def post_select(state: FockState, pattern: DetectionPattern) -> OutcomeBranch:
    """Project onto one detection pattern; never divides by zero."""
    spatials = [s for s, _ in pattern.entries]
    for b in enumerate_outcomes(state, spatials, pattern.resolving):
        if b.pattern == pattern:
            return b
    return OutcomeBranch(pattern, 0.0, None, "zero-probability pattern")


# ---------------------------------------------------------------------------
# Kraus measurement operators (quantum filter and its modification)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasurementOperator:
    """Sub-normalized Kraus operator, sparse over occupation vectors.

    terms maps (occ_in, occ_out) -> coefficient, where the occupations cover
    `acted_modes` only.  All other computational inputs are annihilated.
    """
    name: str
    acted_spatials: tuple
    terms: tuple  # ((occ_in, occ_out, coeff), ...)

    def acted_modes(self) -> frozenset[Mode]:
        return frozenset(modes_of(*self.acted_spatials))


def _occ1(*entries: tuple[int, str]) -> Occ:
    return occ_new({Mode(s, p): 1 for s, p in entries})


def qf_operator(i: int, j: int) -> MeasurementOperator:
    """Original quantum filter on modes (i, j).

    Success coefficients: 1/4 on |HH><HH| and |VV><VV|, 1/4 on |0V><0V|,
    1/2 on |V0><V0| and |00><00|; every other computational input is
    annihilated.  Note the H/V asymmetry for single-photon inputs.
    """
    if i == j:
        raise ParameterError("quantum filter needs two distinct modes")
    terms = (
        (_occ1((i, H), (j, H)), _occ1((i, H), (j, H)), 0.25),
        (_occ1((i, V), (j, V)), _occ1((i, V), (j, V)), 0.25),
        (_occ1((j, V)), _occ1((j, V)), 0.25),
        (_occ1((i, V)), _occ1((i, V)), 0.5),
        ((), (), 0.5),
    )
    return MeasurementOperator("qf", (i, j), terms)


def mqf_operator(i: int, j: int) -> MeasurementOperator:
    """Modified quantum filter: symmetric in polarization and immune to
    single-photon inputs.  Coefficients 1/8 on |HH>, |VV>; 1/4 on vacuum."""
    if i == j:
        raise ParameterError("quantum filter needs two distinct modes")
    terms = (
        (_occ1((i, H), (j, H)), _occ1((i, H), (j, H)), 0.125),
        (_occ1((i, V), (j, V)), _occ1((i, V), (j, V)), 0.125),
        ((), (), 0.25),
    )
    return MeasurementOperator("mqf", (i, j), terms)


def apply_kraus(state: FockState, op: MeasurementOperator) -> OutcomeBranch:
    """Success branch of a Kraus measurement: probability ||K psi||^2 and the
    normalized conditional state.  Filtered photons survive in their modes."""
    acted = op.acted_modes()
    for m in acted:
        if m not in state.registry:
            raise ModeError(f"operator mode {m} not in registry")
    lookup = {}
    for occ_in, occ_out, coeff in op.terms:
        lookup.setdefault(occ_in, []).append((occ_out, coeff))
    out: dict[Occ, complex] = {}
    for occ, amp in state.terms.items():
        part = occ_restrict(occ, acted)
        rest = occ_drop(occ, acted)
        for occ_out, coeff in lookup.get(part, ()):  # non-support -> annihilated
            merged = dict(rest)
            for m, n in occ_out:
                merged[m] = merged.get(m, 0) + n
            new = occ_new(merged)
            out[new] = out.get(new, 0j) + amp * coeff
    post = FockState(state.registry, out, state.prune_eps)
    prob = post.norm_sq()
    pattern = DetectionPattern("kraus", ((op.name, tuple(op.acted_spatials)),))
    if prob < PROB_FLOOR:
        return OutcomeBranch(pattern, 0.0, None, f"{op.name} annihilates input")
    return OutcomeBranch(pattern, prob, normalize(post), f"{op.name} success")


# ---------------------------------------------------------------------------
# Qubit fusion gates (Browne-Rudolph style), built from PBS + rotators
# ---------------------------------------------------------------------------

def _check_dual_rail(state: FockState, spatial: int) -> None:
    for occ in state.terms:
        n = occ_get(occ, Mode(spatial, H)) + occ_get(occ, Mode(spatial, V))
        if n > 1:
            raise PreconditionError(
                f"fusion input has more than one photon in mode {spatial}")


def fusion_type1(state: FockState, m_a: int, m_b: int) -> list[OutcomeBranch]:
    """Type-I fusion: PBS(a,b), R_{pi/4} on b, detect b (keeps mode a).

    Success branches are those with exactly one photon detected.
    """
    _check_dual_rail(state, m_a)
    _check_dual_rail(state, m_b)
    st = apply(state, pbs_element(m_a, m_b))
    st = apply(st, rotator(math.pi / 4, m_b))
    return enumerate_outcomes(st, [m_b], POL_RESOLVING)


def fusion_type2(state: FockState, m_a: int, m_b: int) -> list[OutcomeBranch]:
    """Type-II fusion: PBS(a,b), R_{pi/4} on both, detect both modes.

    Success branches carry one H and one V photon in total.
    """
    _check_dual_rail(state, m_a)
    _check_dual_rail(state, m_b)
    st = apply(state, pbs_element(m_a, m_b))
    st = apply(st, rotator(math.pi / 4, m_a))
    st = apply(st, rotator(math.pi / 4, m_b))
    return enumerate_outcomes(st, [m_a, m_b], POL_RESOLVING)


def type1_success(pattern: DetectionPattern) -> bool:
    return pattern.total() == 1


def type2_success(pattern: DetectionPattern) -> bool:
    if pattern.total() != 2:
        return False
    nh = sum(nh for _, (nh, _) in pattern.entries)
    nv = sum(nv for _, (_, nv) in pattern.entries)
    return nh == 1 and nv == 1
