"""Sparse multi-mode bosonic Fock states.

A mode is a (spatial, polarization) pair.  Occupation vectors store only
nonzero counts, sorted by mode, so they are hashable and canonical.  States
are sparse maps occupation -> complex amplitude with the standard bosonic
normalization a^dag^n |0> = sqrt(n!) |n>.

FockState values are immutable by convention: every operation returns a new
state and never mutates `terms` of an existing one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import ConfigurationError, DegenerateStateError, ModeError

H = "H"
V = "V"
POLS = (H, V)

# Primed modes (1', 2', ...) live in a disjoint spatial-index range.
PRIMED_BASE = 100


class Mode(NamedTuple):
    spatial: int
    pol: str


def primed(k: int) -> int:
    """Spatial index assigned to the primed mode k'."""
    return PRIMED_BASE + k


def is_primed(spatial: int) -> bool:
    return spatial >= PRIMED_BASE


def spatial_label(spatial: int) -> str:
    """Human-readable label: 3 -> "3", 103 -> "3'"."""
    if is_primed(spatial):
        return f"{spatial - PRIMED_BASE}'"
    return str(spatial)


def modes_of(*spatials: int) -> tuple[Mode, ...]:
    """Both polarization modes of each spatial mode, in (H, V) order."""
    out = []
    for s in spatials:
        out.append(Mode(s, H))
        out.append(Mode(s, V))
    return tuple(out)


def make_registry(spatials: Iterable[int]) -> frozenset[Mode]:
    return frozenset(modes_of(*sorted(set(spatials))))


# ---------------------------------------------------------------------------
# Occupation vectors: sorted tuples of ((spatial, pol), count), count > 0.
# ---------------------------------------------------------------------------

Occ = tuple  # tuple[tuple[Mode, int], ...]

VACUUM_OCC: Occ = ()


def occ_new(counts: Mapping[Mode, int] | Iterable[tuple[Mode, int]]) -> Occ:
    items = counts.items() if isinstance(counts, Mapping) else counts
    merged: dict[Mode, int] = {}
    for mode, n in items:
        if n < 0:
            raise ValueError(f"negative count for {mode}")
        if n:
            merged[mode] = merged.get(mode, 0) + n
    return tuple(sorted(merged.items()))


def occ_of(*modes: Mode) -> Occ:
    """Occupation with one photon per listed mode (repeats allowed)."""
    counts: dict[Mode, int] = {}
    for m in modes:
        counts[m] = counts.get(m, 0) + 1
    return tuple(sorted(counts.items()))


def occ_total(occ: Occ) -> int:
    return sum(n for _, n in occ)


def occ_get(occ: Occ, mode: Mode) -> int:
    for m, n in occ:
        if m == mode:
            return n
    return 0


def occ_restrict(occ: Occ, modes: frozenset[Mode] | set[Mode]) -> Occ:
    return tuple((m, n) for m, n in occ if m in modes)


def occ_drop(occ: Occ, modes: frozenset[Mode] | set[Mode]) -> Occ:
    return tuple((m, n) for m, n in occ if m not in modes)


def occ_merge(a: Occ, b: Occ) -> Occ:
    counts = dict(a)
    for m, n in b:
        counts[m] = counts.get(m, 0) + n
    return tuple(sorted(counts.items()))


# ---------------------------------------------------------------------------
# FockState
# ---------------------------------------------------------------------------

NORM_TOL = 1e-9
ZERO_NORM = 1e-12


@dataclass(frozen=True)
class FockState:
    registry: frozenset[Mode]
    terms: dict = field(default_factory=dict)  # Occ -> complex
    prune_eps: float = 1e-12

    def amplitude(self, occ: Occ) -> complex:
        return self.terms.get(occ, 0j)

    def items(self):
        return self.terms.items()

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.terms.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def max_photons(self) -> int:
        return max((occ_total(occ) for occ in self.terms), default=0)

    def is_zero(self) -> bool:
        return self.norm_sq() < ZERO_NORM**2

    def map_amplitudes(self, f) -> "FockState":
        return FockState(self.registry, {o: f(a) for o, a in self.terms.items()},
                         self.prune_eps)

    def scaled(self, c: complex) -> "FockState":
        return self.map_amplitudes(lambda a: a * c)

    def dump_records(self) -> list[dict]:
        """Stable-sorted JSON-able dump of the state's terms."""
        records = []
        for occ in sorted(self.terms):
            a = complex(self.terms[occ])
            records.append({
                "mode_occupations": [[m.spatial, m.pol, n] for m, n in occ],
                "re": a.real,
                "im": a.imag,
            })
        return records

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        parts = []
        for occ in sorted(self.terms):
            ket = "".join(f"|{n if n > 1 else ''}{m.pol}_{spatial_label(m.spatial)}>"
                          for m, n in occ) or "|vac>"
            parts.append(f"{self.terms[occ]:.4g} {ket}")
        return "FockState(" + " + ".join(parts) + ")"


def vacuum(registry: frozenset[Mode]) -> FockState:
    if not registry:
        raise ConfigurationError("registry must not be empty")
    return FockState(frozenset(registry), {VACUUM_OCC: 1.0 + 0j})


def state_from_terms(registry: frozenset[Mode],
                     terms: Mapping[Occ, complex],
                     normalized: bool = False) -> FockState:
    reg = frozenset(registry)
    clean: dict[Occ, complex] = {}
    for occ, amp in terms.items():
        for m, _ in occ:
            if m not in reg:
                raise ModeError(f"mode {m} not in registry")
        if abs(amp) > 0:
            clean[occ] = clean.get(occ, 0j) + complex(amp)
    state = FockState(reg, clean)
    return normalize(state) if normalized else state


def create(state: FockState, mode: Mode) -> FockState:
    """Apply the creation operator for `mode`; result is not normalized."""
    if mode not in state.registry:
        raise ModeError(f"mode {mode} not in registry")
    out: dict[Occ, complex] = {}
    for occ, amp in state.terms.items():
        n = occ_get(occ, mode)
        new = occ_merge(occ, ((mode, 1),))
        out[new] = out.get(new, 0j) + amp * math.sqrt(n + 1)
    return FockState(state.registry, out, state.prune_eps)


def annihilate(state: FockState, mode: Mode) -> FockState:
    """Adjoint of create; used by adjointness property tests."""
    if mode not in state.registry:
        raise ModeError(f"mode {mode} not in registry")
    out: dict[Occ, complex] = {}
    for occ, amp in state.terms.items():
        n = occ_get(occ, mode)
        if n == 0:
            continue
        counts = dict(occ)
        counts[mode] = n - 1
        new = occ_new(counts)
        out[new] = out.get(new, 0j) + amp * math.sqrt(n)
    return FockState(state.registry, out, state.prune_eps)


def create_many(state: FockState, *modes: Mode) -> FockState:
    for m in modes:
        state = create(state, m)
    return state


def superpose(pairs: Iterable[tuple[complex, FockState]]) -> FockState:
    pairs = list(pairs)
    if not pairs:
        raise ConfigurationError("superpose needs at least one state")
    registry = pairs[0][1].registry
    eps = pairs[0][1].prune_eps
    out: dict[Occ, complex] = {}
    for c, st in pairs:
        if st.registry != registry:
            raise ModeError("superpose across mismatched registries")
        for occ, amp in st.terms.items():
            out[occ] = out.get(occ, 0j) + c * amp
    return prune(FockState(registry, out, eps), 0.0)


def inner_product(a: FockState, b: FockState) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.registry != b.registry:
        raise ModeError("inner product across mismatched registries")
    if len(a.terms) > len(b.terms):
        a, b = b, a
        return complex(sum(b.terms[occ].conjugate() * amp
                           for occ, amp in a.terms.items()
                           if occ in b.terms)).conjugate()
    return complex(sum(amp.conjugate() * b.terms[occ]
                       for occ, amp in a.terms.items() if occ in b.terms))


def norm(a: FockState) -> float:
    return a.norm()


def normalize(a: FockState) -> FockState:
    n = a.norm()
    if n < ZERO_NORM:
        raise DegenerateStateError("cannot normalize (near-)zero state")
    return a.scaled(1.0 / n)


def prune(a: FockState, eps: float | None = None,
          renormalize: bool = False) -> FockState:
    if eps is None:
        eps = a.prune_eps
    kept = {occ: amp for occ, amp in a.terms.items() if abs(amp) > eps}
    out = FockState(a.registry, kept, a.prune_eps)
    return normalize(out) if renormalize else out


def embed(a: FockState, registry: frozenset[Mode]) -> FockState:
    """View `a` on a larger registry (absent modes are unoccupied)."""
    reg = frozenset(registry)
    for m in a.registry:
        if m not in reg:
            # modes dropped from the registry must be unoccupied in every term
            if any(occ_get(occ, m) for occ in a.terms):
                raise ModeError(f"cannot embed: mode {m} is occupied")
    return FockState(reg, dict(a.terms), a.prune_eps)


def tensor(a: FockState, b: FockState) -> FockState:
    """Product state on the union registry; registries must be disjoint."""
    if a.registry & b.registry:
        raise ModeError("tensor factors share modes")
    reg = a.registry | b.registry
    out: dict[Occ, complex] = {}
    for oa, ca in a.terms.items():
        for ob, cb in b.terms.items():
            out[occ_merge(oa, ob)] = ca * cb
    return FockState(reg, out, min(a.prune_eps, b.prune_eps))
