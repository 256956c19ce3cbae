"""Monte-Carlo simulation of the two-basis qudit protocol under a Pauli channel.

Randomness comes from numpy's PCG64 generator seeded through
``SeedSequence``; a run is fully determined by its seed.  Eavesdropping is
modelled as an i.i.d. Pauli channel on every pair (a collective attack).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .bell import BellSpectrum
from .criteria import threshold_disturbance
from .disturbance import disturbance_of_spectrum
from .galois import FieldSpec, field
from .pauli import all_paulis, fourier


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed: int, n: int) -> list[np.random.SeedSequence]:
    """Independent child streams for parallel runs."""
    return np.random.SeedSequence(seed).spawn(n)


@dataclass(frozen=True)
class PauliChannel:
    """Applies ``E_mn`` with probability ``probs[m, n]``."""

    spec: FieldSpec
    probs: np.ndarray = dc_field(repr=False)

    def __post_init__(self) -> None:
        p = np.array(self.probs, dtype=float)
        d = self.spec.d
        if p.shape != (d, d):
            raise ValueError(f"channel probabilities must have shape ({d}, {d})")
        if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
            raise ValueError("channel probabilities must be non-negative and sum to 1")
        p = np.clip(p, 0.0, None)
        p /= p.sum()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_spectrum(cls, spectrum: BellSpectrum) -> "PauliChannel":
        return cls(spectrum.spec, spectrum.lam)

    @classmethod
    def noiseless(cls, spec: FieldSpec) -> "PauliChannel":
        p = np.zeros((spec.d, spec.d))
        p[0, 0] = 1.0
        return cls(spec, p)

    def spectrum(self) -> BellSpectrum:
        return BellSpectrum(self.spec, self.probs)

    @property
    def analytic_D(self) -> float:
        return disturbance_of_spectrum(self.spectrum()).D


def sample_error_indices(channel: PauliChannel, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Inverse-CDF draws of ``(m, n)`` over the row-major index order."""
    d = channel.spec.d
    cdf = np.cumsum(channel.probs.reshape(-1))
    cdf[-1] = 1.0
    flat = np.searchsorted(cdf, rng.random(size), side="right")
    flat = np.minimum(flat, d * d - 1)
    return flat // d, flat % d


def sample_error_index(channel: PauliChannel, rng: np.random.Generator) -> tuple[int, int]:
    m, n = sample_error_indices(channel, rng, 1)
    return int(m[0]), int(n[0])


@dataclass
class ProtocolRun:
    d: int
    seed: int
    n_pairs: int
    n_check: int
    estimated_D: float
    analytic_D: float
    abort_threshold: float
    aborted: bool
    sifted_key_a: np.ndarray = dc_field(repr=False)
    sifted_key_b: np.ndarray = dc_field(repr=False)

    def summary(self) -> str:
        return "\n".join([
            f"d={self.d}",
            f"seed={self.seed}",
            f"n_pairs={self.n_pairs}",
            f"n_check={self.n_check}",
            f"estimated_D={self.estimated_D!r}",
            f"analytic_D={self.analytic_D!r}",
            f"aborted={str(self.aborted).lower()}",
        ]) + "\n"


def run_entanglement_based(
    channel: PauliChannel,
    n_pairs: int,
    n_check: int | None = None,
    abort_threshold: float | None = None,
    seed: int = 0,
) -> ProtocolRun:
    """Entanglement-based run: check a random subset, estimate D, decide on abort.

    On a check pair with basis bit b, an error shows up iff the shift is
    nonzero (b = 0) or the phase is nonzero (b = 1).  The unchecked pairs are
    measured in the computational basis: A gets a uniform dit, B gets it
    shifted by m.
    """
    spec = channel.spec
    if n_check is None:
        n_check = n_pairs // 2
    if not 0 < n_check <= n_pairs:
        raise ValueError("need 0 < n_check <= n_pairs")
    if abort_threshold is None:
        abort_threshold = threshold_disturbance(spec.d)
    rng = make_rng(seed)
    m, n = sample_error_indices(channel, rng, n_pairs)
    # random permutation, then the first n_check pairs are the check pairs
    order = rng.permutation(n_pairs)
    m, n = m[order], n[order]
    b = rng.integers(0, 2, n_check)
    errors = np.where(b == 0, m[:n_check] != 0, n[:n_check] != 0)
    est = float(errors.mean())
    key_a = rng.integers(0, spec.d, n_pairs - n_check)
    key_b = spec.add_table[key_a, m[n_check:]]
    return ProtocolRun(
        d=spec.d, seed=seed, n_pairs=n_pairs, n_check=n_check, estimated_D=est,
        analytic_D=channel.analytic_D, abort_threshold=abort_threshold,
        aborted=est >= abort_threshold, sifted_key_a=key_a, sifted_key_b=np.asarray(key_b),
    )


@lru_cache(maxsize=None)
def outcome_table(d: int) -> np.ndarray:
    """Born probabilities for one prepare-and-measure round.

    ``table[a_basis, k, m, n, b_basis, out]`` is the probability that Bob sees
    ``out`` when Alice sends basis state k of basis ``a_basis``, the channel
    applies ``E_mn`` and Bob measures in ``b_basis``.  Basis 1 states are the
    columns of H.
    """
    spec = field(d)
    h = fourier(spec)
    bases = [np.eye(d, dtype=complex), h]
    ops = all_paulis(spec)
    table = np.empty((2, d, d, d, 2, d))
    for a in range(2):
        for k in range(d):
            psi = bases[a][:, k]
            for m in range(d):
                for n in range(d):
                    out = ops[m, n] @ psi
                    for bb in range(2):
                        table[a, k, m, n, bb] = np.abs(bases[bb].conj().T @ out) ** 2
    return table


@dataclass
class PrepareMeasureRun:
    d: int
    seed: int
    n_sent: int
    basis_a: np.ndarray = dc_field(repr=False)
    basis_b: np.ndarray = dc_field(repr=False)
    n_sifted: int = 0
    sift_fraction: float = 0.0
    estimated_D: float = 0.0
    analytic_D: float = 0.0
    sifted_key_a: np.ndarray = dc_field(default=None, repr=False)
    sifted_key_b: np.ndarray = dc_field(default=None, repr=False)

    def summary(self) -> str:
        return "\n".join([
            f"d={self.d}",
            f"seed={self.seed}",
            f"n_pairs={self.n_sent}",
            f"n_check={self.n_sifted}",
            f"estimated_D={self.estimated_D!r}",
            f"analytic_D={self.analytic_D!r}",
            f"aborted={str(self.estimated_D >= threshold_disturbance(self.d)).lower()}",
            f"sift_fraction={self.sift_fraction!r}",
        ]) + "\n"


def run_prepare_measure(channel: PauliChannel, n_sent: int, seed: int = 0) -> PrepareMeasureRun:
    """Prepare-and-measure run with state-vector outcome sampling and sifting.

    The error rate is measured on all sifted dits.
    """
    if n_sent < 1:
        raise ValueError("n_sent must be >= 1")
    d = channel.spec.d
    rng = make_rng(seed)
    basis_a = rng.integers(0, 2, n_sent)
    dits = rng.integers(0, d, n_sent)
    m, n = sample_error_indices(channel, rng, n_sent)
    basis_b = rng.integers(0, 2, n_sent)
    probs = outcome_table(d)[basis_a, dits, m, n, basis_b]
    cdf = np.cumsum(probs, axis=1)
    outcome = (rng.random(n_sent)[:, None] > cdf).sum(axis=1)
    outcome = np.minimum(outcome, d - 1)
    keep = basis_a == basis_b
    n_sifted = int(keep.sum())
    ka, kb = dits[keep], outcome[keep]
    est = float((ka != kb).mean()) if n_sifted else 0.0
    return PrepareMeasureRun(
        d=d, seed=seed, n_sent=n_sent, basis_a=basis_a, basis_b=basis_b, n_sifted=n_sifted,
        sift_fraction=n_sifted / n_sent, estimated_D=est, analytic_D=channel.analytic_D,
        sifted_key_a=ka, sifted_key_b=kb,
    )
