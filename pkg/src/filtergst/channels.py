"""Channel representations of the parametrized noisy gates.

Basis convention, fixed once for the whole package: the orthonormal Pauli
basis E_a = sigma_a / sqrt(2) in the index order (I, X, Y, Z).  A channel's
process matrix chi acts as E(rho) = sum_ab chi_ab E_a rho E_b^dag; the
identity channel is chi = diag(2, 0, 0, 0) and a trace-preserving chi
satisfies sum_ab chi_ab E_b^dag E_a = identity.

The noisy gate family is assembled from two 2x2 blocks: chi_A carries the
rotation plus coherence decay, chi_B the dressed-state mixing.  The four
drive phases (0, pi/2, pi, 3pi/2) place the same two blocks at different
positions of the 4x4 chi; all placements are validated against the ideal
unitaries in the zero-noise limit.

Distance metrics: the closed-form gate distance below reproduces, for
physical decay parameters, the trace distance between the channels'
normalized Choi states (chi/2 here); the Choi-state route is therefore used
whenever a channel outside the two-parameter family is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import InvalidParameterError, NonphysicalParameterError
from .filters import FilteredParams, PulseSpec, theta_factors

__all__ = [
    "PAULIS",
    "PAULI_BASIS",
    "GATE_PHASES",
    "chi_blocks",
    "process_matrix",
    "chi_to_ptm",
    "ptm_to_chi",
    "ptm_apply",
    "ideal_ptm",
    "CPTPReport",
    "cptp_check",
    "gate_trace_distance",
    "fiducial_trace_distances",
    "choi_trace_distance",
    "general_channel_distance",
    "chi_to_dict",
    "chi_from_dict",
]

_SI = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)

PAULIS = np.stack([_SI, _SX, _SY, _SZ])
PAULI_BASIS = PAULIS / np.sqrt(2.0)

GATE_PHASES = (0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi)

# Tr{E_a E_g E_b E_d}: chi -> PTM is PTM[a,b] = sum_gd chi[g,d] _PTM_TENSOR[a,b,g,d]
_PTM_TENSOR = np.einsum("aij,gjk,bkl,dli->abgd",
                        PAULI_BASIS, PAULI_BASIS, PAULI_BASIS, PAULI_BASIS)
_PTM_MATRIX = _PTM_TENSOR.reshape(16, 16)
_PTM_MATRIX_INV = np.linalg.inv(_PTM_MATRIX)


def chi_blocks(fp: FilteredParams, pulse: PulseSpec) -> Tuple[np.ndarray, np.ndarray]:
    """The 2x2 chi blocks for one pulse, from its filtered parameters.

    Requires gamma1 >= 0 and delta_gamma1 >= 0 (a negative decay exponent is
    not a channel).  The zero-noise limit returns
    chi_A = 2(1 + cos(area) sz - sin(area) sy), chi_B = 0.
    """
    if fp.gamma1 < 0 or fp.delta_gamma1 < 0:
        raise NonphysicalParameterError(
            f"decay exponents must be nonnegative, got gamma1={fp.gamma1}, "
            f"delta_gamma1={fp.delta_gamma1}"
        )
    a, b = _chi_blocks_arrays(
        np.asarray(fp.gamma1), np.asarray(fp.delta1), np.asarray(fp.gamma2),
        np.asarray(fp.delta2), np.asarray(fp.delta_gamma1), pulse.area,
    )
    return a, b


def _chi_blocks_arrays(gamma1, delta1, gamma2, delta2, delta_gamma1, area):
    """Batched chi-block assembly; leading dims of the parameter arrays broadcast."""
    cos_t, sin_t = np.cos(area), np.sin(area)
    c_half, s_over = theta_factors(delta1, delta2, gamma2)
    e_full = np.exp(-np.asarray(gamma1, dtype=float))
    e_coh = np.exp(-0.5 * (np.asarray(gamma1, dtype=float) + np.asarray(delta_gamma1, dtype=float)))

    az = 2.0 * e_coh * (cos_t * c_half - delta1 * s_over * sin_t)
    ay = -2.0 * e_coh * (sin_t * c_half + delta1 * s_over * cos_t)
    bz = -2.0 * e_coh * s_over * (gamma2 * cos_t + delta2 * sin_t)
    bx = -2.0 * e_coh * s_over * (gamma2 * sin_t - delta2 * cos_t)

    shape = np.broadcast_shapes(np.shape(az), np.shape(ay))
    chi_a = np.zeros(shape + (2, 2), dtype=complex)
    chi_b = np.zeros(shape + (2, 2), dtype=complex)
    one = np.broadcast_to(1.0 + e_full, shape)
    chi_a += one[..., None, None] * _SI
    chi_a += np.broadcast_to(az, shape)[..., None, None] * _SZ
    chi_a += np.broadcast_to(ay, shape)[..., None, None] * _SY
    chi_b += np.broadcast_to(1.0 - e_full, shape)[..., None, None] * _SI
    chi_b += np.broadcast_to(bz, shape)[..., None, None] * _SZ
    chi_b += np.broadcast_to(bx, shape)[..., None, None] * _SX
    return chi_a, chi_b


# Placement of the (chi_A, chi_B) block entries inside the 4x4 chi for each
# drive phase: phase -> (A rows/cols, B rows/cols, A off-diag sign, B off-diag sign)
_LAYOUTS = {
    0.0: ((0, 1), (2, 3), +1.0, +1.0),
    0.5 * np.pi: ((0, 2), (1, 3), -1.0, +1.0),
    np.pi: ((0, 1), (2, 3), -1.0, -1.0),
    1.5 * np.pi: ((0, 2), (1, 3), +1.0, -1.0),
}


def _phase_key(phase: float) -> float:
    ph = float(phase) % (2.0 * np.pi)
    for key in _LAYOUTS:
        if abs(ph - key) < 1e-9:
            return key
    raise InvalidParameterError(f"phase must be one of 0, pi/2, pi, 3pi/2; got {phase}")


def process_matrix(phase: float, blocks: Tuple[np.ndarray, np.ndarray]) -> np.ndarray:
    """Assemble the 4x4 chi for the given drive phase from the two blocks.

    Diagonal block entries are phase independent; the off-diagonal entries
    pick up the phase-dependent placement and sign.  Batched over any
    leading dims of the blocks.
    """
    chi_a, chi_b = blocks
    key = _phase_key(phase)
    (ia, ja), (ib, jb), sa, sb = _LAYOUTS[key]
    out = np.zeros(chi_a.shape[:-2] + (4, 4), dtype=complex)
    out[..., ia, ia] = chi_a[..., 0, 0]
    out[..., ja, ja] = chi_a[..., 1, 1]
    out[..., ia, ja] = sa * chi_a[..., 0, 1]
    out[..., ja, ia] = sa * chi_a[..., 1, 0]
    out[..., ib, ib] = chi_b[..., 0, 0]
    out[..., jb, jb] = chi_b[..., 1, 1]
    out[..., ib, jb] = sb * chi_b[..., 0, 1]
    out[..., jb, ib] = sb * chi_b[..., 1, 0]
    return 0.5 * out


def chi_to_ptm(chi: np.ndarray) -> np.ndarray:
    """Pauli transfer matrix G_ab = Tr{E_a E(E_b)} of a chi matrix (batched)."""
    ptm = np.einsum("...gd,abgd->...ab", chi, _PTM_TENSOR)
    return np.real(ptm)


def ptm_to_chi(ptm: np.ndarray) -> np.ndarray:
    """Inverse of :func:`chi_to_ptm` (batched)."""
    flat = np.asarray(ptm, dtype=complex).reshape(*ptm.shape[:-2], 16)
    chi = np.einsum("...b,ba->...a", flat, _PTM_MATRIX_INV.T)
    return chi.reshape(*ptm.shape[:-2], 4, 4)


def ptm_apply(ptm: np.ndarray, state: np.ndarray) -> np.ndarray:
    """Apply a PTM to a vectorized state (components Tr{E_a rho})."""
    return np.einsum("...ab,...b->...a", ptm, state)


def ideal_ptm(theta_angle: float, phase: float) -> np.ndarray:
    """PTM of the ideal unitary exp(-i theta/2 (cos(phase) sx - sin(phase) sy))."""
    h = 0.5 * theta_angle * (np.cos(phase) * _SX - np.sin(phase) * _SY)
    evals, evecs = np.linalg.eigh(h)
    u = (evecs * np.exp(-1j * evals)) @ evecs.conj().T
    out = np.empty((4, 4))
    for b in range(4):
        rho = u @ PAULI_BASIS[b] @ u.conj().T
        for a in range(4):
            out[a, b] = np.real(np.trace(PAULI_BASIS[a] @ rho))
    return out


@dataclass(frozen=True)
class CPTPReport:
    """Physicality diagnostics of a chi matrix."""

    tp_violation: float
    min_eigenvalue: float

    def passes(self, tol: float = 1e-10) -> bool:
        return self.tp_violation <= tol and self.min_eigenvalue >= -tol


def cptp_check(chi: np.ndarray, tol: float = 1e-10) -> CPTPReport:
    """Frobenius norm of the trace-constraint residual and smallest eigenvalue."""
    acc = np.einsum("ab,bij,ajk->ik", chi, PAULI_BASIS.conj(), PAULI_BASIS)
    tp_violation = float(np.linalg.norm(acc - np.eye(2)))
    herm = 0.5 * (chi + chi.conj().swapaxes(-1, -2))
    min_eig = float(np.min(np.linalg.eigvalsh(herm)))
    return CPTPReport(tp_violation=tp_violation, min_eigenvalue=min_eig)


def gate_trace_distance(fp_a: FilteredParams, fp_b: FilteredParams) -> float:
    """Closed-form distance between two gates of the two-parameter family.

    Depends only on (gamma1, delta1) of each side; for channels with
    nonzero gamma2, delta2 or delta_gamma1 use :func:`choi_trace_distance`.
    """
    ea, eb = np.exp(-fp_a.gamma1), np.exp(-fp_b.gamma1)
    cross = 2.0 * np.exp(-0.5 * (fp_a.gamma1 + fp_b.gamma1)) * np.cos(0.5 * (fp_a.delta1 - fp_b.delta1))
    rad = max(ea + eb - cross, 0.0)
    return 0.25 * abs(ea - eb) + 0.5 * np.sqrt(rad)


def fiducial_trace_distances(r_a, r_b, e_a, e_b) -> Tuple[float, float]:
    """Distances between fiducial states and POVM effects.

    T_rho = sqrt(sum (r_a - r_b)^2) over the three Bloch components;
    T_M uses only the three Pauli components of the effect vector (the
    identity component drops from this metric by construction).
    """
    r_a, r_b = np.asarray(r_a, dtype=float), np.asarray(r_b, dtype=float)
    e_a, e_b = np.asarray(e_a, dtype=float), np.asarray(e_b, dtype=float)
    t_rho = float(np.linalg.norm(r_a - r_b))
    t_m = float(np.linalg.norm(e_a[1:4] - e_b[1:4]))
    return t_rho, t_m


def choi_trace_distance(chi_a: np.ndarray, chi_b: np.ndarray) -> float:
    """Trace distance between the normalized Choi states of two channels.

    The chi matrix in the orthonormal Pauli basis is unitarily equivalent to
    twice the Choi state, so this is |eigs(chi_a - chi_b)|_1 / 4.
    """
    diff = chi_a - chi_b
    diff = 0.5 * (diff + diff.conj().swapaxes(-1, -2))
    return float(0.25 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def general_channel_distance(ptm_a: np.ndarray, ptm_b: np.ndarray) -> float:
    """Choi-state trace distance between two channels given as PTMs."""
    return choi_trace_distance(ptm_to_chi(ptm_a), ptm_to_chi(ptm_b))


def chi_to_dict(chi: np.ndarray) -> dict:
    """Channel dump: basis tag, representation tag, row-major (re, im) pairs."""
    chi = np.asarray(chi, dtype=complex)
    entries = [[float(z.real), float(z.imag)] for z in chi.reshape(-1)]
    return {"basis": "pauli-normalized-ixyz", "representation": "chi", "entries": entries}


def ptm_to_dict(ptm: np.ndarray) -> dict:
    ptm = np.asarray(ptm, dtype=float)
    return {
        "basis": "pauli-normalized-ixyz",
        "representation": "ptm",
        "entries": [float(x) for x in ptm.reshape(-1)],
    }


def chi_from_dict(doc: dict) -> np.ndarray:
    rep = doc.get("representation")
    if rep == "chi":
        flat = np.array([complex(re, im) for re, im in doc["entries"]])
        return flat.reshape(4, 4)
    if rep == "ptm":
        return np.asarray(doc["entries"], dtype=float).reshape(4, 4)
    raise InvalidParameterError(f"unknown channel representation {rep!r}")
