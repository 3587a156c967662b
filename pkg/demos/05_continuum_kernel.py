"""
From discrete branches to a smeared continuum
=============================================

When the superposition of worldlines becomes a smooth amplitude over
positions and the internal spectrum becomes continuous, the joint state
turns into a kernel.  Scalar products between single-excitation states
acquire a delta constraint tying the two frequencies through the height
ratio; the kernel's diagonal is a Planck-weighted spectral density.
This script evaluates the pieces, exhibits the exact scale freedom, and
shows the kernel collapsing back onto a two-branch ratio.
"""

import math

import numpy as np

from superthermal import (
    CouplingFunction,
    DetectorSpec,
    SmearedAmplitude,
    Trajectory,
    TrajectorySet,
    continuum_joint_kernel,
    continuum_offdiag_coefficient,
    continuum_spectrum_slice,
    joint_state,
)

# ---------------------------------------------------------------------------
# 1. The delta-constrained scalar product
#
# <omega', x' | omega, x> = coefficient * delta(omega' - omega z/z').
# The delta stays symbolic: the function returns the weight and the
# constrained partner frequency.

coeff, partner = continuum_offdiag_coefficient(1.0, (0.0, 0.0, 1.0), (0.0, 0.0, 0.5))
print("scalar product of excitations at z = 1 and z' = 0.5 (omega = 1):")
print(f"  weight = {coeff:.10e}   partner frequency = {partner}")

# ---------------------------------------------------------------------------
# 2. A smeared amplitude and its spectrum slice
#
# The amplitude lives on a rectangular grid (normalized including the
# cell volume); the diagonal kernel at fixed height, aggregated over
# the transverse plane, is a Planck-weighted spectrum.

value = 1.0 / math.sqrt(2.0)
amp = SmearedAmplitude(
    x=np.array([-0.5, 0.5]),
    y=np.array([0.0]),
    z=np.array([0.5, 1.0]),
    values=np.full((2, 1, 2), value, dtype=complex),
    spacings=(1.0, 1.0, 0.5),
)
zeta = CouplingFunction(omega=np.array([0.05, 60.0]), values=np.ones(2, dtype=complex))
omegas = np.array([0.5, 1.0, 2.0, 4.0])
spectrum = continuum_spectrum_slice(amp, zeta, 1.0, omegas)
print("\nspectrum slice at z = 1 (thermal tail beyond omega z ~ 1):")
for w, s in zip(omegas, spectrum):
    print(f"  omega = {w:3.1f}:  {s:.6e}")

# ---------------------------------------------------------------------------
# 3. Exact scale freedom
#
# Doubling every length while halving every frequency is the same
# physical system.  Kernel entries pick up only the constant grid
# measure factor 2^5 (three powers from |A|^2, two from the separation
# metric), bit-exactly.

doubled = SmearedAmplitude(
    x=2.0 * amp.x,
    y=2.0 * amp.y,
    z=2.0 * amp.z,
    values=amp.values / math.sqrt(8.0),
    spacings=tuple(2.0 * s for s in amp.spacings),
)
zeta_half = CouplingFunction(omega=0.5 * zeta.omega, values=zeta.values)
base = continuum_joint_kernel(1.0, (-0.5, 0.0, 1.0), (-0.5, 0.0, 0.5), amp, zeta)
scaled = continuum_joint_kernel(1.0, (-1.0, 0.0, 2.0), (-1.0, 0.0, 1.0), doubled, zeta_half)
print("\nscale transformation:")
print(f"  base kernel   = {base.real:.12e}")
print(f"  scaled kernel = {scaled.real:.12e}")
print(f"  ratio = {base.real / scaled.real}")

# ---------------------------------------------------------------------------
# 4. Collapsing back to two discrete branches
#
# Two delta-like cells with narrow Gaussian frequency packets reproduce
# the discrete two-branch coherence ratio as the packet width shrinks.

h = 1e-3
cells = SmearedAmplitude(
    x=np.array([0.0]),
    y=np.array([0.0]),
    z=np.array([0.5, 1.0]),
    values=np.full((1, 1, 2), 1.0 / math.sqrt(2.0 * h * h * 0.5), dtype=complex),
    spacings=(h, h, None),
)
wide = CouplingFunction(omega=np.linspace(0.01, 60.0, 1200), values=np.ones(1200))

weight = 1.0 / math.sqrt(2.0)
two_branch = TrajectorySet(
    (Trajectory(z=0.5, amplitude=weight), Trajectory(z=1.0, amplitude=weight))
)
state = joint_state(DetectorSpec(frequencies=(1.0, 2.0)), two_branch, tol=1e-9)
target = (state.excited_block[1, 2] / state.excited_block[1, 1]).real
print(f"\ndiscrete two-branch coherence ratio: {target:.8f}")

nodes, weights = np.polynomial.legendre.leggauss(16)


def panel_quad(f, lo, hi, n_panels=8):
    edges = np.linspace(lo, hi, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return float(np.dot(w, f(t)))


def phi(v):
    return math.pi**-0.25 * np.exp(-v * v / 2.0)


pm, pn = (0.0, 0.0, 1.0), (0.0, 0.0, 0.5)
for delta in (0.05, 0.025, 0.0125):
    off = panel_quad(
        lambda qs: np.array(
            [
                (
                    continuum_joint_kernel(q, pm, pn, cells, wide)
                    * phi((q - 1.0) / delta)
                    * phi((2.0 * q - 2.0) / delta)
                    / delta
                ).real
                for q in qs
            ]
        ),
        1.0 - 12.0 * delta,
        1.0 + 12.0 * delta,
    )
    diag = panel_quad(
        lambda qs: np.array(
            [
                (
                    continuum_joint_kernel(q, pm, pm, cells, wide)
                    * phi((q - 1.0) / delta) ** 2
                    / delta
                ).real
                for q in qs
            ]
        ),
        1.0 - 12.0 * delta,
        1.0 + 12.0 * delta,
    )
    ratio = off / diag
    print(
        f"  packet width {delta:6.4f}:  ratio = {ratio:.8f}"
        f"   rel error = {abs(ratio / target - 1.0):.2e}"
    )
