"""
Uniformly accelerated worldlines and the right wedge
====================================================

A pointlike system held at constant Rindler height z follows the
hyperbola Z^2 - T^2 = z^2 with proper acceleration a = 1/z: the lower
the height, the harder the pull.  This script walks through the
coordinate maps, the admissibility checks, and the relative quantities
between two worldlines that every later calculation is built from.
"""

import math

from superthermal import (
    MU,
    RegimeReport,
    Trajectory,
    TrajectorySet,
    WedgeError,
    delta_xbar,
    delta_xi,
    minkowski_to_rindler,
    rindler_to_minkowski,
    validate_regime,
)
from superthermal.detector import DetectorSpec

# ---------------------------------------------------------------------------
# 1. The coordinate map and its inverse
#
# (t, z) are comoving time and height; (T, Z) the inertial chart.  Going
# out and back must land on the same point, and every image must satisfy
# the wedge constraint Z > |T|.

print("hyperbolic worldline, z = 0.8 (proper acceleration 1.25):")
z = 0.8
for t in (-1.0, 0.0, 0.5, 1.5):
    T, X, Y, Z = rindler_to_minkowski(t, 0.0, 0.0, z)
    t_back, _, _, z_back = minkowski_to_rindler(T, X, Y, Z)
    print(
        f"  t = {t:+.2f}  ->  (T, Z) = ({T:+.4f}, {Z:.4f})"
        f"   Z^2 - T^2 = {Z * Z - T * T:.12f}   back: t = {t_back:+.4f}"
    )

# Outside the wedge the inverse map has nothing to say and raises.
try:
    minkowski_to_rindler(2.0, 0.0, 0.0, 1.0)
except WedgeError as exc:
    print(f"\nleft of the horizon: {exc}")

# ---------------------------------------------------------------------------
# 2. A branch superposition is a set of worldlines with amplitudes
#
# The container sorts by height and checks normalization, so downstream
# code can rely on a canonical order.

amp = 1.0 / math.sqrt(3.0)
branches = TrajectorySet(
    trajectories=(
        Trajectory(z=1.5, amplitude=amp),
        Trajectory(z=0.5, amplitude=amp),
        Trajectory(z=1.0, x_perp=(0.3, 0.4), amplitude=amp),
    )
)
print("\nbranch superposition (sorted by height):")
for traj in branches:
    print(
        f"  z = {traj.z:<4}  acceleration = {traj.acceleration:<5.3f}"
        f"  x_perp = {traj.x_perp}"
    )

# ---------------------------------------------------------------------------
# 3. Relative quantities between branches
#
# Coherences between branches are controlled by a boost-angle separation
# d_xi = log(z_m/z_n) and a transverse separation d_xbar measured in the
# mean inverse height.

m, n = branches[1], branches[0]
print("\nbetween the z = 1.0 and z = 0.5 branches:")
print(f"  d_xi   = log(z_m/z_n) = {delta_xi(m, n):.6f}")
print(f"  d_xbar = {delta_xbar(m, n):.6f}")

# ---------------------------------------------------------------------------
# 4. Is a configuration in the validity window?
#
# First-order perturbation theory with a long quasi-stationary window
# wants 1/(eps*omega_1) as the interaction time, and the lowest q-value
# omega_1 * z_min above the floor mu ~ 0.0235.

det = DetectorSpec(frequencies=(1.0, 2.0, 3.0))
report: RegimeReport = validate_regime(det, branches, epsilon=0.01)
print(f"\nacceleration floor mu = {MU:.6f}")
print(f"recommended interaction time: {report.t_recommended:.1f}")
print(f"configuration ok: {report.ok}")

# Push the window far beyond the perturbative bound and the report
# flags it (warnings, not errors: the bounds are order-of-magnitude).
late = validate_regime(det, branches, epsilon=0.01, T=1e6)
for violation in late.violations:
    print(f"  flagged: {violation}")
