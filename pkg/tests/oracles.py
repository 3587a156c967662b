"""Independent mpmath reference implementations.

Every frozen literal in the unit tests was produced by the functions in
this module at 40 decimal digits (quadrature literals at 25).  The
functions deliberately share no code with the package: special functions
come from mpmath and each formula is assembled from scratch, so
agreement is evidence rather than tautology.
"""

from __future__ import annotations

import mpmath as mp


def k_imag(nu, x, dps: int = 40):
    """Macdonald function of imaginary order, Re K_{i nu}(x)."""
    with mp.workdps(dps):
        return mp.re(mp.besselk(mp.mpc(0, nu), x))


def conical(q, x, dps: int = 40):
    """Conical (Mehler) function of order -1/2, P^{-1/2}_{-1/2 + iq}(x), x > 1."""
    with mp.workdps(dps):
        return mp.re(mp.legenp(mp.mpc(-0.5, q), mp.mpf("-0.5"), x, type=3))


def lam(q, dxi, dxbar, dps: int = 40):
    """Overlap factor via the geodesic-parameter closed form."""
    with mp.workdps(dps):
        q = mp.mpf(q)
        dxi = mp.mpf(dxi)
        dxbar = mp.mpf(dxbar)
        d = 2 * mp.sinh(dxi / 2) ** 2 + (dxbar**2 / 2) / mp.cosh(dxi)
        alpha = mp.log1p(d + mp.sqrt(d * (d + 2)))
        pref = mp.sqrt(1 / mp.cosh(dxi))
        if alpha == 0:
            core = mp.mpf(1)
        elif q == 0:
            core = alpha / mp.sinh(alpha)
        else:
            core = mp.sin(q * alpha) / (q * mp.sinh(alpha))
        return pref * core


def lam_kbar_quadrature(q, dxi, dxbar, dps: int = 25):
    """Overlap factor via the independent k-bar integral representation."""
    with mp.workdps(dps):
        q = mp.mpf(q)
        dxi = mp.mpf(dxi)
        dxbar = mp.mpf(dxbar)
        sp = mp.sqrt((mp.e ** (2 * dxi) + 1) / 2)
        sm = mp.sqrt((mp.e ** (-2 * dxi) + 1) / 2)

        def integrand(k):
            return (
                k
                * mp.besselj(0, k * dxbar)
                * mp.re(mp.besselk(mp.mpc(0, q), k * sp))
                * mp.re(mp.besselk(mp.mpc(0, q), k * sm))
            )

        integral = mp.quad(integrand, [0, 1, 3, 8, 20, 50])
        if q == 0:
            pref = 2 * mp.sqrt(mp.cosh(dxi))
        else:
            pref = 2 * mp.sinh(mp.pi * q) / (mp.pi * q) * mp.sqrt(mp.cosh(dxi))
        return pref * integral


def diag(omega, z, T, dps: int = 40):
    """Same-branch excited coefficient (T/2 pi) * omega / (e^{2 pi omega z} - 1)."""
    with mp.workdps(dps):
        return (mp.mpf(T) / (2 * mp.pi)) * mp.mpf(omega) / mp.expm1(
            2 * mp.pi * mp.mpf(omega) * mp.mpf(z)
        )
