r"""Special functions for the acceleration-overlap kernel.

The field response of a uniformly accelerated pointlike system involves
the Bessel function :math:`J_0`, the modified Bessel function of purely
imaginary order :math:`K_{i\nu}(x)`, and the geometric overlap factor

.. math::
    \Lambda(q, \Delta\xi, \Delta\bar{x})
        = \sqrt{\operatorname{sech}\Delta\xi}\;
          \frac{\sin(q\alpha)}{q\,\sinh\alpha},
    \qquad
    \alpha = \operatorname{arccosh} u,
    \quad
    u = \cosh\Delta\xi + \tfrac{\Delta\bar{x}^2}{2}\operatorname{sech}\Delta\xi,

which multiplies each thermal coherence between two accelerated
branches.  :math:`\Lambda` is bounded by one, equals one at
:math:`\Delta\xi = \Delta\bar{x} = 0`, and reduces to simple closed
forms on the two axes.  The same combination can be written through a
conical (Mehler-type) function of degree :math:`-\tfrac12 + iq`, exposed
here as :func:`conical_p`.

``scipy`` provides :math:`J_0` but not :math:`K_{i\nu}`; the latter is
evaluated from its integral representation

.. math::
    K_{i\nu}(x) = \int_0^\infty e^{-x\cosh t}\cos(\nu t)\,dt

by composite Gauss--Legendre quadrature with panel widths chosen to
resolve both the oscillation scale :math:`1/\nu` and the decay of the
exponential envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import j0 as _scipy_j0

__all__ = [
    "LambdaGrid",
    "bessel_j0",
    "bessel_k_imag",
    "conical_p",
    "lambda_overlap",
    "lambda_axis_xi",
    "lambda_axis_xbar",
    "gaussian_ft",
    "planck_weight",
]

# 16-point Gauss--Legendre rule on [-1, 1]; panels are mapped affinely.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)

#: Exponential decay (in units of the t = 0 envelope) at which the
#: integral representation of ``K_imag`` is truncated: the discarded
#: tail is below exp(-43) ~ 2e-19 of the leading scale.
_KTAIL_DECAY = 43.0

#: Widest quadrature panel (radians of hyperbolic angle) used for the
#: ``K_imag`` envelope; narrower panels are forced when the oscillation
#: scale pi/(4(nu+1)) is smaller.
_KPANEL_MAX = 0.12

#: Largest x-batch evaluated against one shared t-grid.
_KCHUNK = 2048


def _as_float_array(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


def _scalar_or_array(out: np.ndarray, *inputs) -> np.ndarray | float:
    if all(np.ndim(v) == 0 for v in inputs):
        return float(out)
    return out


def bessel_j0(x):
    r"""Bessel function :math:`J_0(x)`, vectorized."""
    x = np.asarray(x, dtype=float)
    return _scalar_or_array(_scipy_j0(x), x)


def _k_imag_panels(nu_max: float, t_max: float, refine: float) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss--Legendre nodes and weights on [0, t_max]."""
    width = min(_KPANEL_MAX, math.pi / (4.0 * (nu_max + 1.0))) / refine
    n_panels = max(1, int(math.ceil(t_max / width)))
    edges = np.linspace(0.0, t_max, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return t, w


def _k_imag_outer(nu: np.ndarray, x: np.ndarray, refine: float = 1.0) -> np.ndarray:
    """``K_imag`` on the grid ``nu[:, None] x [None, :]``; ``x`` sorted ascending.

    For large :math:`\\nu` the oscillatory integrand cancels down to a result
    of order :math:`e^{-\\pi\\nu/2}`, so the reduction over t must not lose
    absolute accuracy: with few orders the sum is taken with numpy's pairwise
    reduction (error growth ~ log of the node count) instead of a BLAS matmul
    whose blocked accumulation order is not guaranteed.
    """
    out = np.empty((nu.size, x.size))
    nu_max = float(nu.max()) if nu.size else 0.0
    for start in range(0, x.size, _KCHUNK):
        chunk = x[start : start + _KCHUNK]
        # The envelope exp(-x cosh t) is below exp(-x_min - _KTAIL_DECAY)
        # beyond t_max, uniformly over the chunk.
        t_max = math.acosh(1.0 + _KTAIL_DECAY / float(chunk[0]))
        t, w = _k_imag_panels(nu_max, t_max, refine)
        with np.errstate(over="ignore", under="ignore"):
            env = np.exp(-np.outer(np.cosh(t), chunk))
        if nu.size <= 4:
            for i in range(nu.size):
                coeff = w * np.cos(nu[i] * t)
                out[i, start : start + _KCHUNK] = np.sum(coeff[:, None] * env, axis=0)
        else:
            cos_mat = np.cos(np.outer(nu, t)) * w[None, :]
            out[:, start : start + _KCHUNK] = cos_mat @ env
    return out


def bessel_k_imag(nu, x):
    r"""Modified Bessel function of imaginary order, :math:`K_{i\nu}(x)`.

    Real-valued and even in :math:`\nu`; computed from
    :math:`\int_0^\infty e^{-x\cosh t}\cos(\nu t)\,dt` by composite
    Gauss--Legendre quadrature (absolute accuracy near 1e-10 or better
    over the supported range).

    Parameters
    ----------
    nu : array_like
        Order parameter; may be any real value (only :math:`|\nu|` matters).
    x : array_like
        Argument, strictly positive.

    Raises
    ------
    ValueError
        If any entry of ``x`` is not strictly positive.
    """
    nu_arr = np.abs(_as_float_array(nu, "nu"))
    x_arr = _as_float_array(x, "x")
    if not np.all(x_arr > 0.0):
        raise ValueError("bessel_k_imag requires x > 0")
    nu_b, x_b = np.broadcast_arrays(nu_arr, x_arr)
    shape = nu_b.shape
    nu_flat = nu_b.ravel()
    x_flat = x_b.ravel()
    out = np.empty(x_flat.size)
    # Group by order so each group shares one t-grid and one matmul.
    uniq, inverse = np.unique(nu_flat, return_inverse=True)
    for k, nu_val in enumerate(uniq):
        sel = np.nonzero(inverse == k)[0]
        xs = x_flat[sel]
        order = np.argsort(xs)
        vals = _k_imag_outer(np.array([nu_val]), xs[order])[0]
        out[sel[order]] = vals
    return _scalar_or_array(out.reshape(shape), nu, x)


def _alpha_from_geometry(dxi: np.ndarray, dxbar: np.ndarray) -> np.ndarray:
    r"""Hyperbolic separation :math:`\alpha = \operatorname{arccosh} u` without
    cancellation: :math:`u - 1 = 2\sinh^2(\Delta\xi/2) +
    \tfrac{\Delta\bar{x}^2}{2}\operatorname{sech}\Delta\xi` is a sum of
    nonnegative terms."""
    d = 2.0 * np.sinh(0.5 * dxi) ** 2 + 0.5 * dxbar**2 / np.cosh(dxi)
    return np.log1p(d + np.sqrt(d * (d + 2.0)))


def _x_over_sinh(alpha: np.ndarray) -> np.ndarray:
    r""":math:`\alpha/\sinh\alpha`, stable at both ends."""
    alpha = np.asarray(alpha, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        generic = 2.0 * alpha * np.exp(-alpha) / (-np.expm1(-2.0 * alpha))
    return np.where(alpha < 1e-6, 1.0 - alpha**2 / 6.0, generic)


def conical_p(q, u):
    r"""Conical-function combination
    :math:`\sqrt{2/(\pi\sinh\alpha)}\;\alpha\,\operatorname{sinc}(q\alpha/\pi)`
    with :math:`\alpha = \operatorname{arccosh} u`.

    Vanishes like :math:`\sqrt{2\alpha/\pi}` as :math:`u \to 1^+`; the
    ratio ``conical_p(q, u) / (u**2 - 1)**0.25`` tends to
    :math:`\sqrt{2/\pi}` there.

    Parameters
    ----------
    q : array_like
        Nonnegative degree parameter.
    u : array_like
        Argument, ``u >= 1``.
    """
    q_arr = _as_float_array(q, "q")
    u_arr = _as_float_array(u, "u")
    if not np.all(q_arr >= 0.0):
        raise ValueError("conical_p requires q >= 0")
    if not np.all(u_arr >= 1.0):
        raise ValueError("conical_p requires u >= 1")
    d = u_arr - 1.0
    alpha = np.log1p(d + np.sqrt(d * (d + 2.0)))
    with np.errstate(invalid="ignore", divide="ignore"):
        amplitude = alpha * np.sqrt(2.0 / (np.pi * np.sinh(alpha)))
    out = np.where(alpha == 0.0, 0.0, amplitude * np.sinc(q_arr * alpha / np.pi))
    return _scalar_or_array(out, q, u)


def lambda_overlap(q, dxi, dxbar):
    r"""Geometric overlap factor :math:`\Lambda(q, \Delta\xi, \Delta\bar{x})`.

    .. math::
        \Lambda = \sqrt{\operatorname{sech}\Delta\xi}\,
                  \frac{\sin(q\alpha)}{q\,\sinh\alpha},
        \qquad
        \cosh\alpha = \cosh\Delta\xi
            + \frac{\Delta\bar{x}^2}{2}\operatorname{sech}\Delta\xi .

    Satisfies :math:`|\Lambda| \le 1` with equality only at the origin,
    and is even in :math:`\Delta\xi` and in :math:`\Delta\bar{x}`.

    Parameters
    ----------
    q : array_like
        Nonnegative frequency-acceleration product.
    dxi : array_like
        Longitudinal separation :math:`\log(z_m/z_n)`; any real value.
    dxbar : array_like
        Nonnegative scaled transverse separation.
    """
    q_arr = _as_float_array(q, "q")
    dxi_arr = _as_float_array(dxi, "dxi")
    dxbar_arr = _as_float_array(dxbar, "dxbar")
    if not np.all(q_arr >= 0.0):
        raise ValueError("lambda_overlap requires q >= 0")
    if not np.all(dxbar_arr >= 0.0):
        raise ValueError("lambda_overlap requires dxbar >= 0")
    alpha = _alpha_from_geometry(dxi_arr, dxbar_arr)
    out = (
        np.sinc(q_arr * alpha / np.pi)
        * _x_over_sinh(alpha)
        / np.sqrt(np.cosh(dxi_arr))
    )
    return _scalar_or_array(out, q, dxi, dxbar)


def lambda_axis_xi(q, dxi):
    r"""Closed form of :math:`\Lambda` on the axis :math:`\Delta\bar{x} = 0`:

    .. math::
        \Lambda = \frac{\sin(q\,\Delta\xi)}{q\,\sinh\Delta\xi}
                  \frac{1}{\sqrt{\cosh\Delta\xi}} .
    """
    q_arr = _as_float_array(q, "q")
    dxi_arr = _as_float_array(dxi, "dxi")
    if not np.all(q_arr >= 0.0):
        raise ValueError("lambda_axis_xi requires q >= 0")
    mag = np.abs(dxi_arr)
    out = (
        np.sinc(q_arr * mag / np.pi)
        * _x_over_sinh(mag)
        / np.sqrt(np.cosh(dxi_arr))
    )
    return _scalar_or_array(out, q, dxi)


def lambda_axis_xbar(q, dxbar):
    r"""Closed form of :math:`\Lambda` on the axis :math:`\Delta\xi = 0`:

    .. math::
        \Lambda = \frac{\sin(q g)}{q\,\sinh g},
        \qquad g = 2\,\operatorname{arcsinh}(\Delta\bar{x}/2).
    """
    q_arr = _as_float_array(q, "q")
    dxbar_arr = _as_float_array(dxbar, "dxbar")
    if not np.all(q_arr >= 0.0):
        raise ValueError("lambda_axis_xbar requires q >= 0")
    if not np.all(dxbar_arr >= 0.0):
        raise ValueError("lambda_axis_xbar requires dxbar >= 0")
    g = 2.0 * np.arcsinh(0.5 * dxbar_arr)
    out = np.sinc(q_arr * g / np.pi) * _x_over_sinh(g)
    return _scalar_or_array(out, q, dxbar)


def gaussian_ft(omega, T):
    r"""Fourier transform of the normalized Gaussian window: for the window
    :math:`\chi(\tau) = (2\pi)^{-1/4} e^{-\tau^2/(4T^2)}` (which satisfies
    :math:`\int \chi^2\,d\tau = T`),

    .. math::
        \bar\chi(\Omega) = \left(\frac{2}{\pi}\right)^{1/4} T\,
            e^{-\Omega^2 T^2}.

    Parameters
    ----------
    omega : array_like
        Frequency argument.
    T : float
        Window duration, strictly positive.
    """
    omega_arr = _as_float_array(omega, "omega")
    if not (np.ndim(T) == 0 and T > 0.0 and math.isfinite(float(T))):
        raise ValueError(f"gaussian_ft requires scalar T > 0, got {T!r}")
    with np.errstate(under="ignore"):
        out = (2.0 / np.pi) ** 0.25 * float(T) * np.exp(-(omega_arr**2) * float(T) ** 2)
    return _scalar_or_array(out, omega)


def planck_weight(omega, z):
    r"""Planckian response weight
    :math:`\omega / (e^{2\pi\omega z} - 1)` for an accelerated system with
    gap :math:`\omega` at inverse acceleration :math:`z`; the continuous
    limit :math:`1/(2\pi z)` is used at :math:`\omega = 0`.
    """
    omega_arr = _as_float_array(omega, "omega")
    z_arr = _as_float_array(z, "z")
    if not np.all(omega_arr >= 0.0):
        raise ValueError("planck_weight requires omega >= 0")
    if not np.all(z_arr > 0.0):
        raise ValueError("planck_weight requires z > 0")
    with np.errstate(invalid="ignore", divide="ignore", under="ignore", over="ignore"):
        generic = omega_arr / np.expm1(2.0 * np.pi * omega_arr * z_arr)
    out = np.where(omega_arr == 0.0, 1.0 / (2.0 * np.pi * z_arr), generic)
    return _scalar_or_array(out, omega, z)


@dataclass(frozen=True)
class LambdaGrid:
    """Tabulated :math:`\\Lambda` over a separation rectangle at fixed ``q``.

    ``values[i, j]`` holds ``lambda_overlap(q, xi_samples[i], xbar_samples[j])``.
    Construction checks the bound :math:`|\\Lambda| \\le 1` (to 1e-9) and,
    whenever both axes contain 0, the normalization :math:`\\Lambda = 1`
    at the origin (to 1e-9).
    """

    q: float
    xi_samples: np.ndarray
    xbar_samples: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        q = float(self.q)
        if not (q >= 0.0 and math.isfinite(q)):
            raise ValueError(f"LambdaGrid requires q >= 0, got {q}")
        xi = np.atleast_1d(np.asarray(self.xi_samples, dtype=float))
        xbar = np.atleast_1d(np.asarray(self.xbar_samples, dtype=float))
        values = np.asarray(self.values, dtype=float)
        if np.any(xbar < 0.0):
            raise ValueError("xbar_samples must be nonnegative")
        if values.shape != (xi.size, xbar.size):
            raise ValueError(
                f"values shape {values.shape} does not match "
                f"({xi.size}, {xbar.size}) samples"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("grid values must be finite")
        overshoot = float(np.max(np.abs(values))) - 1.0
        if overshoot > 1e-9:
            raise ValueError(f"|lambda| exceeds 1 by {overshoot:.3e}")
        on_xi = np.nonzero(xi == 0.0)[0]
        on_xbar = np.nonzero(xbar == 0.0)[0]
        if on_xi.size and on_xbar.size:
            origin = values[on_xi[0], on_xbar[0]]
            if abs(origin - 1.0) > 1e-9:
                raise ValueError(f"lambda at the origin must be 1, got {origin!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "xi_samples", xi)
        object.__setattr__(self, "xbar_samples", xbar)
        object.__setattr__(self, "values", values)

    @classmethod
    def compute(cls, q: float, xi_samples, xbar_samples) -> "LambdaGrid":
        """Evaluate :func:`lambda_overlap` over the tensor grid."""
        xi = np.atleast_1d(np.asarray(xi_samples, dtype=float))
        xbar = np.atleast_1d(np.asarray(xbar_samples, dtype=float))
        values = lambda_overlap(q, xi[:, None], xbar[None, :])
        return cls(q=q, xi_samples=xi, xbar_samples=xbar, values=np.atleast_2d(values))
