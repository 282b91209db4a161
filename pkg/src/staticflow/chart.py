"""Coordinate curvature on a sampled chart.

This is deliberately generic: it knows nothing about warped products or the
radial formulas in :mod:`staticflow.geometry`, and serves as the independent
check for them. Metric components are sampled on a tensor grid with one
axis per coordinate. Derivatives are fourth order (five-point stencils,
one-sided near the edges) so that nested differencing for the Riemann
tensor stays at least third order up to the boundary, and the chart result
is always more accurate than the second-order radial operators it checks.
"""

import numpy as np

_CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0


def diff4(arr, h, axis):
    """Fourth-order first derivative of ``arr`` along ``axis`` (needs >= 5 samples)."""
    f = np.moveaxis(arr, axis, 0)
    if f.shape[0] < 5:
        raise ValueError("fourth-order differencing needs at least 5 samples per axis")
    out = np.empty_like(f)
    out[2:-2] = sum(c * f[i : f.shape[0] - 4 + i] for i, c in enumerate(_CENTRAL))
    out[0] = sum(c * f[i] for i, c in enumerate(_EDGE0))
    out[1] = sum(c * f[i] for i, c in enumerate(_EDGE1))
    out[-1] = -sum(c * f[-1 - i] for i, c in enumerate(_EDGE0))
    out[-2] = -sum(c * f[-1 - i] for i, c in enumerate(_EDGE1))
    return np.moveaxis(out / h, 0, axis)


def _grad(arr, spacings, lead):
    """Stack of partial derivatives along each chart axis; new axis in front."""
    return np.stack([diff4(arr, h, lead + a) for a, h in enumerate(spacings)])


def christoffel(g, spacings):
    """``Gamma[a, b, c] = Gamma^a_{bc}`` for metric samples ``g[i, j, *grid]``."""
    ginv = np.moveaxis(np.linalg.inv(np.moveaxis(g, (0, 1), (-2, -1))), (-2, -1), (0, 1))
    dg = _grad(g, spacings, 2)  # dg[c, i, j] = d_c g_ij
    lowered = 0.5 * (np.einsum("bdc...->dbc...", dg) + np.einsum("cdb...->dbc...", dg)
                     - np.einsum("dbc...->dbc...", dg))
    return np.einsum("ad...,dbc...->abc...", ginv, lowered)


def ricci(g, spacings, gamma=None):
    """``Ric[b, d]`` from ``R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + ...``."""
    if gamma is None:
        gamma = christoffel(g, spacings)
    dgamma = _grad(gamma, spacings, 3)  # dgamma[c, a, d, b] = d_c Gamma^a_db
    term1 = np.einsum("aadb...->db...", dgamma)  # d_a Gamma^a_db
    term2 = np.einsum("daab...->db...", dgamma)
    quad1 = np.einsum("aae...,edb...->db...", gamma, gamma)
    quad2 = np.einsum("ade...,eab...->db...", gamma, gamma)
    ric = term1 - term2 + quad1 - quad2
    return 0.5 * (ric + np.swapaxes(ric, 0, 1))


def hessian(f, spacings, gamma):
    """``Hess f[a, b] = d_a d_b f - Gamma^c_ab d_c f`` for samples ``f[*grid]``."""
    df = _grad(f, spacings, 0)
    ddf = _grad(df, spacings, 1)
    return ddf - np.einsum("cab...,c...->ab...", gamma, df)


def warped_lift_ricci(n, k, h, V, A, B, n_theta=5):
    """Ricci tensor of ``V^2 dtheta^2 + A dr^2 + B sigma_k`` along the radial grid.

    The two-dimensional base ``V^2 dtheta^2 + A dr^2`` is sampled on a
    ``(theta, r)`` chart and its curvature taken by :func:`ricci`; the
    ``(n-1)``-dimensional fibre ``B sigma_k`` enters through the standard
    warped-product formulas with warping function ``phi = sqrt(B)``.

    Returns the ``dtheta^2``, ``dr^2`` and ``sigma_k`` components.
    """
    nr = V.size
    fib = n - 1
    shape = (n_theta, nr)
    g = np.zeros((2, 2) + shape)
    g[0, 0] = np.broadcast_to(V ** 2, shape)
    g[1, 1] = np.broadcast_to(A, shape)
    spacings = (1.0, h)
    gamma = christoffel(g, spacings)
    ric_base = ricci(g, spacings, gamma)
    phi = np.broadcast_to(np.sqrt(B), shape)
    hess = hessian(phi, spacings, gamma)
    ginv = np.zeros_like(g)
    ginv[0, 0] = 1.0 / g[0, 0]
    ginv[1, 1] = 1.0 / g[1, 1]
    lap = np.einsum("ab...,ab...->...", ginv, hess)
    dphi = _grad(phi, spacings, 0)
    grad_sq = np.einsum("ab...,a...,b...->...", ginv, dphi, dphi)
    base = ric_base - (fib / phi) * hess
    sph = (fib - 1) * k - phi * lap - (fib - 1) * grad_sq
    mid = n_theta // 2
    return base[0, 0, mid], base[1, 1, mid], sph[mid]
