"""Face-value assembly from candidate interpolations and nonlinear weights.

The flux-based finite-difference formulation is used throughout: point
fluxes are reconstructed to half-nodes and differenced by the solvers.
Negative wind is handled by reversing the window in place, so the minus
reconstruction is the exact mirror of the plus one.
"""

from __future__ import annotations

import numpy as np

from wenokit.weights import SchemeParams, weights_for


def candidates(w):
    """Second-order candidate interpolations at x_{j+1/2}.

    q0 uses cells {j-1, j}, q1 uses {j, j+1}.
    """
    w = np.asarray(w, dtype=float)
    q0 = 0.5 * (-w[..., 1] + 3.0 * w[..., 2])
    q1 = 0.5 * (w[..., 2] + w[..., 3])
    return q0, q1


def taylor_matching_oracle():
    """Solve for the linear weights that lift the candidates to the
    third-order upstream face interpolation (-v_{-1} + 5 v_0 + 2 v_{+1})/6.

    Set up on quadratic monomial data with the convexity constraint
    d0 + d1 = 1; returns (1/3, 2/3).
    """
    # Window values of f(x) = x^2 at offsets -2..2.
    quad = np.array([4.0, 1.0, 0.0, 1.0, 4.0])
    q0, q1 = candidates(quad)
    target = (-quad[1] + 5.0 * quad[2] + 2.0 * quad[3]) / 6.0
    a = np.array([[q0, q1], [1.0, 1.0]])
    b = np.array([target, 1.0])
    d0, d1 = np.linalg.solve(a, b)
    return float(d0), float(d1)


def reconstruct_plus(w, params: SchemeParams):
    """Reconstructed face value at x_{j+1/2} for wind blowing in +x.

    The window holds the five values centered on cell j; vectorized over
    leading axes.
    """
    w0, w1 = weights_for(w, params)
    q0, q1 = candidates(w)
    return w0 * q0 + w1 * q1


def reconstruct_minus(w, params: SchemeParams):
    """Face value at x_{j-1/2} for wind blowing in -x.

    The window holds the five values centered on cell j; defined as the
    plus reconstruction of the reversed window, so mirror symmetry is
    exact.
    """
    w = np.asarray(w, dtype=float)
    return reconstruct_plus(w[..., ::-1], params)


# Classical fifth-order linear weights and division guard, used only for
# generating reference ("EXACT") curves.
_D5 = (0.1, 0.6, 0.3)
_EPS5 = 1e-6


def weno5_reference(w):
    """Classical fifth-order WENO-JS face value on the full window.

    Three 3-point candidates with linear weights (1/10, 6/10, 3/10);
    used to generate fine-grid reference solutions.
    """
    w = np.asarray(w, dtype=float)
    v0, v1, v2, v3, v4 = (w[..., i] for i in range(5))
    b0 = (13.0 / 12.0) * (v0 - 2.0 * v1 + v2) ** 2 \
        + 0.25 * (v0 - 4.0 * v1 + 3.0 * v2) ** 2
    b1 = (13.0 / 12.0) * (v1 - 2.0 * v2 + v3) ** 2 + 0.25 * (v1 - v3) ** 2
    b2 = (13.0 / 12.0) * (v2 - 2.0 * v3 + v4) ** 2 \
        + 0.25 * (3.0 * v2 - 4.0 * v3 + v4) ** 2
    a0 = _D5[0] / (_EPS5 + b0) ** 2
    a1 = _D5[1] / (_EPS5 + b1) ** 2
    a2 = _D5[2] / (_EPS5 + b2) ** 2
    total = a0 + a1 + a2
    q0 = (2.0 * v0 - 7.0 * v1 + 11.0 * v2) / 6.0
    q1 = (-v1 + 5.0 * v2 + 2.0 * v3) / 6.0
    q2 = (2.0 * v2 + 5.0 * v3 - v4) / 6.0
    return (a0 * q0 + a1 * q1 + a2 * q2) / total


def weno5_reference_minus(w):
    """Mirror of weno5_reference for negative wind."""
    w = np.asarray(w, dtype=float)
    return weno5_reference(w[..., ::-1])
