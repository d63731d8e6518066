"""
:mod: 'BlobCapacity'
~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobCapacity
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Closed-form symplectic capacities of ellipsoids, their symplectic polar duals and Lagrangian products of ellipsoids
    :description: Contains the following classes:

        CapacityResult - a capacity value with its kind and witness

                  Contains the following functions:

        capacityEllipsoid - pi hbar / lambda_max for {Mz.z <= hbar}; every capacity agrees on ellipsoids
        capacityDual - pi hbar lambda_min, the capacity of the symplectic polar dual
        capacityProductBound - c(E) c(E^hbar,sigma) against (pi hbar)^2
        cmaxProduct - 4 hbar sup{lambda : lambda X^hbar in P} for a Lagrangian product X x P
        stateCapacities - capacity of a (mixed) geometric state through frame transport
        hzOrbitAction - action of the shortest periodic orbit on the boundary of an ellipsoid, by integration
"""

try:
    import math, sys, os, datetime, logging
    capacity_logger = logging.getLogger()
    import numpy as np
    from scipy.integrate import solve_ivp
    # Tiered
    # from . import (BlobErrors, BlobSymplectic, BlobEllipsoid, BlobLagrangian)
    # Flat
    import BlobErrors, BlobSymplectic, BlobEllipsoid, BlobLagrangian
except Exception as err:
    capacity_logger.error("{0}:BlobCapacity import error:{1}".format(str(datetime.datetime.now()), str(err)))

CROSS_CHECK_TOL = 1e-8
ROUND_TOL = 1e-8

class CapacityResult():
    """
    CapacityResult
    ~~~~~~~~~~~~~~
    Capacity of a set, in units of action

    Functions
    ~~~~~~~~~
    toDict(self) - report form {"capacity", "kind", "witness"}

    Attributes
    ~~~~~~~~~~
    value (float type); the capacity
    kind (str type); one of "ellipsoid", "product", "dual"
    witness (dict type); supporting data, e.g. the lambda of the product formula
    """

    def __init__(self, value, kind, witness = None):
        self.value = float(value)
        self.kind = kind
        self.witness = witness if witness is not None else {}

    def __repr__(self):
        return "CapacityResult({0}, {1:.12g})".format(self.kind, self.value)

    def toDict(self):
        return {"capacity": self.value, "kind": self.kind, "witness": self.witness}

def capacityEllipsoid(E):
    try:
        spectrum = BlobSymplectic.symplecticEigenvalues(E.Q)
        return CapacityResult(math.pi * E.hbar / spectrum[0], "ellipsoid", {"lambda_max": float(spectrum[0])})
    except Exception as err:
        capacity_logger.error("{0}:capacityEllipsoid():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def capacityDual(E, tol = CROSS_CHECK_TOL):
    """pi hbar lambda_min, checked against capacityEllipsoid of the symplectic polar dual."""
    try:
        spectrum = BlobSymplectic.symplecticEigenvalues(E.Q)
        value = math.pi * E.hbar * spectrum[-1]
        check = capacityEllipsoid(BlobEllipsoid.symplecticPolarDual(E)).value
        if abs(check - value) > tol * value:
            raise BlobErrors.NumericalError("dual capacity {0:.12g} disagrees with the capacity of the dual ellipsoid {1:.12g}".format(value, check), abs(check - value))
        return CapacityResult(value, "dual", {"lambda_min": float(spectrum[-1])})
    except Exception as err:
        capacity_logger.error("{0}:capacityDual():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def capacityProductBound(E, tol = ROUND_TOL):
    try:
        spectrum = BlobSymplectic.symplecticEigenvalues(E.Q)
        product = capacityEllipsoid(E).value * capacityDual(E).value
        bound = (math.pi * E.hbar) ** 2
        return {"product": product,
                "bound": bound,
                "ratio": product / bound,
                "holds": bool(product <= bound * (1.0 + tol)),
                "round": bool(spectrum[0] - spectrum[-1] <= tol * spectrum[0])}
    except Exception as err:
        capacity_logger.error("{0}:capacityProductBound():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def cmaxProduct(X, P):
    """
    X = {Ax.x <= hbar} in x-space, P = {Bp.p <= hbar} in p-space.

    lambda X^hbar has shape A^-1 / lambda^2, so it lies in P iff
    B <= A^-1 / lambda^2, i.e. lambda^2 <= 1 / lambda_max(AB).
    """
    try:
        BlobEllipsoid.requireCentered(X, "product factors")
        BlobEllipsoid.requireCentered(P, "product factors")
        if X.dim != P.dim:
            raise BlobErrors.DimensionError("product factors have dimensions {0} and {1}".format(X.dim, P.dim))
        # both factors at the level of X
        B = P.Q * (X.hbar / P.hbar)
        mu = np.max(np.linalg.eigvals(X.Q @ B).real)
        lam = 1.0 / math.sqrt(mu)
        return CapacityResult(4.0 * X.hbar * lam, "product", {"lambda": lam})
    except Exception as err:
        capacity_logger.error("{0}:cmaxProduct():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def stateCapacities(state, tol = CROSS_CHECK_TOL):
    """
    c_max = c_HZ of X_l x P_l' by transport to the canonical frame, where the
    product becomes X x P with X in l_X and P in l_P. A pure state gives 4 hbar;
    c_min_lin is the capacity of the John ellipsoid.
    """
    try:
        hbar = state.hbar
        A, B = state.transportedPair()
        result = cmaxProduct(BlobEllipsoid.Ellipsoid(A, None, hbar), BlobEllipsoid.Ellipsoid(B, None, hbar))
        john, admissible = BlobLagrangian.johnOfState(state)
        result.witness["c_min_lin"] = capacityEllipsoid(john).value
        result.witness["john_admissible"] = bool(admissible)
        result.witness["ratio_to_4hbar"] = result.value / (4.0 * hbar)
        if not isinstance(state, BlobLagrangian.MixedGeometricState) and abs(result.value - 4.0 * hbar) > tol * 4.0 * hbar:
            raise BlobErrors.NumericalError("pure state capacity {0:.12g} differs from 4 hbar".format(result.value), abs(result.value - 4.0 * hbar))
        return result
    except Exception as err:
        capacity_logger.error("{0}:stateCapacities():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def hzOrbitAction(E, dt = 1e-3, rtol = 1e-11, atol = 1e-13):
    """
    Integrates z' = JQz from z0 = S^-1(sqrt(hbar/lambda_1) e_1), Q = S^T D S,
    over one period 2 pi / lambda_1 and returns the action of the orbit,
    the integral of p.x' dt, which equals pi hbar / lambda_1.
    """
    try:
        form = BlobSymplectic.williamson(E.Q)
        n = form.spectrum.shape[0]
        lam = float(form.spectrum[0])
        start = np.zeros(2 * n)
        start[0] = math.sqrt(E.hbar / lam)
        z0 = np.linalg.solve(form.S, start)
        JQ = BlobSymplectic.standardJ(n) @ E.Q
        period = 2.0 * math.pi / lam

        def rhs(t, y):
            velocity = JQ @ y[:-1]
            return np.append(velocity, y[n:2 * n] @ velocity[:n])

        solution = solve_ivp(rhs, (0.0, period), np.append(z0, 0.0), method = "DOP853", rtol = rtol, atol = atol, max_step = dt)
        if not solution.success:
            raise BlobErrors.NumericalError("orbit integration failed: {0}".format(solution.message))
        end = solution.y[:, -1]
        closure = float(np.max(np.abs(end[:-1] - z0)))
        capacity_logger.debug("{0}:hzOrbitAction():period {1:.6g}, closure {2:.3e}".format(str(datetime.datetime.now()), period, closure))
        return CapacityResult(end[-1], "ellipsoid", {"lambda_max": lam, "period": period, "closure": closure})
    except Exception as err:
        capacity_logger.error("{0}:hzOrbitAction():{1}".format(str(datetime.datetime.now()), str(err)))
        raise
