"""
:mod: 'BlobBeam'
~~~~~~~~~~~~~~~~

..  py:module:: BlobBeam
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Hamiltonian flows, the variational equation, the symmetrized phase and nearby-orbit (Gaussian beam) propagation of Gaussian and geometric states
    :description: Contains the following classes:

        HamiltonianModel - value, gradient and hessian of H(z, t), with time breakpoints
        QuadraticHamiltonian - H = M(t)z.z / 2, constant or piecewise constant in t
        KineticPlusPotential - H = |p|^2 / 2 + V(x, t), optionally with a smooth compact cutoff of V
        Trajectory - sampled solution of Hamilton's equations
        BeamState - time, reference point z_t, linearization S_t, phase and propagated payload

                  Contains the following functions:

        harmonicOscillator - H = (|x|^2 + |p|^2) / 2
        freeParticle - H = |p|^2 / 2
        constantForce - H = |p|^2 / 2 - F.x
        quarticOscillator - H = |p|^2 / 2 + sum(x^2 / 2 + g x^4 / 4)
        checkDerivatives - finite-difference consistency of a model
        integrate - fixed-step classical RK4 on a (2n, k) array, segment by segment between breakpoints
        flow - trajectory of z' = J grad H
        variationalFlow - (z_t, S_t) with S' = J D^2H(z_t) S
        iterVariational - the same as a snapshot stream
        phase - symmetrized phase integral of (sigma(z, z') / 2 - H) by Simpson quadrature
        iterBeam - snapshots of U(z0, t) = T(z_t) S_t applied to a state
        beamPropagate - final snapshot of iterBeam
        blobTransportCheck - containment of sampled blob points under the linearized and the full flow
"""

try:
    import math, sys, os, datetime, logging
    beam_logger = logging.getLogger()
    import numpy as np
    from scipy.integrate import simpson
    # Tiered
    # from . import (BlobErrors, BlobSymplectic, BlobLagrangian)
    # Flat
    import BlobErrors, BlobSymplectic, BlobLagrangian
except Exception as err:
    beam_logger.error("{0}:BlobBeam import error:{1}".format(str(datetime.datetime.now()), str(err)))

DERIVATIVE_TOL = 1e-5
TRANSPORT_TOL = 1e-7
# isotropy slack for planes carried by a numerically integrated S_t
PROPAGATION_TOL = 1e-6

class HamiltonianModel():
    """
    HamiltonianModel
    ~~~~~~~~~~~~~~~~
    Base class of Hamiltonian functions on R^2n x R; subclasses supply value, gradient and hessian

    Functions
    ~~~~~~~~~
    value(self, z, t) - H(z, t)
    gradient(self, z, t) - grad_z H, length 2n
    hessian(self, z, t) - D^2_z H, 2n x 2n
    gradientBatch(self, Z, t) - gradients of the columns of a (2n, N) array
    hessianBatch(self, Z, t) - hessians of the columns of a (2n, N) array, shape (N, 2n, 2n)

    Attributes
    ~~~~~~~~~~
    n (int type); degrees of freedom
    breakpoints (list type); times at which H may jump; integration steps never straddle them
    """

    def __init__(self, n, breakpoints = ()):
        self.n = int(n)
        self.breakpoints = sorted(float(t) for t in breakpoints)

    def value(self, z, t = 0.0):
        raise NotImplementedError

    def gradient(self, z, t = 0.0):
        raise NotImplementedError

    def hessian(self, z, t = 0.0):
        raise NotImplementedError

    def gradientBatch(self, Z, t = 0.0):
        return np.column_stack([self.gradient(Z[:, i], t) for i in range(Z.shape[1])])

    def hessianBatch(self, Z, t = 0.0):
        return np.stack([self.hessian(Z[:, i], t) for i in range(Z.shape[1])])

class QuadraticHamiltonian(HamiltonianModel):
    """
    QuadraticHamiltonian
    ~~~~~~~~~~~~~~~~~~~~
    H(z, t) = M(t)z.z / 2 with M(t) symmetric; the flow is linear and beam propagation is exact

    Functions
    ~~~~~~~~~
    matrix(self, t) - M(t)
    piecewise(times, Ms) - static; M(t) = Ms[k] on [times[k-1], times[k])

    Attributes
    ~~~~~~~~~~
    M (callable type); t -> M(t)
    """

    def __init__(self, M, breakpoints = ()):
        if callable(M):
            self.M = M
            M0 = BlobSymplectic.asSquare(M(0.0), "M")
        else:
            M0 = BlobSymplectic.checkSymmetric(BlobSymplectic.asSquare(M, "M"))
            self.M = lambda t: M0
        HamiltonianModel.__init__(self, BlobSymplectic.halfDimension(M0.shape[0]), breakpoints)

    @staticmethod
    def piecewise(times, Ms):
        times = [float(t) for t in times]
        if len(Ms) != len(times) + 1:
            raise BlobErrors.DomainError("{0} breakpoints need {1} matrices, got {2}".format(len(times), len(times) + 1, len(Ms)))
        if any(b <= a for a, b in zip(times, times[1:])):
            raise BlobErrors.DomainError("breakpoints must be strictly increasing")
        pieces = [BlobSymplectic.checkSymmetric(BlobSymplectic.asSquare(M, "M")) for M in Ms]
        if len(set(M.shape for M in pieces)) != 1:
            raise BlobErrors.DimensionError("piecewise matrices differ in shape")
        return QuadraticHamiltonian(lambda t: pieces[int(np.searchsorted(times, t, side = "right"))], times)

    def matrix(self, t = 0.0):
        return self.M(t)

    def value(self, z, t = 0.0):
        z = np.asarray(z, dtype = float)
        return 0.5 * float(z @ self.M(t) @ z)

    def gradient(self, z, t = 0.0):
        return self.M(t) @ np.asarray(z, dtype = float)

    def hessian(self, z, t = 0.0):
        return self.M(t)

    def gradientBatch(self, Z, t = 0.0):
        return self.M(t) @ Z

    def hessianBatch(self, Z, t = 0.0):
        return np.broadcast_to(self.M(t), (Z.shape[1], 2 * self.n, 2 * self.n))

class KineticPlusPotential(HamiltonianModel):
    """
    KineticPlusPotential
    ~~~~~~~~~~~~~~~~~~~~
    H(x, p, t) = |p|^2 / 2 + chi(x) V(x, t). V, dV and d2V act on (n, N) arrays of positions and return
    shapes (N,), (n, N) and (n, n, N). With a cutoff radius R, chi = 1 on |x| <= R, 0 on |x| >= 2R,
    and a quintic C^2 transition in between; otherwise chi = 1.

    Attributes
    ~~~~~~~~~~
    V (callable type); potential
    dV (callable type); potential gradient
    d2V (callable type); potential hessian
    cutoff (float type); cutoff radius or None
    """

    def __init__(self, n, V, dV, d2V, cutoff = None):
        HamiltonianModel.__init__(self, n)
        if cutoff is not None and not cutoff > 0:
            raise BlobErrors.DomainError("cutoff radius must be positive, got {0}".format(cutoff))
        self.V = V
        self.dV = dV
        self.d2V = d2V
        self.cutoff = cutoff

    def cutoffTerms(self, X):
        N = X.shape[1]
        if self.cutoff is None:
            return np.ones(N), np.zeros((self.n, N)), np.zeros((self.n, self.n, N))
        R = self.cutoff
        r = np.linalg.norm(X, axis = 0)
        u = np.clip(r / R - 1.0, 0.0, 1.0)
        chi = 1.0 - u ** 3 * (10.0 - 15.0 * u + 6.0 * u ** 2)
        d_chi = -30.0 * u ** 2 * (1.0 - u) ** 2
        dd_chi = -60.0 * u * (1.0 - u) * (1.0 - 2.0 * u)
        safe_r = np.where(r > 0, r, 1.0)
        unit = X / safe_r
        outer = np.einsum("in,jn->ijn", unit, unit)
        grad = d_chi / R * unit
        hess = dd_chi / R ** 2 * outer + d_chi / (R * safe_r) * (np.eye(self.n)[:, :, None] - outer)
        return chi, grad, hess

    def potentialTerms(self, X, t):
        chi, grad_chi, hess_chi = self.cutoffTerms(X)
        V = np.asarray(self.V(X, t), dtype = float)
        dV = np.asarray(self.dV(X, t), dtype = float).reshape(self.n, -1)
        d2V = np.asarray(self.d2V(X, t), dtype = float).reshape(self.n, self.n, -1)
        value = chi * V
        grad = chi * dV + V * grad_chi
        hess = (chi * d2V + np.einsum("in,jn->ijn", grad_chi, dV) + np.einsum("in,jn->ijn", dV, grad_chi) + V * hess_chi)
        return value, grad, hess

    def value(self, z, t = 0.0):
        z = np.asarray(z, dtype = float)
        value, _, _ = self.potentialTerms(z[:self.n, None], t)
        return 0.5 * float(z[self.n:] @ z[self.n:]) + float(value[0])

    def gradient(self, z, t = 0.0):
        return self.gradientBatch(np.asarray(z, dtype = float)[:, None], t)[:, 0]

    def hessian(self, z, t = 0.0):
        return self.hessianBatch(np.asarray(z, dtype = float)[:, None], t)[0]

    def gradientBatch(self, Z, t = 0.0):
        _, grad, _ = self.potentialTerms(Z[:self.n], t)
        return np.vstack([grad, Z[self.n:]])

    def hessianBatch(self, Z, t = 0.0):
        _, _, hess = self.potentialTerms(Z[:self.n], t)
        N = Z.shape[1]
        out = np.zeros((N, 2 * self.n, 2 * self.n))
        out[:, :self.n, :self.n] = np.moveaxis(hess, -1, 0)
        out[:, self.n:, self.n:] = np.eye(self.n)
        return out

def harmonicOscillator(n = 1):
    return QuadraticHamiltonian(np.eye(2 * n))

def freeParticle(n = 1):
    return QuadraticHamiltonian(np.diag(np.concatenate([np.zeros(n), np.ones(n)])))

def constantForce(F, cutoff = None):
    F = np.atleast_1d(np.asarray(F, dtype = float))
    n = F.shape[0]
    return KineticPlusPotential(n,
                                lambda X, t: -F @ X,
                                lambda X, t: np.repeat(-F[:, None], X.shape[1], axis = 1),
                                lambda X, t: np.zeros((n, n, X.shape[1])),
                                cutoff)

def quarticOscillator(n = 1, coupling = 0.1, cutoff = None):
    g = float(coupling)
    return KineticPlusPotential(n,
                                lambda X, t: np.sum(0.5 * X ** 2 + 0.25 * g * X ** 4, axis = 0),
                                lambda X, t: X + g * X ** 3,
                                lambda X, t: np.einsum("ij,jn->ijn", np.eye(n), 1.0 + 3.0 * g * X ** 2),
                                cutoff)

def checkDerivatives(H, points, t = 0.0, step = 1e-6):
    """Max relative error of the gradient against central differences of value, and of the hessian against differences of the gradient."""
    try:
        grad_err = 0.0
        hess_err = 0.0
        for z in np.atleast_2d(np.asarray(points, dtype = float)):
            d = z.shape[0]
            grad = H.gradient(z, t)
            hess = H.hessian(z, t)
            fd_grad = np.empty(d)
            fd_hess = np.empty((d, d))
            for i in range(d):
                e = np.zeros(d)
                e[i] = step
                fd_grad[i] = (H.value(z + e, t) - H.value(z - e, t)) / (2.0 * step)
                fd_hess[:, i] = (H.gradient(z + e, t) - H.gradient(z - e, t)) / (2.0 * step)
            grad_err = max(grad_err, np.linalg.norm(fd_grad - grad) / max(1.0, np.linalg.norm(grad)))
            hess_err = max(hess_err, np.linalg.norm(fd_hess - hess) / max(1.0, np.linalg.norm(hess)))
        return {"gradient": float(grad_err), "hessian": float(hess_err), "ok": bool(max(grad_err, hess_err) <= DERIVATIVE_TOL)}
    except Exception as err:
        beam_logger.error("{0}:checkDerivatives():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

class Trajectory():
    """
    Trajectory
    ~~~~~~~~~~

    Attributes
    ~~~~~~~~~~
    times (numpy.ndarray type); step boundaries, shape (N,)
    points (numpy.ndarray type); z at each time, shape (N, 2n)
    """

    def __init__(self, times, points):
        self.times = np.asarray(times, dtype = float)
        self.points = np.asarray(points, dtype = float)

    def final(self):
        return self.points[-1]

class BeamState():
    """
    BeamState
    ~~~~~~~~~
    Snapshot of a propagation; the phase is diagnostic and not part of the payload

    Functions
    ~~~~~~~~~
    toDict(self) - report form without the payload

    Attributes
    ~~~~~~~~~~
    t (float type); time
    z (numpy.ndarray type); reference point z_t
    S (numpy.ndarray type); linearization of the flow at z0
    gamma (float type); symmetrized phase accumulated along z_t
    drift (float type); max-norm of S^T J S - J
    payload (GaussianState, GeometricState or None type); propagated state
    """

    def __init__(self, t, z, S, gamma, payload = None):
        self.t = float(t)
        self.z = np.array(z, dtype = float)
        self.S = np.array(S, dtype = float)
        self.gamma = float(gamma)
        self.drift = BlobSymplectic.symplecticResidual(self.S)
        self.payload = payload

    def toDict(self):
        return {"t": self.t, "z": self.z.tolist(), "S": self.S.tolist(), "gamma": self.gamma, "drift": self.drift}

def segmentBounds(t0, t_end, breakpoints):
    cuts = [t0] + [b for b in breakpoints if t0 < b < t_end] + [t_end]
    return list(zip(cuts[:-1], cuts[1:]))

def stepTimes(a, b, dt):
    """a + k dt inside (a, b), ending exactly at b; the last step is shortened."""
    count = int(math.floor((b - a) / dt))
    times = [a + k * dt for k in range(1, count + 1)]
    if times and abs(times[-1] - b) <= 1e-9 * dt:
        times[-1] = b
    elif not times or times[-1] < b:
        times.append(b)
    return [t for t in times if t <= b]

def rk4Step(rhs, t, Y, h, upper):
    def clamp(s):
        return min(s, upper)
    k1 = rhs(t, Y)
    k2 = rhs(clamp(t + 0.5 * h), Y + 0.5 * h * k1)
    k3 = rhs(clamp(t + 0.5 * h), Y + 0.5 * h * k2)
    k4 = rhs(clamp(t + h), Y + h * k3)
    return Y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

def integrate(rhs, Y0, t_end, dt, t0 = 0.0, breakpoints = (), post = None):
    """
    Classical RK4 for Y' = rhs(t, Y). Yields (t, Y, a, b) after every step,
    with [a, b] the current segment; stage times stay strictly below b so a
    piecewise-in-time rhs is evaluated on the piece of the segment.
    """
    if not dt > 0:
        raise BlobErrors.DomainError("dt must be positive, got {0}".format(dt))
    if t_end < t0:
        raise BlobErrors.DomainError("t_end {0} precedes t0 {1}".format(t_end, t0))
    Y = np.array(Y0, dtype = float)
    for a, b in segmentBounds(t0, t_end, breakpoints):
        upper = np.nextafter(b, a)
        t = a
        for t_next in stepTimes(a, b, dt):
            Y_next = rk4Step(rhs, t, Y, t_next - t, upper)
            if post is not None:
                Y_next = post(Y_next)
            if not np.all(np.isfinite(Y_next)):
                raise BlobErrors.BlowUpError("integration blew up after t = {0:.6g}".format(t), t)
            Y = Y_next
            t = t_next
            yield t, Y, a, b

def flowRhs(H):
    J = BlobSymplectic.standardJ(H.n)
    def rhs(t, Y):
        return J @ H.gradientBatch(Y, t)
    return rhs

def variationalRhs(H):
    """Column 0 is z, the other columns are tangent vectors carried by J D^2H(z_t, t)."""
    J = BlobSymplectic.standardJ(H.n)
    def rhs(t, Y):
        z = Y[:, 0]
        out = np.empty_like(Y)
        out[:, 0] = J @ H.gradient(z, t)
        out[:, 1:] = J @ H.hessian(z, t) @ Y[:, 1:]
        return out
    return rhs

def phaseIntegrand(H, z, t):
    # sigma(z, J grad H) / 2 - H = z.grad H / 2 - H
    return 0.5 * float(z @ H.gradient(z, t)) - H.value(z, t)

class PhaseAccumulator():
    """
    PhaseAccumulator
    ~~~~~~~~~~~~~~~~
    Simpson quadrature of the phase integrand, one segment between breakpoints at a time

    Functions
    ~~~~~~~~~
    add(self, t, z, a, b) - records a sample of segment [a, b]
    value(self) - the integral so far
    """

    def __init__(self, H, t0, z0):
        self.H = H
        self.closed = 0.0
        self.times = [t0]
        self.values = [phaseIntegrand(H, z0, t0)]

    def add(self, t, z, a, b):
        end = t >= b
        self.times.append(t)
        self.values.append(phaseIntegrand(self.H, z, np.nextafter(b, a) if end else t))
        if end:
            self.closed += self.openIntegral()
            self.times = [t]
            self.values = [phaseIntegrand(self.H, z, t)]

    def openIntegral(self):
        if len(self.times) < 2:
            return 0.0
        return float(simpson(np.array(self.values), x = np.array(self.times)))

    def value(self):
        return self.closed + self.openIntegral()

def flow(H, z0, t_end, dt, t0 = 0.0):
    try:
        z0 = np.asarray(z0, dtype = float).reshape(-1)
        times = [t0]
        points = [z0]
        for t, Y, a, b in integrate(flowRhs(H), z0[:, None], t_end, dt, t0, H.breakpoints):
            times.append(t)
            points.append(Y[:, 0].copy())
        return Trajectory(times, points)
    except Exception as err:
        beam_logger.error("{0}:flow():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def iterVariational(H, z0, t_end, dt, every = 1, t0 = 0.0, reproject = False):
    """Yields a BeamState at t0, every `every` steps and at t_end."""
    z0 = np.asarray(z0, dtype = float).reshape(-1)
    if every < 1:
        raise BlobErrors.DomainError("snapshot stride must be at least 1, got {0}".format(every))
    d = z0.shape[0]
    Y0 = np.hstack([z0[:, None], np.eye(d)])
    post = None
    if reproject:
        def post(Y):
            Y[:, 1:] = BlobSymplectic.symplecticReproject(Y[:, 1:])
            return Y
    accumulator = PhaseAccumulator(H, t0, z0)
    yield BeamState(t0, z0, np.eye(d), 0.0)
    steps = 0
    last = None
    for t, Y, a, b in integrate(variationalRhs(H), Y0, t_end, dt, t0, H.breakpoints, post):
        accumulator.add(t, Y[:, 0], a, b)
        steps += 1
        last = (t, Y)
        if steps % every == 0:
            yield BeamState(t, Y[:, 0], Y[:, 1:], accumulator.value())
            last = None
    if last is not None:
        yield BeamState(last[0], last[1][:, 0], last[1][:, 1:], accumulator.value())

def variationalFlow(H, z0, t_end, dt, every = 1, t0 = 0.0, reproject = False):
    try:
        return list(iterVariational(H, z0, t_end, dt, every, t0, reproject))
    except Exception as err:
        beam_logger.error("{0}:variationalFlow():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def phase(H, z0, t_end, dt, t0 = 0.0):
    try:
        z0 = np.asarray(z0, dtype = float).reshape(-1)
        accumulator = PhaseAccumulator(H, t0, z0)
        for t, Y, a, b in integrate(flowRhs(H), z0[:, None], t_end, dt, t0, H.breakpoints):
            accumulator.add(t, Y[:, 0], a, b)
        return accumulator.value()
    except Exception as err:
        beam_logger.error("{0}:phase():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def propagatePayload(state, S, z_t, z0):
    """U(z) = z_t + S(z - z0) applied to a Gaussian or geometric state."""
    translation = z_t - S @ z0
    if isinstance(state, BlobLagrangian.GaussianState):
        return BlobLagrangian.displace(translation, BlobLagrangian.metaplecticAct(S, state))
    return BlobLagrangian.actAffine(S, translation, state, PROPAGATION_TOL)

def iterBeam(H, state, t_end, dt, every = 100, z0 = None, t0 = 0.0, reproject = False):
    """Snapshots of the beam; z0 defaults to the center of the state."""
    z0 = state.center if z0 is None else np.asarray(z0, dtype = float).reshape(-1)
    if z0.shape[0] != 2 * H.n or state.n != H.n:
        raise BlobErrors.DimensionError("Hamiltonian has n = {0}, state has n = {1}".format(H.n, state.n))
    beam_logger.debug("{0}:iterBeam():t0 {1}, t_end {2}, dt {3}".format(str(datetime.datetime.now()), t0, t_end, dt))
    for snapshot in iterVariational(H, z0, t_end, dt, every, t0, reproject):
        snapshot.payload = propagatePayload(state, snapshot.S, snapshot.z, z0)
        yield snapshot

def beamPropagate(H, state, t_end, dt, z0 = None, t0 = 0.0, reproject = False):
    try:
        final = None
        for final in iterBeam(H, state, t_end, dt, sys.maxsize, z0, t0, reproject):
            pass
        return final
    except Exception as err:
        beam_logger.error("{0}:beamPropagate():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def sampleBall(d, count, rng, on_boundary = False):
    """count points of the closed unit ball of R^d, uniform in volume, as a (d, count) array."""
    directions = rng.standard_normal((d, count))
    directions /= np.linalg.norm(directions, axis = 0)
    if on_boundary:
        return directions
    return directions * rng.uniform(size = count) ** (1.0 / d)

def blobTransportCheck(H, z0, S, sample_count = 1000, t_end = 1.0, dt = 1e-3, seed = 0, hbar = 1.0, on_boundary = False, nonlinear = True):
    """
    Points z(0) of z0 + S(B(sqrt(hbar))) carried by the linearized flow at z_t
    stay in z_t + S_t S(B(sqrt(hbar))); the report gives the radius residual.
    Under the full flow the containment fraction, the excess radius and the
    Groenwall envelope |z(t) - z_t| <= exp(k t)|z(0) - z0|, k = max ||D^2H||
    over the sampled points, are reported.
    """
    try:
        z0 = np.asarray(z0, dtype = float).reshape(-1)
        S = BlobSymplectic.asSquare(S, "S")
        d = z0.shape[0]
        if not BlobSymplectic.isSymplectic(S, PROPAGATION_TOL):
            raise BlobErrors.DomainError("blob map is not symplectic")
        rng = np.random.default_rng(seed)
        root = math.sqrt(hbar)
        offsets = root * (S @ sampleBall(d, sample_count, rng, on_boundary))
        radius0 = np.linalg.norm(np.linalg.solve(S, offsets), axis = 0) / root

        def radius(S_t, delta):
            return np.linalg.norm(np.linalg.solve(S_t @ S, delta), axis = 0) / root

        # linearized flow: columns [z | S_t | offsets]
        Y0 = np.hstack([z0[:, None], np.eye(d), offsets])
        final = Y0
        for t, Y, a, b in integrate(variationalRhs(H), Y0, t_end, dt, 0.0, H.breakpoints):
            final = Y
        S_t = final[:, 1:d + 1]
        linear_radius = radius(S_t, final[:, d + 1:])
        report = {"samples": int(sample_count),
                  "t_end": float(t_end),
                  "drift": BlobSymplectic.symplecticResidual(S_t),
                  "linear": {"max_radius_residual": float(np.max(np.abs(linear_radius - radius0))),
                             "max_radius": float(np.max(linear_radius)),
                             "contained": bool(np.all(linear_radius <= 1.0 + TRANSPORT_TOL))}}
        if not nonlinear:
            return report

        J = BlobSymplectic.standardJ(H.n)
        variational = variationalRhs(H)

        def rhs(t, Y):
            out = variational(t, Y[:, :d + 1])
            return np.hstack([out, J @ H.gradientBatch(Y[:, d + 1:], t)])

        Y0 = np.hstack([z0[:, None], np.eye(d), z0[:, None] + offsets])
        start_norms = np.linalg.norm(offsets, axis = 0)
        k = float(np.max(np.linalg.norm(H.hessianBatch(Y0[:, d + 1:], 0.0), ord = 2, axis = (1, 2))))
        log_ratios = []
        final = Y0
        for t, Y, a, b in integrate(rhs, Y0, t_end, dt, 0.0, H.breakpoints):
            samples = Y[:, d + 1:]
            k = max(k, float(np.max(np.linalg.norm(H.hessianBatch(samples, t), ord = 2, axis = (1, 2)))))
            spread = np.linalg.norm(samples - Y[:, :1], axis = 0)
            valid = start_norms > 0
            log_ratios.append((t, float(np.max(np.log(spread[valid] / start_norms[valid]), initial = -np.inf))))
            final = Y
        full_radius = radius(final[:, 1:d + 1], final[:, d + 1:] - final[:, :1])
        violations = sum(1 for t, r in log_ratios if r > k * t + 1e-9)
        report["nonlinear"] = {"contained_fraction": float(np.mean(full_radius <= 1.0 + TRANSPORT_TOL)),
                               "max_excess_radius": float(np.max(full_radius) - 1.0),
                               "gronwall_k": k,
                               "gronwall_violations": int(violations)}
        return report
    except Exception as err:
        beam_logger.error("{0}:blobTransportCheck():{1}".format(str(datetime.datetime.now()), str(err)))
        raise
