"""
:mod: 'BlobParseUtility'
~~~~~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobParseUtility
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Utility functions converting JSON input documents into matrices, ellipsoids, states, Hamiltonians and beam experiments
    :description: Contains the following functions:

        loadInput - reads a JSON document, returning it with the sha256 digest of its bytes
        requireKey - fetches a mandatory key from a document
        parseMatrix - list of rows -> square float matrix
        parseVector - list of numbers -> float vector, optionally of a given length
        parseVectors - list of vectors -> matrix whose columns are the vectors
        parseEllipsoid - {"Q", "center"} -> BlobEllipsoid.Ellipsoid
        parseSubspace - list of spanning vectors -> BlobEllipsoid.Subspace
        parseCovariance - {"Sigma"} -> BlobAdmissibility.CovarianceMatrix
        parseFrame - {"ell", "ellPrime"} or "canonical" -> BlobLagrangian.LagrangianFrame
        parseState - {"kind": "geometric" | "mixed" | "symplectic" | "gaussian", ...} -> state object
        parseHamiltonian - {"kind": "quadratic" | "kinetic_potential", ...} -> BlobBeam.HamiltonianModel
        parseBeamExperiment - {"hamiltonian", "state", "z0", "tEnd", "dt", "transport"} -> dict of parsed parts

    Shape and type problems raise BlobErrors.ParseError (exit code 2); well-formed input that
    violates a mathematical precondition raises the corresponding DomainError when the object
    is constructed (exit code 3).
"""

try:
    import hashlib, json, sys, os, datetime, logging
    parse_utility_logger = logging.getLogger()
    import numpy as np
    # Tiered
    # from . import (BlobErrors, BlobEllipsoid, BlobAdmissibility, BlobLagrangian, BlobBeam)
    # Flat
    import BlobErrors, BlobEllipsoid, BlobAdmissibility, BlobLagrangian, BlobBeam
except Exception as err:
    parse_utility_logger.error("{0}:BlobParseUtility import error:{1}".format(str(datetime.datetime.now()), str(err)))

POTENTIALS = ("free", "harmonic", "quartic", "linear")

def loadInput(input_path):
    try:
        with open(input_path, "rb") as fh:
            raw = fh.read()
    except OSError as err:
        raise BlobErrors.ParseError("cannot read input {0}: {1}".format(input_path, err))
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as err:
        raise BlobErrors.ParseError("malformed JSON in {0}: {1}".format(input_path, err))
    if not isinstance(doc, dict):
        raise BlobErrors.ParseError("top-level JSON value must be an object")
    return doc, hashlib.sha256(raw).hexdigest()

def requireKey(doc, key, context = "input"):
    if not isinstance(doc, dict):
        raise BlobErrors.ParseError("{0} must be a JSON object".format(context))
    if key not in doc:
        raise BlobErrors.ParseError("{0} is missing key '{1}'".format(context, key))
    return doc[key]

def numericArray(value, name):
    try:
        arr = np.array(value, dtype = float)
    except (TypeError, ValueError):
        raise BlobErrors.ParseError("{0} must be numeric and rectangular".format(name))
    if not np.all(np.isfinite(arr)):
        raise BlobErrors.ParseError("{0} contains non-finite entries".format(name))
    return arr

def parseMatrix(value, name = "matrix"):
    arr = numericArray(value, name)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise BlobErrors.ParseError("{0} must be a non-empty square matrix, got shape {1}".format(name, arr.shape))
    return arr

def parseVector(value, name = "vector", length = None):
    arr = numericArray(value, name)
    if arr.ndim != 1:
        raise BlobErrors.ParseError("{0} must be a flat list of numbers".format(name))
    if length is not None and arr.shape[0] != length:
        raise BlobErrors.ParseError("{0} must have length {1}, got {2}".format(name, length, arr.shape[0]))
    return arr

def parseVectors(value, name = "vectors"):
    arr = numericArray(value, name)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise BlobErrors.ParseError("{0} must be a non-empty list of vectors".format(name))
    return arr.T

def optionalCenter(doc, dim):
    if doc.get("center") is None:
        return None
    return parseVector(doc["center"], "center", dim)

def parseEllipsoid(doc, hbar = 1.0):
    Q = parseMatrix(requireKey(doc, "Q", "ellipsoid"), "Q")
    return BlobEllipsoid.Ellipsoid(Q, optionalCenter(doc, Q.shape[0]), hbar)

def parseSubspace(value):
    return BlobEllipsoid.Subspace(parseVectors(value, "subspace"))

def parseCovariance(doc, hbar = 1.0):
    return BlobAdmissibility.CovarianceMatrix(parseMatrix(requireKey(doc, "Sigma", "covariance"), "Sigma"), hbar)

def parseFrame(value):
    ell = parseVectors(requireKey(value, "ell", "frame"), "ell")
    ellPrime = parseVectors(requireKey(value, "ellPrime", "frame"), "ellPrime")
    return BlobLagrangian.LagrangianFrame(ell, ellPrime)

def parseState(doc, hbar = 1.0):
    """
    geometric: {"frame": {"ell", "ellPrime"} | "canonical", "shapeX", "center"?}
    mixed: the same plus "shapeP"
    symplectic: {"S", "center"?}, the image of the standard state
    gaussian: {"A", "B"?, "center"?}
    """
    try:
        kind = requireKey(doc, "kind", "state")
        if kind in ("geometric", "mixed"):
            shapeX = parseMatrix(requireKey(doc, "shapeX", "state"), "shapeX")
            n = shapeX.shape[0]
            frame_doc = doc.get("frame", "canonical")
            frame = BlobLagrangian.LagrangianFrame.canonical(n) if frame_doc == "canonical" else parseFrame(frame_doc)
            center = optionalCenter(doc, 2 * n)
            if kind == "mixed":
                shapeP = parseMatrix(requireKey(doc, "shapeP", "state"), "shapeP")
                return BlobLagrangian.MixedGeometricState(frame, shapeX, shapeP, center, hbar)
            return BlobLagrangian.GeometricState(frame, shapeX, center, hbar)
        if kind == "symplectic":
            S = parseMatrix(requireKey(doc, "S", "state"), "S")
            return BlobLagrangian.GeometricState.fromSymplectic(S, optionalCenter(doc, S.shape[0]), hbar)
        if kind == "gaussian":
            A = parseMatrix(requireKey(doc, "A", "state"), "A")
            B = parseMatrix(doc["B"], "B") if doc.get("B") is not None else None
            return BlobLagrangian.GaussianState(A, B, optionalCenter(doc, 2 * A.shape[0]), hbar)
        raise BlobErrors.ParseError("unknown state kind '{0}'".format(kind))
    except Exception as err:
        parse_utility_logger.error("{0}:parseState():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def parseHamiltonian(doc):
    """
    quadratic: {"M"} or {"times", "Ms"} (piecewise constant)
    kinetic_potential: {"n", "potential": free | harmonic | quartic | linear, "coupling"?, "force"?, "cutoff"?}
    """
    try:
        kind = requireKey(doc, "kind", "hamiltonian")
        if kind == "quadratic":
            if "Ms" in doc:
                times = parseVector(requireKey(doc, "times", "hamiltonian"), "times")
                Ms = [parseMatrix(M, "Ms[{0}]".format(i)) for i, M in enumerate(doc["Ms"])]
                return BlobBeam.QuadraticHamiltonian.piecewise(times, Ms)
            return BlobBeam.QuadraticHamiltonian(parseMatrix(requireKey(doc, "M", "hamiltonian"), "M"))
        if kind == "kinetic_potential":
            potential = requireKey(doc, "potential", "hamiltonian")
            cutoff = doc.get("cutoff")
            if cutoff is not None and not isinstance(cutoff, (int, float)):
                raise BlobErrors.ParseError("cutoff must be a number")
            if potential == "linear":
                return BlobBeam.constantForce(parseVector(requireKey(doc, "force", "hamiltonian"), "force"), cutoff)
            n = requireKey(doc, "n", "hamiltonian")
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise BlobErrors.ParseError("n must be a positive integer")
            if potential == "quartic":
                coupling = doc.get("coupling", 0.1)
                if not isinstance(coupling, (int, float)):
                    raise BlobErrors.ParseError("coupling must be a number")
                return BlobBeam.quarticOscillator(n, coupling, cutoff)
            if potential == "harmonic":
                return BlobBeam.quarticOscillator(n, 0.0, cutoff)
            if potential == "free":
                return BlobBeam.KineticPlusPotential(n,
                                                     lambda X, t: np.zeros(X.shape[1]),
                                                     lambda X, t: np.zeros_like(X),
                                                     lambda X, t: np.zeros((n, n, X.shape[1])),
                                                     cutoff)
            raise BlobErrors.ParseError("unknown potential '{0}', expected one of {1}".format(potential, ", ".join(POTENTIALS)))
        raise BlobErrors.ParseError("unknown hamiltonian kind '{0}'".format(kind))
    except Exception as err:
        parse_utility_logger.error("{0}:parseHamiltonian():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def parseBeamExperiment(doc, hbar = 1.0):
    try:
        H = parseHamiltonian(requireKey(doc, "hamiltonian", "experiment"))
        state = parseState(requireKey(doc, "state", "experiment"), hbar)
        experiment = {"hamiltonian": H, "state": state, "z0": None, "tEnd": None, "dt": None, "transport": None}
        if doc.get("z0") is not None:
            experiment["z0"] = parseVector(doc["z0"], "z0", 2 * H.n)
        for key in ("tEnd", "dt"):
            if doc.get(key) is not None:
                if not isinstance(doc[key], (int, float)) or isinstance(doc[key], bool):
                    raise BlobErrors.ParseError("{0} must be a number".format(key))
                experiment[key] = float(doc[key])
        transport = doc.get("transport")
        if transport is not None:
            samples = transport.get("samples", 1000) if isinstance(transport, dict) else None
            if not isinstance(samples, int) or isinstance(samples, bool) or samples < 1:
                raise BlobErrors.ParseError("transport.samples must be a positive integer")
            experiment["transport"] = {"samples": samples, "on_boundary": bool(transport.get("on_boundary", False))}
        return experiment
    except Exception as err:
        parse_utility_logger.error("{0}:parseBeamExperiment():{1}".format(str(datetime.datetime.now()), str(err)))
        raise
