"""
:mod: 'BlobCntlr'
~~~~~~~~~~~~~~~~~

..  py:module:: BlobCntlr
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Main controller used by blobstudio, dispatches subcommands to the analysis modules
    :description: Contains the following classes:

        RunConfig - validated settings of one run (subcommand, input, hbar, tolerances, seed, output, archive)
        BlobCntlr - runs one subcommand through the run manager and maps failures to exit codes
"""

try:
    import math, sys, os, datetime, logging
    cntlr_logger = logging.getLogger()
    import numpy as np
    # Tiered
    # from . import (BlobErrors, BlobSymplectic, BlobEllipsoid, BlobAdmissibility, BlobCapacity, BlobLagrangian, BlobBeam, BlobParseUtility, BlobExportUtility, BlobRunManager)
    # Flat
    import BlobErrors, BlobSymplectic, BlobEllipsoid, BlobAdmissibility, BlobCapacity, BlobLagrangian, BlobBeam
    import BlobParseUtility, BlobExportUtility, BlobRunManager
except Exception as err:
    cntlr_logger.error("{0}:BlobCntlr import error:{1}".format(str(datetime.datetime.now()), str(err)))

SUBCOMMANDS = ("williamson", "admissible", "dual", "capacity", "state", "beam", "history")
DEFAULT_DT = 1e-3
# tolerance for "payload returned to its initial value" in beam summaries
INVARIANCE_TOL = 1e-6

class RunConfig():
    """
    RunConfig
    ~~~~~~~~~
    Settings of one run; validate() raises BlobErrors.ParseError on invalid values

    Attributes
    ~~~~~~~~~~
    subcommand (str type); one of SUBCOMMANDS
    input_path (str type); JSON input file, None for history
    hbar (float type); Planck constant in use, default 1.0
    tol (float type); verdict tolerance, default 1e-9
    seed (int type); seed of every random sampler, default 0
    planes (int type); number of random symplectic planes for tomography, default 64
    dt (float type); RK4 step; None takes the input's dt or 1e-3
    t_end (float type); final time; None takes the input's tEnd
    every (int type); beam snapshot stride in steps, default 100
    output (str type); report path; None writes to stdout
    db (str type); sqlite archive path; None disables archiving
    """

    def __init__(self, subcommand, input_path = None, hbar = 1.0, tol = 1e-9, seed = 0, planes = BlobAdmissibility.DEFAULT_PLANES,
                 dt = None, t_end = None, every = 100, output = None, db = None):
        self.subcommand = subcommand
        self.input_path = input_path
        self.hbar = hbar
        self.tol = tol
        self.seed = seed
        self.planes = planes
        self.dt = dt
        self.t_end = t_end
        self.every = every
        self.output = output
        self.db = db

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise BlobErrors.ParseError("unknown subcommand '{0}'".format(self.subcommand))
        if not self.hbar > 0:
            raise BlobErrors.ParseError("hbar must be positive, got {0}".format(self.hbar))
        if not self.tol > 0:
            raise BlobErrors.ParseError("tol must be positive, got {0}".format(self.tol))
        if self.dt is not None and not self.dt > 0:
            raise BlobErrors.ParseError("dt must be positive, got {0}".format(self.dt))
        if self.planes < 0:
            raise BlobErrors.ParseError("planes must be non-negative, got {0}".format(self.planes))
        if self.every < 1:
            raise BlobErrors.ParseError("every must be at least 1, got {0}".format(self.every))
        if self.subcommand == "history" and self.db is None:
            raise BlobErrors.ParseError("history needs an archive (--db)")
        return True

class BlobCntlr():
    """
    BlobCntlr
    ~~~~~~~~~
    Runs one subcommand: loads the input through the run manager, computes the report and writes it;
    every failure becomes an exit code and a one-line JSON diagnostic on stderr

    Functions
    ~~~~~~~~~
    run(self) - executes the configured subcommand; returns the exit code
    cmdWilliamson(self, doc) - {"M"} -> symplectic diagonalizer, spectrum and residuals
    cmdAdmissible(self, doc) - {"Sigma"} -> every admissibility criterion, the capacity diagnostics and the purity
    cmdDual(self, doc) - {"Q", "center"?, "subspace"?} -> polar and symplectic polar duals, volumes, section/shadow duality
    cmdCapacity(self, doc) - {"Q"} | {"X", "P"} | {"state"} -> capacities
    cmdState(self, doc) - state document -> John ellipsoid, Gaussian correspondence and roundtrip checks
    cmdBeam(self, doc) - beam experiment -> snapshot records followed by a summary record
    cmdHistory(self) - archived runs

    Attributes
    ~~~~~~~~~~
    run_config (RunConfig type); settings of the run
    blob_run_manager (BlobRunManager.BlobRunManager type); manages input, output and the run archive
    """

    def __init__(self, run_config):
        cntlr_logger.info("{0}:Initializing BlobCntlr".format(str(datetime.datetime.now())))
        self.run_config = run_config
        self.blob_run_manager = BlobRunManager.BlobRunManager()

    def run(self):
        config = self.run_config
        digest = None
        report = None
        exit_code = BlobErrors.EXIT_OK
        try:
            try:
                config.validate()
                if config.db is not None and not self.blob_run_manager.initDb(config.db):
                    raise BlobErrors.ParseError("cannot open run archive {0}".format(config.db))
                if config.subcommand == "history":
                    report = self.cmdHistory()
                    self.blob_run_manager.writeReport(report, config.output)
                    return exit_code
                doc, digest = self.blob_run_manager.loadInput(config.input_path)
                if config.subcommand == "beam":
                    records = self.cmdBeam(doc)
                    report = records[-1]
                    self.blob_run_manager.writeStream(records, config.output)
                else:
                    handler = {"williamson": self.cmdWilliamson,
                               "admissible": self.cmdAdmissible,
                               "dual": self.cmdDual,
                               "capacity": self.cmdCapacity,
                               "state": self.cmdState}[config.subcommand]
                    report = handler(doc)
                    self.blob_run_manager.writeReport(report, config.output)
            except BlobErrors.BlobError as err:
                exit_code = err.exit_code
                report = self.failure(err, exit_code)
            except Exception as err:
                cntlr_logger.error("{0}:BlobCntlr.run():{1}".format(str(datetime.datetime.now()), str(err)))
                exit_code = BlobErrors.exitCodeFor(err)
                report = self.failure(err, exit_code)
            if config.subcommand != "history":
                self.blob_run_manager.archiveRun(config.subcommand, digest, exit_code, report)
            return exit_code
        finally:
            self.blob_run_manager.closeDb()

    def failure(self, err, exit_code):
        diagnostic = {"error": type(err).__name__, "message": str(err), "exit_code": exit_code}
        if getattr(err, "residual", None) is not None:
            diagnostic["residual"] = err.residual
        if getattr(err, "last_t", None) is not None:
            diagnostic["last_t"] = err.last_t
        cntlr_logger.warning("{0}:BlobCntlr.run():{1} exit {2}: {3}".format(str(datetime.datetime.now()), self.run_config.subcommand, exit_code, str(err)))
        sys.stderr.write(self.blob_run_manager.exporter.renderStream([diagnostic]))
        return diagnostic

    def cmdWilliamson(self, doc):
        M = BlobParseUtility.parseMatrix(BlobParseUtility.requireKey(doc, "M"), "M")
        form = BlobSymplectic.williamson(M)
        return {"subcommand": "williamson",
                "S": form.S,
                "spectrum": form.spectrum,
                "residual": form.residual,
                "symplectic_residual": form.symplectic_residual}

    def cmdAdmissible(self, doc):
        config = self.run_config
        cov = BlobParseUtility.parseCovariance(doc, config.hbar)
        verdicts = BlobAdmissibility.admissibilityReport(cov, config.planes, config.seed, config.tol)
        report = verdicts.toDict()
        report.update({"subcommand": "admissible",
                       "hbar": config.hbar,
                       "agree": verdicts.agree(),
                       "rs": [{"lhs": lhs, "rhs": rhs, "ok": ok} for lhs, rhs, ok in BlobAdmissibility.rsCheck(cov, config.tol)],
                       "narcowich": BlobAdmissibility.narcowichReport(cov, config.planes, config.seed, config.tol),
                       "purity": BlobAdmissibility.purity(cov, config.tol)})
        return report

    def cmdDual(self, doc):
        config = self.run_config
        E = BlobParseUtility.parseEllipsoid(doc, config.hbar)
        dual = BlobEllipsoid.polarDual(E)
        sdual = BlobEllipsoid.symplecticPolarDual(E)
        scale = max(1.0, float(np.max(np.abs(E.Q))))
        ball = BlobEllipsoid.Ellipsoid(np.eye(E.dim), None, E.hbar)
        report = {"subcommand": "dual",
                  "hbar": E.hbar,
                  "polar_dual": dual.Q,
                  "symplectic_polar_dual": sdual.Q,
                  "involution_residual": float(np.max(np.abs(BlobEllipsoid.symplecticPolarDual(sdual).Q - E.Q))) / scale,
                  "is_quantum_blob": BlobAdmissibility.isQuantumBlob(E, config.tol),
                  "self_dual": bool(np.max(np.abs(sdual.Q - E.Q)) <= config.tol * scale),
                  "volume": BlobEllipsoid.volume(E),
                  "dual_volume": BlobEllipsoid.volume(sdual),
                  "volume_product_ratio": math.exp(BlobEllipsoid.logVolume(E) + BlobEllipsoid.logVolume(sdual) - 2.0 * BlobEllipsoid.logVolume(ball)),
                  "mahler_volume": BlobEllipsoid.mahlerVolume(E)}
        if doc.get("subspace") is not None:
            F = BlobParseUtility.parseSubspace(doc["subspace"])
            section_dual = BlobEllipsoid.polarDual(BlobEllipsoid.intersectSubspace(E, F))
            shadow = BlobEllipsoid.project(dual, F)
            report["subspace"] = {"dim": F.dim,
                                  "dual_of_section": section_dual.Q,
                                  "shadow_of_dual": shadow.Q,
                                  "residual": float(np.max(np.abs(section_dual.Q - shadow.Q))) / max(1.0, float(np.max(np.abs(shadow.Q))))}
        return report

    def cmdCapacity(self, doc):
        config = self.run_config
        if doc.get("state") is not None:
            state = BlobParseUtility.parseState(doc["state"], config.hbar)
            if isinstance(state, BlobLagrangian.GaussianState):
                state = BlobLagrangian.fromGaussian(state)
            report = BlobCapacity.stateCapacities(state).toDict()
            report["source"] = "state"
        elif doc.get("X") is not None:
            X = BlobEllipsoid.Ellipsoid(BlobParseUtility.parseMatrix(doc["X"], "X"), None, config.hbar)
            P = BlobEllipsoid.Ellipsoid(BlobParseUtility.parseMatrix(BlobParseUtility.requireKey(doc, "P"), "P"), None, config.hbar)
            report = BlobCapacity.cmaxProduct(X, P).toDict()
            report["source"] = "product"
        else:
            E = BlobParseUtility.parseEllipsoid(doc, config.hbar)
            report = BlobCapacity.capacityEllipsoid(E).toDict()
            report["source"] = "ellipsoid"
            report["dual"] = BlobCapacity.capacityDual(E).toDict()
            report["product_bound"] = BlobCapacity.capacityProductBound(E)
            if doc.get("orbit"):
                report["orbit"] = BlobCapacity.hzOrbitAction(E, config.dt or DEFAULT_DT).toDict()
        report["subcommand"] = "capacity"
        report["hbar"] = config.hbar
        return report

    def cmdState(self, doc):
        config = self.run_config
        state = BlobParseUtility.parseState(doc, config.hbar)
        report = {"subcommand": "state", "hbar": config.hbar, "input": BlobExportUtility.stateToDict(state)}
        if isinstance(state, BlobLagrangian.GaussianState):
            G = BlobLagrangian.wignerMatrix(state)
            geometric = BlobLagrangian.fromGaussian(state)
            back = BlobLagrangian.toGaussian(geometric)
            sigma_xx, sigma_pp = BlobLagrangian.marginalsGaussian(state)
            john, admissible = BlobLagrangian.johnOfState(geometric)
            report.update({"wigner_matrix": G,
                           "det_wigner_matrix": float(np.linalg.det(G)),
                           "covariance": BlobLagrangian.covarianceOfGaussian(state).Sigma,
                           "marginals": {"sigma_xx": sigma_xx, "sigma_pp": sigma_pp},
                           "geometric": BlobExportUtility.stateToDict(geometric),
                           "john": BlobExportUtility.ellipsoidToDict(john),
                           "john_admissible": admissible,
                           "roundtrip": {"identity": back.isClose(state)}})
            return report
        john, admissible = BlobLagrangian.johnOfState(state)
        report.update({"john": BlobExportUtility.ellipsoidToDict(john),
                       "john_admissible": admissible,
                       "john_capacity": BlobCapacity.capacityEllipsoid(john).value,
                       "capacity": BlobCapacity.stateCapacities(state).toDict()})
        if isinstance(state, BlobLagrangian.MixedGeometricState):
            report.update({"pure": state.isPure(), "purity": state.purity()})
            return report
        gaussian = BlobLagrangian.toGaussian(state)
        back = BlobLagrangian.fromGaussian(gaussian)
        report.update({"pure": True,
                       "purity": 1.0,
                       "gaussian": BlobExportUtility.stateToDict(gaussian),
                       "wigner_matrix": BlobLagrangian.wignerMatrix(gaussian),
                       "roundtrip": {"identity": back.isClose(state),
                                     "gaussian_preserved": BlobLagrangian.toGaussian(back).isClose(gaussian)}})
        return report

    def beamBlob(self, state):
        if isinstance(state, BlobLagrangian.GaussianState):
            return BlobLagrangian.gaussianSymplectic(state)
        return state.canonicalForm()

    def cmdBeam(self, doc):
        config = self.run_config
        experiment = BlobParseUtility.parseBeamExperiment(doc, config.hbar)
        H = experiment["hamiltonian"]
        state = experiment["state"]
        t_end = config.t_end if config.t_end is not None else experiment["tEnd"]
        if t_end is None:
            raise BlobErrors.ParseError("beam needs a final time (tEnd or --t-end)")
        dt = config.dt if config.dt is not None else (experiment["dt"] or DEFAULT_DT)
        z0 = experiment["z0"]
        records = []
        max_drift = 0.0
        final = None
        for snapshot in BlobBeam.iterBeam(H, state, t_end, dt, config.every, z0):
            record = snapshot.toDict()
            record["payload"] = BlobExportUtility.stateToDict(snapshot.payload)
            records.append(record)
            max_drift = max(max_drift, snapshot.drift)
            final = snapshot
        summary = {"subcommand": "beam",
                   "hbar": config.hbar,
                   "t_end": final.t,
                   "dt": dt,
                   "snapshots": len(records),
                   "max_drift": max_drift,
                   "gamma": final.gamma,
                   "payload_invariant": final.payload.isClose(state, INVARIANCE_TOL)}
        if not isinstance(state, BlobLagrangian.GaussianState):
            john0, _ = BlobLagrangian.johnOfState(state)
            john1, admissible = BlobLagrangian.johnOfState(final.payload)
            summary["john_invariant"] = bool(np.max(np.abs(john1.Q - john0.Q)) <= INVARIANCE_TOL * max(1.0, float(np.max(np.abs(john0.Q))))
                                             and np.max(np.abs(john1.center - john0.center)) <= INVARIANCE_TOL)
            summary["john_admissible"] = admissible
        if experiment["transport"] is not None:
            transport = experiment["transport"]
            summary["transport"] = BlobBeam.blobTransportCheck(H, z0 if z0 is not None else state.center, self.beamBlob(state),
                                                               transport["samples"], t_end, dt, config.seed, config.hbar, transport["on_boundary"])
        records.append({"summary": summary})
        return records

    def cmdHistory(self):
        return {"subcommand": "history", "runs": self.blob_run_manager.getRunHistory()}
