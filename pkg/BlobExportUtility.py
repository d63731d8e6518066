"""
:mod: 'BlobExportUtility'
~~~~~~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobExportUtility
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Exporter class for writing reports and snapshot streams as deterministic JSON
    :description: Contains the following classes:

        BlobExporter - renders reports (JSON) and beam snapshot streams (JSON lines) and writes them atomically

                  Contains the following functions:

        jsonable - converts numpy values and nested containers into plain JSON types
        ellipsoidToDict - report form of an Ellipsoid
        stateToDict - report form of a geometric, mixed geometric or Gaussian state
"""

try:
    import json, math, tempfile, sys, os, datetime, logging
    export_utility_logger = logging.getLogger()
    import numpy as np
    # Tiered
    # from . import (BlobLagrangian)
    # Flat
    import BlobLagrangian
except Exception as err:
    export_utility_logger.error("{0}:BlobExportUtility import error:{1}".format(str(datetime.datetime.now()), str(err)))

def jsonable(value):
    """Non-finite floats become None so that every report is valid JSON."""
    if isinstance(value, dict):
        return {str(key): jsonable(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(val) for val in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value

def ellipsoidToDict(E):
    return {"Q": E.Q, "center": E.center, "hbar": E.hbar}

def stateToDict(state):
    if isinstance(state, BlobLagrangian.GaussianState):
        return {"kind": "gaussian", "A": state.A, "B": state.B, "center": state.center, "hbar": state.hbar}
    out = {"kind": "geometric",
           "ell": state.frame.ell.basis.T,
           "ellPrime": state.frame.ellPrime.basis.T,
           "shapeX": state.shapeX,
           "center": state.center,
           "hbar": state.hbar}
    if isinstance(state, BlobLagrangian.MixedGeometricState):
        out["kind"] = "mixed"
        out["shapeP"] = state.shapeP
    return out

class BlobExporter():
    """
    BlobExporter
    ~~~~~~~~~~~~
    Renders reports fully in memory before anything is written; files are replaced atomically

    Functions
    ~~~~~~~~~
    renderReport(self, report) - one JSON document with sorted keys and a trailing newline
    renderStream(self, records) - one JSON document per line
    write(self, text, output) - writes to stdout when output is None, else to a temporary file renamed onto output

    Attributes
    ~~~~~~~~~~
    indent (int type); indentation of rendered reports
    """

    def __init__(self, indent = 2):
        export_utility_logger.info("{0}:Initializing BlobExporter".format(str(datetime.datetime.now())))
        self.indent = indent

    def renderReport(self, report):
        return json.dumps(jsonable(report), sort_keys = True, indent = self.indent, allow_nan = False) + "\n"

    def renderStream(self, records):
        return "".join(json.dumps(jsonable(record), sort_keys = True, allow_nan = False) + "\n" for record in records)

    def write(self, text, output = None):
        try:
            if output is None:
                sys.stdout.write(text)
                sys.stdout.flush()
                return True
            out_dir = os.path.dirname(os.path.abspath(output))
            fd, tmp_path = tempfile.mkstemp(prefix = ".blob-", suffix = ".tmp", dir = out_dir)
            try:
                with os.fdopen(fd, "w", encoding = "utf-8", newline = "\n") as fh:
                    fh.write(text)
                os.replace(tmp_path, output)
            except Exception:
                if os.path.exists(tmp_path):
                    os.remove(tmp_path)
                raise
            return True
        except Exception as err:
            export_utility_logger.error("{0}:BlobExporter.write():{1}".format(str(datetime.datetime.now()), str(err)))
            raise
