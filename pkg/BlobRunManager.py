"""
:mod: 'BlobRunManager'
~~~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobRunManager
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Manager used by the controller instance, interfaces with the utility modules (BlobParseUtility, BlobExportUtility, BlobDatabaseUtility)
    :description: Contains the following classes:

        BlobRunManager - run manager used for interfacing with parse, export and database utility modules; uses a conditional import of BlobDatabaseUtility, which prepares the Engine and MetaData objects used by db_util functions only when an archive is requested
"""

try:
    import os, sys, datetime, logging
    run_manager_logger = logging.getLogger()
    # Tiered
    # from . import (BlobErrors, BlobParseUtility, BlobExportUtility)
    # Flat
    import BlobErrors, BlobParseUtility, BlobExportUtility
except Exception as err:
    run_manager_logger.error("{0}:BlobRunManager import error:{1}".format(str(datetime.datetime.now()), str(err)))

class BlobRunManager():
    """
    BlobRunManager
    ~~~~~~~~~~~~~~
    Custom class providing access to utility (Parse, Export and Database) functions, and management of the SQLAlchemy engine through db_util import, as needed

    Functions
    ~~~~~~~~~
    initDb(self, db_uri) - initialize the run archive by importing BlobDatabaseUtility and building its engine
    closeDb(self) - dispose of the archive engine
    loadInput(self, input_path) - parses an input file; returns (document, sha256 digest)
    writeReport(self, report, output) - renders and writes a JSON report
    writeStream(self, records, output) - renders and writes JSON lines
    archiveRun(self, subcommand, input_digest, exit_code, report) - stores a run in the archive, if one is open
    getRunHistory(self) - rows of the archive as dicts

    Attributes
    ~~~~~~~~~~
    exporter (BlobExportUtility.BlobExporter type); report renderer and writer
    db_open (bool type); True while an archive engine is available
    """

    def __init__(self):
        run_manager_logger.info("{0}:Initializing BlobRunManager".format(str(datetime.datetime.now())))
        self.exporter = BlobExportUtility.BlobExporter()
        self.db_open = False

    def initDb(self, db_uri):
        try:
            global db_util
            try:
                # Tiered
                # if "blobstudio.BlobDatabaseUtility" not in sys.modules:
                # Flat
                if "BlobDatabaseUtility" not in sys.modules:
                    # Tiered
                    # from . import BlobDatabaseUtility as db_util
                    # Flat
                    import BlobDatabaseUtility as db_util
                else:
                    db_util = sys.modules["BlobDatabaseUtility"]
                db_util.buildEngine(db_uri)
                db_util.makeRunsTable()
                self.db_open = True
                return True
            except Exception as err:
                run_manager_logger.error("{0}:BlobRunManager.initDb() inner:{1}".format(str(datetime.datetime.now()), str(err)))
                self.db_open = False
                return False
        except Exception as err:
            run_manager_logger.error("{0}:BlobRunManager.initDb() outer:{1}".format(str(datetime.datetime.now()), str(err)))
            return False

    def closeDb(self):
        if self.db_open:
            db_util.disposeEngine()
            self.db_open = False

    def loadInput(self, input_path):
        if input_path is None:
            raise BlobErrors.ParseError("this subcommand needs an input file")
        return BlobParseUtility.loadInput(input_path)

    def writeReport(self, report, output = None):
        return self.exporter.write(self.exporter.renderReport(report), output)

    def writeStream(self, records, output = None):
        return self.exporter.write(self.exporter.renderStream(records), output)

    def archiveRun(self, subcommand, input_digest, exit_code, report):
        try:
            if not self.db_open:
                return None
            plain = BlobExportUtility.jsonable(report)
            return db_util.addRun(subcommand, input_digest, exit_code, plain, self.exporter.renderReport(plain))
        except Exception as err:
            # the archive never changes the outcome of a run
            run_manager_logger.error("{0}:BlobRunManager.archiveRun():{1}".format(str(datetime.datetime.now()), str(err)))
            return None

    def getRunHistory(self):
        try:
            if not self.db_open:
                raise BlobErrors.ParseError("history needs an archive (--db)")
            return db_util.getRuns()
        except BlobErrors.BlobError:
            raise
        except Exception as err:
            run_manager_logger.error("{0}:BlobRunManager.getRunHistory():{1}".format(str(datetime.datetime.now()), str(err)))
            raise BlobErrors.ParseError("cannot read the run archive: {0}".format(err))
