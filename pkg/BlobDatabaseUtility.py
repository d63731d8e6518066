"""
:mod: 'BlobDatabaseUtility'
~~~~~~~~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobDatabaseUtility
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: SQLAlchemy engine, metadata, and utility functions for the sqlite run archive
    :description: Contains the following functions:

        buildEngine - creates the module-level Engine and MetaData for a given sqlite file
        disposeEngine - releases the Engine
        makeRunsTable - creates table 'runs' - columns = run_id, subcommand, input_digest, exit_code, report, report_json
        getRunsTable - the 'runs' Table object, reflected from the database when necessary
        tableExists - determines whether a given table name exists in the database
        addRun - archives one run; returns its run_id
        getRuns - returns list of dicts, one per archived run [{run_id, subcommand, input_digest, exit_code}]
        getReport - returns the unpickled report dict of a given run, or None
"""

try:
    import sys, os, datetime, logging
    database_utility_logger = logging.getLogger()
    from sqlalchemy import (create_engine, inspect, select, Table, Column, Integer, String, Text, PickleType)
    from sqlalchemy.schema import MetaData
    from sqlalchemy.pool import NullPool
except Exception as err:
    database_utility_logger.error("{0}:BlobDatabaseUtility import error:{1}".format(str(datetime.datetime.now()), str(err)))

Engine = None
Global_metadata = None

def buildEngine(db_uri):
    try:
        global Engine
        global Global_metadata
        Engine = create_engine("sqlite:///{0}".format(db_uri), poolclass = NullPool, echo = False)
        Global_metadata = MetaData()
    except Exception as err:
        database_utility_logger.error("{0}:buildEngine():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def disposeEngine():
    global Engine
    if Engine is not None:
        Engine.dispose()
    Engine = None

def makeRunsTable():
    try:
        runs = Table(
            "runs",
            Global_metadata,
            Column("run_id", Integer, primary_key = True, autoincrement = True),
            Column("subcommand", String(32)),
            Column("input_digest", String(64), nullable = True),
            Column("exit_code", Integer),
            Column("report", PickleType, nullable = True),
            Column("report_json", Text, nullable = True),
            keep_existing = True
        )
        Global_metadata.create_all(Engine)
        return runs
    except Exception as err:
        database_utility_logger.error("{0}:makeRunsTable():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def getRunsTable():
    if "runs" in Global_metadata.tables:
        return Global_metadata.tables["runs"]
    return makeRunsTable()

def tableExists(target_table_name):
    try:
        return inspect(Engine).has_table(target_table_name)
    except Exception as err:
        database_utility_logger.error("{0}:tableExists():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def addRun(subcommand, input_digest, exit_code, report, report_json):
    try:
        runs = getRunsTable()
        with Engine.begin() as connection:
            result = connection.execute(runs.insert().values(subcommand = subcommand,
                                                             input_digest = input_digest,
                                                             exit_code = exit_code,
                                                             report = report,
                                                             report_json = report_json))
            return int(result.inserted_primary_key[0])
    except Exception as err:
        database_utility_logger.error("{0}:addRun():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def getRuns():
    try:
        runs = getRunsTable()
        select_stmt = select(runs.c.run_id, runs.c.subcommand, runs.c.input_digest, runs.c.exit_code).order_by(runs.c.run_id)
        with Engine.connect() as connection:
            return [dict(row._mapping) for row in connection.execute(select_stmt)]
    except Exception as err:
        database_utility_logger.error("{0}:getRuns():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def getReport(run_id):
    try:
        runs = getRunsTable()
        select_stmt = select(runs.c.report).where(runs.c.run_id == int(run_id))
        with Engine.connect() as connection:
            return connection.execute(select_stmt).scalar_one_or_none()
    except Exception as err:
        database_utility_logger.error("{0}:getReport():{1}".format(str(datetime.datetime.now()), str(err)))
        raise
