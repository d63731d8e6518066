"""
:mod: 'BlobRunFlat'
~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobRunFlat
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Entry point to run blobstudio with the python 3 interpreter
    :description: To run the program, type the following at a command prompt:

    $ python BlobRunFlat.py <subcommand> [input.json] [--hbar H] [--tol T] [--seed S] [--planes K]
                                                      [--dt DT] [--t-end T] [--every N] [--output PATH] [--db PATH]

    Subcommands: williamson, admissible, dual, capacity, state, beam, history.
    Exit codes: 0 ok, 2 parse error, 3 domain error, 4 numerical failure.
    The SDK_LOG environment variable (DEBUG, INFO, WARNING, ERROR) sets the log level and echoes log records to stderr.
"""

try:
    import argparse, sys, os, datetime, logging
    logger = logging.getLogger()
    # Tiered
    # from . import (BlobCntlr)
    # Flat
    import BlobCntlr
except Exception as err:
    logger.error("{0}:BlobRun import error:{1}".format(str(datetime.datetime.now()), str(err)))

#module-level directories
Global_app_dir = os.path.dirname(os.path.abspath( __file__ ))
Global_log_dir = os.path.join(Global_app_dir, "log") #log files

LOG_LEVELS = {"DEBUG": logging.DEBUG, "INFO": logging.INFO, "WARNING": logging.WARNING, "ERROR": logging.ERROR}

def ensureDirs(target_dirs):
    try:
        for dir in target_dirs:
            if not os.path.exists(dir):
                os.mkdir(dir)
        return True
    except Exception as err:
        logger.error("{0}:BlobRun ensureDirs error:{1}".format(str(datetime.datetime.now()), str(err)))
        return False

def buildParser():
    parser = argparse.ArgumentParser(prog = "blobstudio", description = "Symplectic geometry of quantum blobs, geometric quantum states and Gaussian beams")
    parser.add_argument("subcommand", choices = BlobCntlr.SUBCOMMANDS)
    parser.add_argument("input", nargs = "?", default = None, help = "JSON input file")
    parser.add_argument("--hbar", type = float, default = 1.0)
    parser.add_argument("--tol", type = float, default = 1e-9)
    parser.add_argument("--seed", type = int, default = 0)
    parser.add_argument("--planes", type = int, default = 64, help = "random symplectic planes for tomography")
    parser.add_argument("--dt", type = float, default = None)
    parser.add_argument("--t-end", dest = "t_end", type = float, default = None)
    parser.add_argument("--every", type = int, default = 100, help = "beam snapshot stride in steps")
    parser.add_argument("--output", default = None, help = "report path (default: stdout)")
    parser.add_argument("--db", default = None, help = "sqlite run archive")
    return parser

def environmentSetup():
    global Global_log_dir

    handlers = []
    level_name = os.environ.get("SDK_LOG")
    logger.setLevel(LOG_LEVELS.get((level_name or "WARNING").upper(), logging.WARNING))
    try:
        if ensureDirs([Global_log_dir]):
            logger_fn = os.path.join(Global_log_dir, "blobstudio.log")
            if os.path.isfile(logger_fn):
                logger_fn_size = os.path.getsize(logger_fn)
                if logger_fn_size > 10000:
                    os.remove(logger_fn)
            handlers.append(logging.FileHandler(logger_fn))
    except Exception as err:
        logger.error("{0}:BlobRun environmentSetup error:{1}".format(str(datetime.datetime.now()), str(err)))
    if level_name:
        handlers.append(logging.StreamHandler(sys.stderr))
    for handler in handlers:
        logger.addHandler(handler)
    return handlers

def main(argv = None):
    args = buildParser().parse_args(argv)
    handlers = environmentSetup()
    try:
        logger.info("{0}:Initializing blobstudio {1}".format(str(datetime.datetime.now()), args.subcommand))
        run_config = BlobCntlr.RunConfig(args.subcommand, args.input, args.hbar, args.tol, args.seed, args.planes,
                                         args.dt, args.t_end, args.every, args.output, args.db)
        return_val = BlobCntlr.BlobCntlr(run_config).run()
        logger.info("{0}:Exit_status={1}".format(str(datetime.datetime.now()), return_val))
        return return_val
    finally:
        for handler in handlers:
            logger.removeHandler(handler)
            handler.close()

if __name__ == "__main__":
    sys.exit(main())
