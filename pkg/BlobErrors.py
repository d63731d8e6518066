"""
:mod: 'BlobErrors'
~~~~~~~~~~~~~~~~~~

..  py:module:: BlobErrors
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Exception classes raised by the blobstudio modules, each carrying the process exit code used by the controller
    :description: Contains the following classes:

        BlobError - root of every library error
        ParseError - malformed input or run configuration (exit code 2)
        DomainError - input outside an operation's domain (exit code 3)
        DimensionError, NotSymmetricError, NotPositiveDefiniteError, RankError, IsotropyError,
        TransversalityError, UnsupportedError, InvalidWignerError, ContainmentError - DomainError subclasses
        NumericalError - a computation ran but failed its residual checks (exit code 4)
        BlowUpError - non-finite values during time integration (exit code 4)

                  Contains the following functions:

        exitCodeFor - maps any exception to a process exit code
"""

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NUMERICAL = 4

class BlobError(Exception):
    """
    BlobError
    ~~~~~~~~~
    Root class of blobstudio errors

    Attributes
    ~~~~~~~~~~
    exit_code (int type); process exit code reported by BlobCntlr
    """

    exit_code = EXIT_DOMAIN

class ParseError(BlobError):
    exit_code = EXIT_PARSE

class DomainError(BlobError, ValueError):
    exit_code = EXIT_DOMAIN

class DimensionError(DomainError):
    pass

class NotSymmetricError(DomainError):
    pass

class NotPositiveDefiniteError(DomainError):
    pass

class RankError(DomainError):
    pass

class IsotropyError(DomainError):
    pass

class TransversalityError(DomainError):
    pass

class UnsupportedError(DomainError):
    pass

class InvalidWignerError(DomainError):
    pass

class ContainmentError(DomainError):
    pass

class NumericalError(BlobError, ArithmeticError):
    """
    NumericalError
    ~~~~~~~~~~~~~~
    Raised when a result fails its own residual check

    Attributes
    ~~~~~~~~~~
    residual (float type); the offending residual, None when not applicable
    """

    exit_code = EXIT_NUMERICAL

    def __init__(self, message, residual = None):
        BlobError.__init__(self, message)
        self.residual = residual

class BlowUpError(NumericalError):
    """
    BlowUpError
    ~~~~~~~~~~~
    Raised by the integrators when the state stops being finite

    Attributes
    ~~~~~~~~~~
    last_t (float type); last time at which the state was finite
    """

    def __init__(self, message, last_t):
        NumericalError.__init__(self, message)
        self.last_t = last_t

def exitCodeFor(err):
    if isinstance(err, BlobError):
        return err.exit_code
    return EXIT_NUMERICAL
