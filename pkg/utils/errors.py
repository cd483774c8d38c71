"""
Exception hierarchy shared by the library and the CLI

Every error carries the process exit code the CLI reports for it.
"""


class WeilKitError(Exception):
    """Base class for all toolkit errors"""

    exit_code = 1

    @property
    def name(self) -> str:
        return type(self).__name__


# ===== INPUT (exit 2) =====

class InputError(WeilKitError):
    exit_code = 2


class ParseError(InputError):
    """Malformed lattice or word document"""


class FormatError(InputError):
    """Malformed expansion document"""


class UsageError(InputError):
    """Bad command-line arguments"""


# ===== MATH DOMAIN (exit 3) =====

class MathDomainError(WeilKitError):
    exit_code = 3


class NotEven(MathDomainError):
    pass


class Degenerate(MathDomainError):
    pass


class WrongCase(MathDomainError):
    pass


class SizeMismatch(MathDomainError):
    pass


class NotUnimodular(MathDomainError):
    pass


class IndefiniteLattice(MathDomainError):
    pass


class NotPosDef(MathDomainError):
    pass


class NotPosDefSpan(MathDomainError):
    pass


class DegenerateForm(MathDomainError):
    pass


class NotIsotropic(MathDomainError):
    pass


class BadDiscriminant(MathDomainError):
    pass


class NotInHalfSpace(MathDomainError):
    pass


class BranchAmbiguity(MathDomainError):
    pass


class CyclotomicOrderExceeded(MathDomainError):
    """Overflow policy: cyclotomic order above the configured bound"""


class UnsupportedField(MathDomainError):
    pass


# ===== VERIFICATION (exit 4) =====

class VerificationError(WeilKitError):
    exit_code = 4


class NoConsistentIndex(VerificationError):
    """No 8th root of unity reconciles the Hermitian and trace-form kernels"""


class VerificationFailure(VerificationError):
    pass
