"""Exception hierarchy.

Every error maps onto one CLI exit status through ``exit_code``.
"""


class CMError(Exception):
    exit_code = 1


class PreconditionError(CMError, ValueError):
    exit_code = 2


class InvalidArgument(PreconditionError):
    pass


class InvalidDiscriminant(PreconditionError):
    pass


class ZeroArgument(PreconditionError):
    pass


class NonresidueError(PreconditionError):
    def __init__(self, a, p, symbol=-1):
        super().__init__(f"{a} is not a square mod {p}")
        self.a = a
        self.p = p
        self.symbol = symbol


class OddIndexError(PreconditionError):
    """The form's leading coefficient (ideal index) must be odd."""


class UnitGroupError(PreconditionError):
    """Discriminants -3 and -4 have units beyond +-1."""


class ModeError(PreconditionError):
    pass


class ResourceError(PreconditionError):
    pass


class SupersingularError(PreconditionError):
    def __init__(self, p, msg=None):
        super().__init__(msg or f"supersingular reduction at p={p}; |E(F_p)| = p+1")
        self.p = p
        self.count = p + 1


class NoSolution(CMError):
    exit_code = 3


class InertPrime(NoSolution):
    pass


class RamifiedPrime(NoSolution):
    pass


class NonPrincipal(NoSolution):
    """p splits but is represented only by non-principal forms."""


class NoRoot(NoSolution):
    pass


class Infeasible(NoSolution):
    pass


class Inconsistency(CMError):
    exit_code = 4
