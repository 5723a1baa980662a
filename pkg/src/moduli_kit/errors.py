"""Exception hierarchy shared by every moduli_kit module."""


class ModuliError(Exception):
    """Base class; ``name`` is what the CLI reports in its error records."""

    exit_code = 1

    @property
    def name(self):
        return type(self).__name__


# genus 0
class CoincidentPoints(ModuliError):
    pass


class DegenerateMap(ModuliError):
    pass


class BadModuliPoint(ModuliError):
    pass


# genus 1
class NotInUpperHalfPlane(ModuliError):
    pass


class DegenerateBasis(ModuliError):
    pass


class ScalarMatrix(ModuliError):
    pass


class NotUnimodular(ModuliError):
    pass


class NonConvergence(ModuliError):
    exit_code = 3


# q-series and periods
class DivergentTail(ModuliError):
    exit_code = 3


class NumericRange(ModuliError):
    exit_code = 3


class NonPositiveInput(ModuliError):
    pass


class OutOfGuaranteedDomain(ModuliError):
    pass


# mapping class groups
class ZeroClass(ModuliError):
    pass


class BadIntersection(ModuliError):
    pass


class BadGenus(ModuliError):
    pass


class NonIntegralGenus(ModuliError):
    pass


class BadOrbitSize(ModuliError):
    pass


class NotSymplectic(ModuliError):
    pass


# levels
class ModulusTooLarge(ModuliError):
    pass


class BadModulus(ModuliError):
    pass


class BoundTooLarge(ModuliError):
    pass
