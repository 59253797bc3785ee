"""Exception hierarchy shared by all witchmoduli modules."""


class WitchModuliError(Exception):
    """Base class for all domain errors raised by this package."""


# -- rooted ribbon trees ----------------------------------------------------

class TreeError(WitchModuliError):
    pass


class CycleDetected(TreeError):
    pass


class MultipleRoots(TreeError):
    pass


class UnorderedInList(TreeError):
    """Malformed incoming-neighbor data (duplicates, unknown ids, ...)."""


class RootIsLeaf(TreeError):
    """A root with no incoming neighbors would be a leaf, which is disallowed."""


class VertexNotFound(WitchModuliError):
    pass


# -- tree-pairs -------------------------------------------------------------

class TreePairError(WitchModuliError):
    pass


class SeamTreeUnstable(TreePairError):
    pass


class BubbleStabilityViolated(TreePairError):
    pass


class AlternationViolated(TreePairError):
    pass


class CoherenceViolated(TreePairError):
    pass


class TypeVectorMismatch(TreePairError):
    pass


class PairKindUnsupported(TreePairError):
    """Contiguity is only defined for pairs containing a component vertex."""


# -- strata -----------------------------------------------------------------

class ScaleLimitExceeded(WitchModuliError):
    pass


# -- moduli points ----------------------------------------------------------

class ModuliError(WitchModuliError):
    pass


class ProjectionMismatch(ModuliError):
    """A G2 tuple does not project onto the required G1 tuple."""


# -- one-parameter families and limits --------------------------------------

class FamilyError(WitchModuliError):
    pass


class DegenerateFamily(FamilyError):
    pass


class CoincidentPoint(FamilyError):
    """The inserted point family coincides identically with a marked point."""


class ClassificationMismatch(FamilyError):
    pass


class SurjectionNotFound(WitchModuliError):
    pass


class SurjectionMismatch(WitchModuliError):
    pass
