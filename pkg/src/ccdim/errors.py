"""Exception hierarchy."""


class CCDimError(Exception):
    """Base class for every error raised by ccdim."""


class ComplexError(CCDimError, ValueError):
    """The vertex family does not describe a finite CAT(0) cube complex."""


class IdOutOfRange(ComplexError):
    def __init__(self, hyperplane, count):
        super().__init__(f"hyperplane id {hyperplane} is not in [0, {count})")
        self.hyperplane = hyperplane


class MissingBasepoint(ComplexError):
    def __init__(self):
        super().__init__("the empty vertex (basepoint) is missing")


class DuplicateVertex(ComplexError):
    def __init__(self, vertex):
        super().__init__(f"vertex {sorted(vertex)} listed more than once")
        self.vertex = vertex


class ImproperHyperplane(ComplexError):
    def __init__(self, hyperplane):
        super().__init__(f"hyperplane {hyperplane} has an empty positive side")
        self.hyperplane = hyperplane


class NotMedianClosed(ComplexError):
    def __init__(self, x, y, z):
        super().__init__(
            f"majority of {sorted(x)}, {sorted(y)}, {sorted(z)} is not a vertex"
        )
        self.witness = (x, y, z)


class Disconnected(ComplexError):
    def __init__(self, unreached):
        super().__init__(f"{unreached} vertices are unreachable from the basepoint")
        self.unreached = unreached


class AmbiguousGate(CCDimError):
    def __init__(self, hyperplane, candidates):
        super().__init__(
            f"hyperplane {hyperplane} has {len(candidates)} closest positive vertices"
        )
        self.hyperplane = hyperplane
        self.candidates = candidates


class NonTermination(CCDimError, RuntimeError):
    """An iteration that must strictly shrink failed to do so."""


class SupportGrew(CCDimError, RuntimeError):
    """An ordered composition step enlarged the support it should have reduced."""


class NotIntervalic(CCDimError, ValueError):
    pass


class PointNotInComplex(CCDimError, ValueError):
    pass


class NotAPath(CCDimError, ValueError):
    pass


class FormatError(CCDimError, ValueError):
    """Malformed complex or point file."""
