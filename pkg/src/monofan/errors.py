class MonofanError(Exception):
    pass


class NoPositiveGrading(MonofanError, ValueError):
    pass


class NotStronglyConvex(MonofanError, ValueError):
    pass


class DegeneratePolytope(MonofanError, ValueError):
    pass


class NotAMember(MonofanError, ValueError):
    pass


class InvalidPrime(MonofanError, ValueError):
    pass


class InvalidFan(MonofanError, ValueError):
    pass


class NotIrreducible(MonofanError, ValueError):
    pass


class NotAFan(MonofanError, ValueError):
    pass


class IncompatibleIdentification(MonofanError, ValueError):
    pass


class IllFormedMorphism(MonofanError, ValueError):
    pass


class NonAffineOverlap(MonofanError):
    pass


class NoOverlap(MonofanError, KeyError):
    pass


class PreconditionsNotMet(MonofanError):
    pass


class DocumentError(MonofanError, ValueError):
    """Malformed or schema-invalid input document."""
