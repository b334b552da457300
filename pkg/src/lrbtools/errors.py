"""Exception hierarchy.

Every error carries a short machine-readable ``reason`` and an optional
``witness`` (a tuple of element indices, a pair of covectors, ...), so the CLI
can serialize failures without parsing messages.
"""


class LrbError(Exception):
    reason = "error"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self):
        return {"error": type(self).__name__, "reason": self.reason,
                "message": str(self), "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if obj is None or isinstance(obj, (str, int, float, bool)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(x) for x in items]
    return str(obj)


class InputError(LrbError):
    """Malformed or mathematically invalid input."""
    reason = "invalid-input"


class ResourceCap(LrbError):
    """A configured size cap or budget was exceeded."""
    reason = "resource-cap"


class VerificationFailed(LrbError):
    reason = "verification-failed"


# monoid axioms
class NotSquare(InputError):
    reason = "not-square"


class BadIdentity(InputError):
    reason = "bad-identity"


class NotIdempotent(InputError):
    reason = "not-idempotent"


class NotLeftRegular(InputError):
    reason = "not-left-regular"


class NotAssociative(InputError):
    reason = "not-associative"


# order / lattice
class NotComparable(InputError):
    reason = "not-comparable"


class NotStrictlyComparable(NotComparable):
    reason = "not-strictly-comparable"


class TrivialMonoid(InputError):
    reason = "trivial-monoid"


class NotALattice(InputError):
    reason = "not-a-lattice"


class NotGenerating(InputError):
    reason = "not-generating"


class NotRightHereditary(InputError):
    reason = "not-right-hereditary"


class NotGeometric(InputError):
    reason = "not-geometric"


class MeetHypothesisFails(InputError):
    reason = "meet-hypothesis-fails"


# constructions
class NotClosed(InputError):
    reason = "not-closed"


class MissingIdentity(InputError):
    reason = "missing-identity"


class BadOrder(InputError):
    reason = "bad-order"


class NotAcyclic(InputError):
    reason = "not-acyclic"


# caps
class TooLarge(ResourceCap):
    reason = "too-large"


class AlphabetTooLarge(TooLarge):
    reason = "alphabet-too-large"


class TooManyHyperplanes(TooLarge):
    reason = "too-many-hyperplanes"


class TooManyCliques(TooLarge):
    reason = "too-many-cliques"


class TooManyVertices(TooLarge):
    reason = "too-many-vertices"
