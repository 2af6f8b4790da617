"""Exception hierarchy shared by the whole package.

The CLI maps these onto exit codes: ParseError -> 1, AxiomError -> 2,
HypothesisError -> 3.
"""


class DgconfError(Exception):
    """Base class for all package errors."""


class ParseError(DgconfError):
    """Malformed input file, polynomial, or command line."""


class AxiomError(DgconfError):
    """An algebraic axiom (d^2=0, Leibniz, commutativity, duality, ...) fails."""


class HypothesisError(DgconfError):
    """A theorem hypothesis fails: unbalanced morphism, degree window,
    connectivity bound, non-surjective model, and the like."""


class InternalCheckError(DgconfError):
    """A consistency assertion the constructions themselves guarantee has
    failed; signals a sign-convention or implementation bug, not bad input."""
