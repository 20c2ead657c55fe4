"""evoclaws base exceptions"""


class EvoclawsException(Exception):
    """Base class for every error raised by evoclaws"""


class ExpressionError(EvoclawsException):
    """Expression could not be read or evaluated"""


class ParseError(ExpressionError):
    """Source text does not conform to the expression grammar"""
    def __init__(self, message: str, position: int = 0):
        super().__init__('%s (at position %s)' % (message, position))
        self.position = position


class UndeclaredIdentifier(ParseError):
    """Identifier is neither a jet variable nor a declared symbol"""


class NegativeOrder(ParseError):
    """Derivative token u[k] with k < 0"""


class EvaluationError(ExpressionError):
    """Numeric evaluation failed"""


class DivisionByZero(EvaluationError):
    """Denominator vanishes at the evaluation point"""


class UnassignedSymbol(EvaluationError):
    """Evaluation point misses a symbol occurring in the expression"""


class DomainError(EvaluationError):
    """Elementary function evaluated outside its real domain"""


class JetError(EvoclawsException):
    """Jet-space operation failed"""


class DegenerateEquation(JetError):
    """Right-hand side has order above two or does not depend on u_xx"""


class NotADivergence(JetError):
    """Expression is not a total x-derivative"""


class UnsupportedIntegrand(JetError):
    """Quadrature leaves the expression class"""


class ClawsError(EvoclawsException):
    """Conservation law computation failed"""


class NotConserved(ClawsError):
    """Pair (F, G) does not satisfy the on-shell divergence condition"""


class SplitFailure(ClawsError):
    """Condition is not polynomial in a splitting variable"""


class ReductionFailure(ClawsError):
    """Density cannot be peeled down to first order"""


class ClassifyError(EvoclawsException):
    """Transformation or normalisation failed"""


class DegenerateTransformation(ClassifyError):
    """Nondegeneracy, rank or contact condition fails"""


class InversionFailure(ClassifyError):
    """Transformed expression cannot be written in the new chart"""


class TrivialInput(ClassifyError):
    """Conserved vector is trivial"""


class DependentLaws(ClassifyError):
    """Conservation laws of a pair are linearly dependent"""


class NotCharacteristicOne(ClassifyError):
    """First law of a pair must have characteristic 1"""


class NoDivergenceForm(ClassifyError):
    """Equation has no divergence form in the current chart"""


class VerifyError(EvoclawsException):
    """Certificate could not be issued"""
    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class Refuted(VerifyError):
    """Residual is nonzero at a witness point"""


class Mismatch(VerifyError):
    """Claimed characteristic or transformed equation differs"""


class CatalogError(EvoclawsException):
    """Catalog lookup failed"""


class UnknownEntry(CatalogError):
    """No catalog entry with this name"""


class BadBinding(CatalogError):
    """Parameter binding does not type-check"""
