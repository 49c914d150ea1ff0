"""Exception types raised across the package.

Class names double as the machine-readable error tags emitted by the CLI,
so they are kept short and stable.
"""

from __future__ import annotations


class CanonFormsError(Exception):
    """Base class for every library error."""

    #: CLI exit status used when this error escapes a subcommand.
    exit_code = 1

    @property
    def name(self) -> str:
        return type(self).__name__

    def details(self) -> dict:
        return {}


class InputError(CanonFormsError, ValueError):
    """Malformed textual input (matrix or polynomial files)."""

    exit_code = 2


class EmptyInput(InputError):
    pass


class RaggedRows(InputError):
    def __init__(self, line: int, expected: int, found: int):
        super().__init__(f"line {line}: expected {expected} entries, found {found}")
        self.line, self.expected, self.found = line, expected, found

    def details(self) -> dict:
        return {"line": self.line, "expected": self.expected, "found": self.found}


class BadEntry(InputError):
    def __init__(self, line: int, column: int, text: str):
        super().__init__(f"line {line}, column {column}: cannot parse {text!r}")
        self.line, self.column, self.text = line, column, text

    def details(self) -> dict:
        return {"line": self.line, "column": self.column, "text": self.text}


class PolynomialSyntax(InputError):
    pass


# numeric

class ZeroPolynomial(CanonFormsError, ValueError):
    pass


class FactorDegreeExceeded(CanonFormsError):
    def __init__(self, degree: int, bound: int):
        super().__init__(f"squarefree component of degree {degree} exceeds bound {bound}")
        self.degree, self.bound = degree, bound

    def details(self) -> dict:
        return {"degree": self.degree, "bound": self.bound}


class IntegerFactorizationExceeded(CanonFormsError):
    def __init__(self, value: int, bound: int):
        super().__init__(f"trial division up to {bound} cannot factor {value}")
        self.value, self.bound = value, bound

    def details(self) -> dict:
        return {"value": str(self.value), "bound": self.bound}


# matrices

class NotSquare(CanonFormsError, ValueError):
    pass


class DimensionMismatch(CanonFormsError, ValueError):
    pass


class BadOrder(CanonFormsError, ValueError):
    pass


class NotSymmetric(CanonFormsError, ValueError):
    pass


class SingularMatrix(CanonFormsError, ValueError):
    pass


class NotAnEigenvalue(CanonFormsError):
    pass


class AdjugateVanishes(CanonFormsError):
    """adj(A - rI) is zero: r is a multiple root and the cofactor recipe gives 0/0."""


# canonical forms

class NonSplitCharPoly(CanonFormsError):
    def __init__(self, factor):
        super().__init__(f"irreducible factor {factor} of degree {factor.degree} over the rationals")
        self.factor = factor

    def details(self) -> dict:
        return {"factor": str(self.factor)}


class NotSimilar(CanonFormsError):
    pass


class EmptyList(CanonFormsError, ValueError):
    pass


# pencils

class SingularPencil(CanonFormsError):
    pass


class SingularPhi(CanonFormsError):
    pass


class SingularPsi(CanonFormsError):
    pass


class PsiNotDefinite(CanonFormsError):
    pass


class MNotDefinite(CanonFormsError):
    pass


# command line

class InputUnreadable(InputError):
    """An input file could not be opened or decoded."""


class NotIntegral(InputError):
    """Integer-domain request on a matrix with fractional entries."""
