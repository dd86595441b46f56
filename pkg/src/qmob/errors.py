"""Exception hierarchy.

Every library error carries a stable ``code`` string; the command-line front
end reports it in its JSON output.
"""


class QmobError(Exception):
    code = "error"


class DomainError(QmobError, ValueError):
    code = "domain"


class NotPrime(DomainError):
    code = "not_prime"


class AmbientMismatch(QmobError, ValueError):
    code = "ambient_mismatch"


class CapExceeded(QmobError):
    code = "cap_exceeded"

    def __init__(self, count_so_far, cap=None):
        self.count_so_far = count_so_far
        self.cap = cap
        msg = f"enumeration exceeded cap ({count_so_far} elements found"
        msg += f", cap {cap})" if cap is not None else ")"
        super().__init__(msg)


class NotComparable(QmobError, ValueError):
    code = "not_comparable"


class NotBounded(QmobError, ValueError):
    code = "not_bounded"


class InvalidPoset(QmobError, ValueError):
    code = "invalid_poset"


class InvalidQuiver(QmobError, ValueError):
    code = "invalid_quiver"


class ShapeError(QmobError, ValueError):
    code = "shape"


class NotASubrep(QmobError, ValueError):
    code = "not_a_subrep"


class NotSinking(QmobError, ValueError):
    code = "not_sinking"


class Incompatible(QmobError, ValueError):
    code = "incompatible"


class InfiniteModeNonThin(QmobError):
    code = "infinite_mode_non_thin"


class InfiniteLattice(QmobError):
    code = "infinite_lattice"


class NotApplicable(QmobError):
    code = "not_applicable"


class QrepSyntaxError(QmobError):
    """Malformed ``.qrep`` input, with 1-based line and column."""

    code = "syntax"

    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"line {line}, col {col}: {message}")


class ValidationError(QmobError):
    code = "validation"

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
