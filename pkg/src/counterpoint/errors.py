"""Exception hierarchy."""

from __future__ import annotations


class CounterpointError(Exception):
    """Base class for all errors raised by this package."""


class ModulusError(CounterpointError, ValueError):
    """Modulus is not an even integer >= 4."""


class ModulusMismatch(CounterpointError, ValueError):
    """Operands live in different rings Z_n."""


class NotAUnit(CounterpointError, ValueError):
    """A linear part is not invertible mod n."""


class NotStrong(CounterpointError):
    """A dichotomy has no polarity, or more than one.

    ``candidates`` lists every involutive affine map exchanging the two halves;
    it is empty when ``reason == "none"``.
    """

    def __init__(self, reason: str, candidates=()):
        self.reason = reason
        self.candidates = tuple(candidates)
        if reason == "none":
            msg = "no affine involution exchanges X and Y"
        else:
            listed = ", ".join(str(c) for c in self.candidates)
            msg = f"polarity is not unique: {listed}"
        super().__init__(msg)


class DissonantDownbeat(CounterpointError, ValueError):
    """The downbeat interval of a (2-)interval is not a consonance."""


class BoundViolation(CounterpointError):
    """A successor count falls outside [k^2, 2k^2 - k]."""

    def __init__(self, offenders):
        self.offenders = list(offenders)
        super().__init__(f"bound violated at (y, z, count): {self.offenders[:8]}")
