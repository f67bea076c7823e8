class SuperpotentialError(ValueError):
    """The intersection W_ℓ is not one-dimensional."""


class CharacteristicError(ValueError):
    """An operation needs to divide by an integer the field characteristic kills."""


class GorensteinError(ValueError):
    """(m, ℓ) admits no consistent global dimension."""


class NakayamaError(ValueError):
    """The linear system characterising a Nakayama automorphism is degenerate."""


class NotAutomorphismError(ValueError):
    """A map does not preserve the potential or the relations."""


class FrobeniusError(ValueError):
    """A Frobenius pairing Gram matrix is singular."""


class ConsistencyError(RuntimeError):
    """Two routes that must agree on well-formed input disagree."""
