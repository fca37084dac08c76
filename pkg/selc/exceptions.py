class EngineError(Exception):
    """Base class for every failure raised by the engine."""


class InvalidPartitionError(EngineError, ValueError):
    pass


class WeightMismatchError(EngineError, ValueError):
    def __init__(self, left, right, what='weights'):
        self.left = left
        self.right = right
        super().__init__(f'{what} differ: {left} != {right}')


class VirtualCharacterError(EngineError):
    """A multiplicity came out negative or fractional."""

    def __init__(self, witness, value, message='virtual character'):
        self.witness = witness
        self.value = value
        super().__init__(f'{message}: multiplicity {value} at {witness}')


class NotInducedError(EngineError):
    """H0 subtraction went negative, so the module is not an M-image."""

    def __init__(self, degree, witness, value):
        self.degree = degree
        self.witness = witness
        self.value = value
        super().__init__(
            f'not an induced module: multiplicity {value} at degree {degree}, {witness}'
        )


class VanishingBoundError(EngineError):
    """Generators up to the vanishing bound do not reproduce the module above it."""

    def __init__(self, degree, witness, vanish_above):
        self.degree = degree
        self.witness = witness
        self.vanish_above = vanish_above
        super().__init__(
            f'vanish_above={vanish_above} too small: degree {degree} differs at {witness}'
        )


class UndefinedDegreeError(EngineError, KeyError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f'module is not defined in degree {degree}')

    def __str__(self):
        return self.args[0]


class CacheCorruptionError(EngineError):
    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__(f'corrupt cache entry {path}: {reason}')


class BudgetExceededError(EngineError):
    def __init__(self, size, budget):
        self.size = size
        self.budget = budget
        super().__init__(
            f'oracle basis of size {size} exceeds budget {budget}; use Tier 2 (--tier plethysm)'
        )


class CalibrationError(EngineError):
    pass


class TierDisagreementError(EngineError):
    pass


class GeneratorBandError(EngineError):
    pass


class ReproductionError(EngineError):
    def __init__(self, example, mismatches):
        self.example = example
        self.mismatches = list(mismatches)
        lines = '\n'.join(f'  {cell}' for cell in self.mismatches)
        super().__init__(f'{example}: {len(self.mismatches)} mismatched cell(s)\n{lines}')
