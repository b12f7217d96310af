"""Exception hierarchy shared by all modules."""


class SPatchError(ValueError):
    """Base class for every error raised by spatchfill."""


class InvalidPolygonError(SPatchError):
    pass


class OutOfDomainError(SPatchError):
    pass


class ParameterRangeError(SPatchError):
    pass


class ShiftError(SPatchError):
    """A shift was applied at a position holding zero."""


class LabelError(SPatchError):
    pass


class MalformedRibbonError(SPatchError):
    pass


class InconsistentPanelError(SPatchError):
    """Two independent computations of one panel point disagree."""

    def __init__(self, label, first, second, deviation):
        self.label = label
        self.first = first
        self.second = second
        self.deviation = deviation
        super().__init__(
            f"inconsistent panel point at label {label}: "
            f"{list(first)} vs {list(second)} (relative deviation {deviation:.3e})"
        )


class NumericalError(SPatchError):
    pass


class DegenerateNormalError(SPatchError):
    pass


class ParseError(SPatchError):
    pass


class StructuralError(SPatchError):
    pass
