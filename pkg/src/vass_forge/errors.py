"""Exception hierarchy shared by every module."""


class VassForgeError(Exception):
    """Base class for all errors raised by vass_forge."""


class StateMismatch(VassForgeError):
    def __init__(self, expected, actual, step=None):
        self.expected = expected
        self.actual = actual
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"transition starts in {expected!r} but configuration is in {actual!r}{where}")


class NegativeCounter(VassForgeError):
    def __init__(self, counter, value, step=None):
        self.counter = counter
        self.value = value
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"counter {counter} would become {value}{where}")


class BadTransition(VassForgeError):
    pass


class BadMap(VassForgeError):
    pass


class DimensionMismatch(VassForgeError):
    pass


class ProgramSyntaxError(VassForgeError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class UndeclaredCounter(VassForgeError):
    def __init__(self, name, line=None, column=None):
        self.name = name
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{where}counter {name!r} is not declared")


class ContainsForMacro(VassForgeError):
    pass


class ExplosionGuard(VassForgeError):
    pass


class MagnitudeCap(VassForgeError):
    pass


class BadPlan(VassForgeError):
    pass


class SizeGuard(VassForgeError):
    pass


class DimensionTooSmall(VassForgeError):
    pass


class TooManyTests(VassForgeError):
    pass


class ZeroTestFailed(VassForgeError):
    def __init__(self, counter, value):
        self.counter = counter
        self.value = value
        super().__init__(f"zero-test on {counter} failed (value {value})")


class SchemaError(VassForgeError):
    pass
