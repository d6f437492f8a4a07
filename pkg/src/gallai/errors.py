"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI maps it to.
"""


class GallaiError(Exception):
    exit_code = 1


class InputError(GallaiError, ValueError):
    """Malformed input, out-of-range arguments, or a violated precondition."""

    exit_code = 3


class NotGallaiError(InputError):
    """The coloring contains a rainbow triangle."""

    def __init__(self, message: str = "coloring contains a rainbow triangle", triangle=None):
        super().__init__(message)
        self.triangle = triangle


class PropertyViolation(GallaiError, AssertionError):
    """A guaranteed inequality failed to hold on a concrete run."""

    exit_code = 2


class ScaleCapExceeded(GallaiError):
    exit_code = 4


class BudgetExhausted(GallaiError):
    exit_code = 5
