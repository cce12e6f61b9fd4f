"""Exception types shared across the pipeline.

``InputError`` covers bad user-supplied data (CLI exit code 1);
``InvariantError`` flags an internal contract breach (exit code 2).
"""


class InputError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass
