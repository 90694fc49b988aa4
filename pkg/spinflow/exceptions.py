class SpinflowException(Exception):
    pass


class SpinflowRuntimeError(SpinflowException):
    pass


class SpinflowUsageError(SpinflowRuntimeError):
    pass


class SpinflowTypeError(TypeError, SpinflowRuntimeError):
    pass


class SpinflowSupportError(SpinflowUsageError):
    pass


class SpinflowHermiticityError(SpinflowRuntimeError):
    pass


class SpinflowGapError(SpinflowRuntimeError):
    pass


class SpinflowConvergenceError(SpinflowRuntimeError):
    pass


class SpinflowConsistencyError(SpinflowRuntimeError):

    def __init__(self, msg, residual=None):
        super(SpinflowConsistencyError, self).__init__(msg)
        self.residual = residual


class SpinflowResourceError(SpinflowRuntimeError):

    def __init__(self, msg, dimension=None, cap=None):
        super(SpinflowResourceError, self).__init__(msg)
        self.dimension = dimension
        self.cap = cap
