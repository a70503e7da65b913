"""
Error bases shared by all services
"""

class DomainError(ValueError):
    """An input violates a documented precondition"""
    pass

class ConvergenceError(RuntimeError):
    """An iterative or truncated computation did not reach its tolerance"""
    pass

class ConsistencyError(RuntimeError):
    """A computed object violates an invariant it must satisfy by construction"""
    pass
