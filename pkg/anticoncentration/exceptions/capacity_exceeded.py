
class CapacityExceeded(Exception):
    def __init__(self, message, bound=None, *args, **kwargs):
        super().__init__(message, *args, **kwargs)
        self._bound = bound

    @property
    def bound(self):
        """
        The configured limit that was violated.
        """
        return self._bound
