
class NumericalFailure(Exception):
    def __init__(self, message, diagnostics=None, *args, **kwargs):
        super().__init__(message, *args, **kwargs)
        self._diagnostics = dict(diagnostics or {})

    @property
    def diagnostics(self):
        return self._diagnostics
