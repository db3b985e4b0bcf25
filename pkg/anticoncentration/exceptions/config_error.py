
class ConfigError(Exception):
    def __init__(self, message, diagnostics=None, *args, **kwargs):
        super().__init__(message, *args, **kwargs)
        self._diagnostics = list(diagnostics or [])

    @property
    def diagnostics(self):
        """
        List of violation strings, each prefixed with the offending field path.
        """
        return self._diagnostics
