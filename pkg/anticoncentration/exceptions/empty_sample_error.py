
class EmptySampleError(Exception):
    pass
