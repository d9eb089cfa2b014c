"""Exception types raised across the toolkit."""


class EntropyBenchError(Exception):
    """Base class for all toolkit errors."""


class EmptyInput(EntropyBenchError, ValueError):
    pass


class UnknownSymbol(EntropyBenchError, KeyError):
    def __init__(self, symbol):
        super().__init__(symbol)
        self.symbol = symbol

    def __str__(self):
        return f"symbol {self.symbol!r} is not in the model"


class OutOfBits(EntropyBenchError, EOFError):
    pass


class TruncatedStream(EntropyBenchError, ValueError):
    pass


class TrailingGarbage(EntropyBenchError, ValueError):
    pass


class ShapeError(EntropyBenchError, ValueError):
    pass


class BadContainer(EntropyBenchError, ValueError):
    pass


class UnsupportedFormat(EntropyBenchError, ValueError):
    pass


class UnsupportedDepth(EntropyBenchError, ValueError):
    pass


class TruncatedFile(EntropyBenchError, ValueError):
    pass


class BadConfig(EntropyBenchError, ValueError):
    pass


class DivisionByZero(EntropyBenchError, ZeroDivisionError):
    pass


class IoError(EntropyBenchError, OSError):
    pass


class InvalidCodeword(EntropyBenchError, ValueError):
    pass
