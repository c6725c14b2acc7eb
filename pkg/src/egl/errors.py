"""Exception hierarchy shared by all egl modules."""


class EGLError(Exception):
    """Base class for every error raised by egl."""


class PresentationSyntaxError(EGLError):
    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class DuplicateGenerator(EGLError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"generator {symbol!r} declared twice")


class UndeclaredSymbol(EGLError):
    def __init__(self, symbol, line=None):
        self.symbol = symbol
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"symbol {symbol!r} is not a declared generator{where}")


class CosetLimitExceeded(EGLError):
    def __init__(self, max_cosets):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")


class OrderMismatch(EGLError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"order hint {expected} but enumeration gave {got}")


class OrderLimitExceeded(EGLError):
    def __init__(self, order, cap):
        self.order = order
        self.cap = cap
        super().__init__(f"group of order {order} exceeds the element cap {cap}")


class NotNormal(EGLError):
    """Raised by quotient(); ``witness`` is (g, n) with g^-1 n g outside N."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"subgroup is not normal: conjugation witness {witness}")


class NotPGroup(EGLError):
    def __init__(self, order, p=None):
        self.order = order
        self.p = p
        super().__init__(f"order {order} is not a power of {p if p else 'a prime'}")


class PreconditionViolated(EGLError):
    pass


class BudgetExceeded(EGLError):
    def __init__(self, nodes):
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes")


class UnknownKey(EGLError, KeyError):
    def __init__(self, key):
        self.key = key
        super().__init__(f"no catalog entry named {key!r}")

    def __str__(self):
        return Exception.__str__(self)


class InvalidMatrix(EGLError):
    pass
