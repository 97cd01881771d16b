class SchrolabException(Exception):

    @property
    def msg(self):
        return self.args[0]

    @msg.setter
    def msg(self, msg):
        self.args = (msg,) + self.args[1:]


class SchrolabError(SchrolabException):
    pass


class SchrolabUsageError(SchrolabError):
    pass


class SchrolabParameterError(SchrolabUsageError):
    pass


class SchrolabDomainError(SchrolabUsageError):
    pass


class SchrolabAccuracyError(SchrolabError):
    pass


class SchrolabRangeError(SchrolabError):
    """
    Raised when a scan window contains no crossing of the level of
    interest, which signals a parameter regime outside the one studied
    """


class SchrolabNumericError(SchrolabError):

    def __init__(self, msg, diagnostics=None):
        super(SchrolabNumericError, self).__init__(msg)
        self.diagnostics = diagnostics if diagnostics is not None else {}


class SchrolabDegeneracyError(SchrolabNumericError):
    pass


class SchrolabSpectralProximityError(SchrolabNumericError):

    def __init__(self, msg, nearest=None):
        super(SchrolabSpectralProximityError, self).__init__(
            msg, diagnostics={'nearest': nearest})
        self.nearest = nearest


class SchrolabIndexError(SchrolabError):

    def __init__(self, index, msg):
        super(SchrolabIndexError, self).__init__(msg)
        self.index = index


class SchrolabPropertyError(SchrolabIndexError):
    "An asserted numerical property failed, 'index' is the worst node"


class NamedSchrolabError(SchrolabError):

    def __init__(self, name, msg):
        super(NamedSchrolabError, self).__init__(msg)
        self.name = name


class SchrolabConfigError(NamedSchrolabError):
    pass


class SchrolabInputError(SchrolabError):
    pass
