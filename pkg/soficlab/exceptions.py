__all__ = ('SoficlabError', 'InvalidParameter', 'InvalidArgument', 'ResourceLimit',
           'ValidationFailure', 'EvaluationError', 'FormulaSyntaxError', 'SpecSyntaxError')


class SoficlabError(Exception):
    pass

class InvalidParameter(SoficlabError, ValueError):
    pass

class InvalidArgument(SoficlabError, ValueError):
    pass

class ResourceLimit(SoficlabError):
    pass

class EvaluationError(SoficlabError):
    pass


class ValidationFailure(SoficlabError):
    """
    Raised when a structure breaks an axiom it is required to satisfy.
    Carries the offending report (or a list of violations) for inspection.
    """
    def __init__(self, message, report=None):
        super(ValidationFailure, self).__init__(message)
        self.report = report


class FormulaSyntaxError(SoficlabError, ValueError):
    def __init__(self, message, text='', offset=0):
        super(FormulaSyntaxError, self).__init__('%s at offset %d' % (message, offset))
        self.text = text
        self.offset = offset


class SpecSyntaxError(InvalidArgument):
    pass
