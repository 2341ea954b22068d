class StatusException(Exception):

    OK = 'OK'
    PARTIAL = 'PARTIAL'
    SKIPPED = 'SKIPPED'
    DENIED = 'DENIED'
    INVALID = 'INVALID'
    ERROR = 'ERROR'

    def __init__(self, status, message):
        self.status = status
        self.message = message
        super().__init__(self.message)


class ContractViolation(StatusException):
    """
    ContractViolation - an operation was called outside its preconditions
    """

    def __init__(self, message):
        super().__init__(StatusException.INVALID, message)


class ParseError(StatusException):
    """
    ParseError - a malformed line in a triple dump
    """

    def __init__(self, line_number, message):
        self.line_number = line_number
        super().__init__(StatusException.INVALID, f"line {line_number}: {message}")


class RefusalError(StatusException):
    """
    RefusalError - the request is valid but too large to serve
    """

    def __init__(self, message):
        super().__init__(StatusException.DENIED, message)


class StageError(StatusException):
    """
    StageError - a pipeline stage failed, the message is tagged with the stage name
    """

    def __init__(self, stage, message):
        self.stage = stage
        super().__init__(StatusException.ERROR, f"[{stage}] {message}")
