class BaseDcsisException(Exception):
    pass


class InvalidInputError(BaseDcsisException, ValueError):
    """ Invalid input provided by the caller """

    def __init__(self, err: str):
        super(InvalidInputError, self).__init__('Invalid input: {err}'.format(err=err))


class DimensionMismatchError(InvalidInputError):
    """ Two arrays that should agree in shape do not """

    def __init__(self, what: str, expected, actual):
        self.what = what
        self.expected = expected
        self.actual = actual

        super(DimensionMismatchError, self).__init__(
            '{what}: expected {expected}, got {actual}'.format(
                what=what,
                expected=expected,
                actual=actual)
        )


class EmptyDatasetError(InvalidInputError):
    """ The dataset has no observations or no features """


class SingleClassError(InvalidInputError):
    """ A training set contains only one class """


class DegenerateFoldError(InvalidInputError):
    """ Leave-one-subject-out is impossible: fewer than two subjects """


class SpecSyntaxError(InvalidInputError):
    """ A classifier or metric string could not be parsed """

    def __init__(self, what: str, value: str, hint: str):
        self.what = what
        self.value = value

        super(SpecSyntaxError, self).__init__(
            'cannot parse {what} {value!r}: {hint}'.format(what=what, value=value, hint=hint)
        )


class DatasetFormatError(BaseDcsisException, ValueError):
    """ The CSV file does not follow the expected layout """


class SchemaError(DatasetFormatError):
    """ The CSV file is missing a column that the schema requires, or the response is not binary """

    def __init__(self, path: str, err: str):
        self.path = path

        super(SchemaError, self).__init__(
            'Schema error in "{path}": {err}'.format(path=path, err=err)
        )


class DuplicateHeaderError(DatasetFormatError):
    """ The CSV header mentions the same column twice """

    def __init__(self, path: str, column: str):
        self.path = path
        self.column = column

        super(DuplicateHeaderError, self).__init__(
            'Duplicate column "{column}" in the header of "{path}"'.format(column=column, path=path)
        )


class ParseError(DatasetFormatError):
    """ A cell could not be read as a finite real number """

    def __init__(self, path: str, line: int, column: str, value: str):
        self.path = path
        self.line = line
        self.column = column
        self.value = value

        super(ParseError, self).__init__(
            'Cannot parse {value!r} as a finite number in "{path}", line {line}, column "{column}"'.format(
                value=value,
                path=path,
                line=line,
                column=column)
        )


class RegistryError(BaseDcsisException, KeyError):
    """ A name is registered twice, or was never registered """

    def __str__(self):
        # KeyError quotes its argument; we want a readable message
        return str(self.args[0])


class RuntimeFoldError(BaseDcsisException):
    """ Uncaught error while processing one jackknife fold

    This class is used to augment other errors with the subject that was held out
    """

    def __init__(self, subject_id, err: Exception):
        self.subject_id = subject_id
        self.original_error = err

        super(RuntimeFoldError, self).__init__(
            'Error processing the fold that holds out subject {subject!r}: {err}'.format(
                subject=subject_id,
                err=err)
        )
