from schrolab.exceptions import SchrolabUsageError, SchrolabConfigError


class Parameter(object):
    """
    A named setting or tolerance value passed to a suite

    Parameters
    ----------
    name : str
        Name of the parameter
    value : float | int | str | bool | list
        Value of the parameter
    """

    def __init__(self, name, value):
        self._name = name
        if value is None:
            self._dtype = None
        else:
            if not isinstance(value, (int, float, str, tuple, list)):
                raise SchrolabUsageError(
                    "Invalid type for '{}' parameter ({}), {}, can be one "
                    "of int, float, str or a list of them"
                    .format(name, value, type(value)))
            if isinstance(value, (tuple, list)):
                self._dtype = type(value[0]) if value else None
            else:
                self._dtype = type(value)
        self._value = value

    def __repr__(self):
        return "{}(name='{}', value={})".format(type(self).__name__,
                                                self.name, self.value)

    def __eq__(self, other):
        return self.name == other.name and self.value == other.value

    @property
    def name(self):
        return self._name

    @property
    def value(self):
        return self._value

    @property
    def dtype(self):
        if self._dtype is None:
            return type(None)
        return self._dtype


class ParamSpec(Parameter):
    """
    Specifies a setting or tolerance that can be passed to a suite

    Parameters
    ----------
    name : str
        Name of the parameter
    default : float | int | str | bool | list
        Default value of the parameter
    desc : str
        A description of the parameter
    choices : list | None
        Restrict valid values to the following choices
    dtype : type | None
        The datatype of the parameter (of its elements for arrays). If None
        it is determined from the default value
    array : bool
        Whether the parameter takes a list of values
    """

    def __init__(self, name, default, desc=None, choices=None, dtype=None,
                 array=False):
        super(ParamSpec, self).__init__(name, default)
        self._desc = desc
        self._array = array
        self._choices = choices
        if dtype is not None:
            if self.default is not None and (
                not array and not isinstance(self.default, dtype) or
                array and any(not isinstance(d, dtype)
                              for d in self.default)):
                raise SchrolabUsageError(
                    "Provided default value ({}) does not match explicit "
                    "dtype ({})".format(self.default, dtype))
            self._dtype = dtype

    def __repr__(self):
        return "{}(name='{}', default={}, desc='{}')".format(
            type(self).__name__, self.name, self.default, self.desc)

    @property
    def default(self):
        return self._value

    @property
    def desc(self):
        return self._desc

    @property
    def array(self):
        return self._array

    @property
    def choices(self):
        return self._choices

    def coerce(self, value):
        """
        Promotes integers to floats for float parameters, so that '20' is
        accepted where 20.0 is expected
        """
        def promote(v):
            if (self.dtype is float and isinstance(v, int) and
                    not isinstance(v, bool)):
                return float(v)
            return v

        if self.array:
            if not isinstance(value, (list, tuple)):
                value = [value]
            return [promote(v) for v in value]
        return promote(value)

    def check_valid(self, parameter, context=None):
        context_str = ' in ' + context if context is not None else ''
        if parameter.value is None:
            return
        if self.array:
            if not isinstance(parameter.value, (list, tuple)):
                raise SchrolabConfigError(
                    parameter.name,
                    "Expected a list for '{}' parameter{} ({})".format(
                        parameter.name, context_str, parameter.value))
            errors = []
            for value in parameter.value:
                try:
                    self._check_valid_value(value, parameter.name,
                                            context_str)
                except SchrolabConfigError as e:
                    errors.append(e)
            if errors:
                raise SchrolabConfigError(
                    parameter.name, '\n'.join(e.msg for e in errors))
        else:
            self._check_valid_value(parameter.value, parameter.name,
                                    context_str)

    def _check_valid_value(self, value, param_name, context_str):
        if not isinstance(value, self.dtype) or (
                isinstance(value, bool) and self.dtype is not bool):
            raise SchrolabConfigError(
                param_name,
                "Incorrect datatype for '{}' parameter provided ({}){}. "
                "Should be {}".format(param_name, type(value), context_str,
                                      self.dtype))
        if self.choices is not None and value not in self.choices:
            raise SchrolabConfigError(
                param_name,
                "Invalid value for '{}' parameter provided ({}){}. Can be "
                "one of {}".format(param_name, value, context_str,
                                   self.choices))
