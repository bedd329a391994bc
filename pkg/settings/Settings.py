import json
import os

class Settings(object):
    DEFAULTS_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                 "defaults.json")
    settings_files = {}

    @classmethod
    def get_settings(cls, file_name):
        """
        Retrieve the settings from a file name, load the JSON data and
        unserialize it. We store the settings object statically in this class
        so that later uses of the same settings file can reuse it.
        """

        if file_name not in cls.settings_files:
            with open(file_name) as data:
                cls.settings_files[file_name] = json.load(data)

        return cls.settings_files[file_name]

    def __init__(self, file_name, component_name,
                 arguments=None, defaults_file=DEFAULTS_FILE):
        if not os.path.isfile(defaults_file):
            raise IOError("File '{}' does not exist.".format(defaults_file))
        if not os.path.isfile(file_name):
            raise IOError("File '{}' does not exist.".format(file_name))

        self._component_name = component_name

        defaults = self.__class__.get_settings(defaults_file)
        overrides = self.__class__.get_settings(file_name)
        if self._component_name not in defaults:
            raise KeyError("Component '{}' not found.".format(self._component_name))

        component = defaults[self._component_name]
        self._name = component["name"]

        # Copy the registrations so that values set on this object do not
        # leak into the statically cached defaults of other instances.
        self.settings = {}
        for key, data in component["settings"].items():
            self.settings[key] = dict(data)
            if key in overrides:
                self.settings[key]["value"] = overrides[key]
            else:
                self.settings[key]["value"] = data["default"]

        if "parent" in component:
            parent = component["parent"]
            if arguments is not None:
                self.parent = arguments.get_settings(parent)
            else:
                self.parent = Settings(file_name, parent,
                                       defaults_file=defaults_file)
        else:
            self.parent = None

    @property
    def name(self):
        """
        Retrieve the read-only descriptive name of the settings component.

        Use `component_name` to retrieve the internal name.
        """

        return self._name

    @property
    def component_name(self):
        """
        Retrieve the read-only internal name of the settings component.
        """

        return self._component_name

    def get_all(self):
        """
        Retrieve all the settings values for this component.

        Inherited values from parent components are not included. The returned
        value is a generator yielding key and current value.
        """

        return ((key, self.settings[key]["value"]) for key in self.settings)

    def get_info(self):
        """
        Retrieve all the settings information for this component.

        The returned value is a generator yielding key and setting data.
        """

        return iter(sorted(self.settings.items()))

    def keys(self):
        return iter(self.settings.keys())

    def as_dict(self):
        """
        Retrieve the current values of this component as a dictionary.

        Sequence settings are converted to tuples so that the result can be
        used to construct immutable configuration objects.
        """

        values = {}
        for key, value in self.get_all():
            if isinstance(value, list):
                value = tuple(value)

            values[key] = value

        return values

    def _find(self, key):
        if key in self.settings:
            return self

        if self.parent is not None:
            try:
                return self.parent._find(key)
            except KeyError:
                pass

        raise KeyError("Setting '{}' for component '{}' not found.".format(key, self._component_name))

    def get(self, key):
        owner = self._find(key)
        return owner.settings[key]["value"]

    def is_default(self, key):
        owner = self._find(key)
        data = owner.settings[key]
        return data["value"] == data["default"]

    def set(self, key, value):
        owner = self._find(key)
        data = owner.settings[key]

        value = owner.check_format(key, data, value)
        data["value"] = value

    def check_format(self, key, data, value):
        """
        Validate a new `value` for the setting `key` with registration `data`.

        Returns the value, possibly normalized, or raises a `ValueError`.
        """

        required = "required" in data and data["required"]
        if required and (value is None or value == "" or value == []):
            raise ValueError("Setting '{}' for component '{}' must be nonempty, not '{}'".format(key, self._component_name, value))

        if value is None:
            return value

        if data["type"] in ("list", "tuple"):
            if "length" in data and len(value) != data["length"]:
                raise ValueError("Setting '{}' for component '{}' must have {} items, not {}".format(key, self._component_name, data["length"], len(value)))

            items = list(value)
        else:
            items = [value]

        # Numerical type-specific: check minimum and maximum value constraint,
        # for each element in case of sequences.
        for item in items:
            if "min" in data and item < data["min"]:
                raise ValueError("Setting '{}' for component '{}' must be at least {}, not {}".format(key, self._component_name, data["min"], item))
            if "max" in data and item > data["max"]:
                raise ValueError("Setting '{}' for component '{}' must be at most {}, not {}".format(key, self._component_name, data["max"], item))
            if "options" in data and item not in data["options"]:
                raise ValueError("Setting '{}' for component '{}' must be one of {}, not '{}'".format(key, self._component_name, data["options"], item))

        return value
