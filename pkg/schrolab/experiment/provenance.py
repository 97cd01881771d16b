import re
import sys
import json
from datetime import datetime
from collections import OrderedDict
from deepdiff import DeepDiff
from schrolab.__about__ import install_requires
from schrolab.exceptions import SchrolabUsageError, SchrolabInputError
from schrolab.utils import extract_package_version

PROVENANCE_VERSION = '1.0'

SCHROLAB_DEPENDENCIES = [re.split(r'[><=]+', r)[0] for r in install_requires]

# Entries that legitimately differ between otherwise identical runs
VOLATILE_PATHS = ('datetime', 'python_version', 'pkg_versions',
                  re.compile(r"root\['claims'\]\[\d+\]\['runtime'\]"))


class Record(object):
    """
    Provenance of a verification run: the resolved configuration, the
    versions of the numerical stack and when it was run

    Parameters
    ----------
    config : dict
        The resolved experiment configuration (see ExperimentConfig.to_dict)
    pkg_versions : dict[str, str] | None
        Versions of the packages the results depend on. Detected from the
        current environment if None
    python_version : str | None
        Version of the interpreter. Detected if None
    datetime : str | None
        ISO formatted time of the run. The current time if None
    """

    def __init__(self, config, pkg_versions=None, python_version=None,
                 datetime=None):
        if pkg_versions is None:
            pkg_versions = OrderedDict(
                (n, extract_package_version(n))
                for n in ['schrolab'] + SCHROLAB_DEPENDENCIES)
        self._prov = OrderedDict([
            ('__prov_version__', PROVENANCE_VERSION),
            ('config', config),
            ('pkg_versions', pkg_versions),
            ('python_version', (python_version if python_version is not None
                                else sys.version)),
            ('datetime', datetime if datetime is not None else _now())])

    def __repr__(self):
        return "{}(datetime='{}')".format(type(self).__name__,
                                          self.datetime)

    def __eq__(self, other):
        return self._prov == other._prov

    def __getitem__(self, key):
        return self._prov[key]

    @property
    def prov(self):
        return self._prov

    @property
    def config(self):
        return self._prov['config']

    @property
    def datetime(self):
        return self._prov['datetime']

    @property
    def prov_version(self):
        return self._prov['__prov_version__']

    def save(self, path):
        with open(path, 'w') as f:
            json.dump(self._prov, f, indent=2)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as f:
                prov = json.load(f, object_pairs_hook=OrderedDict)
        except IOError as e:
            raise SchrolabInputError(
                "Could not read provenance '{}': {}".format(path, e))
        except ValueError as e:
            raise SchrolabInputError(
                "Provenance '{}' is not valid JSON: {}".format(path, e))
        try:
            return cls(prov['config'], pkg_versions=prov['pkg_versions'],
                       python_version=prov['python_version'],
                       datetime=prov['datetime'])
        except KeyError as e:
            raise SchrolabInputError(
                "Provenance '{}' is missing the {} entry".format(path, e))


def _now():
    return datetime.now().isoformat()


def gen_path_regex(path):
    """
    Converts a '/'-separated path into the regular expression matching the
    DeepDiff change keys beneath it. Compiled regexes are passed through
    """
    if isinstance(path, str):
        if path.startswith('/'):
            path = path[1:]
        regex = re.compile(r"root\['{}'\].*"
                           .format(r"'\]\['".join(path.split('/'))))
    elif isinstance(path, re.Pattern):
        regex = path
    else:
        raise SchrolabUsageError(
            "Provenance in/exclude paths can either be path strings or "
            "regexes, not '{}'".format(path))
    return regex


def filtered_diff(first, second, include=None, exclude=None):
    """
    Differences between two nested dictionaries, restricted to the paths
    in 'include' (all if None) less those in 'exclude'

    Parameters
    ----------
    first : dict
        Reference dictionary
    second : dict
        Dictionary to compare against
    include : list[str | re.Pattern] | None
        Paths to include in the match
    exclude : list[str | re.Pattern] | None
        Paths to exclude from the match

    Returns
    -------
    diff : dict
        DeepDiff changes grouped by change type, empty if they match
    """
    include_res = ([gen_path_regex(p) for p in include]
                   if include is not None else None)
    exclude_res = ([gen_path_regex(p) for p in exclude]
                   if exclude is not None else [])
    diff = DeepDiff(first, second)

    def include_change(change):
        if include_res is not None and not any(rx.match(change)
                                               for rx in include_res):
            return False
        return not any(rx.match(change) for rx in exclude_res)

    filtered = {}
    for change_type, changes in diff.items():
        if isinstance(changes, dict):
            kept = dict((k, v) for k, v in changes.items()
                        if include_change(k))
        else:
            kept = [c for c in changes if include_change(c)]
        if kept:
            filtered[change_type] = kept
    return filtered
