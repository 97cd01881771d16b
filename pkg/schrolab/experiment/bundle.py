import os
import os.path as op
import csv
import errno
import logging
from fasteners import InterProcessLock
from schrolab.exceptions import SchrolabUsageError, SchrolabInputError
from .verdicts import VerificationReport
from .provenance import Record, filtered_diff, VOLATILE_PATHS

logger = logging.getLogger('schrolab')


REPORT_FNAME = 'report.json'
PROVENANCE_FNAME = 'provenance.json'
LOCK_FNAME = '.lock'


class Table(object):
    """
    A named table of numeric evidence written to '<suite>-<name>.csv'

    Parameters
    ----------
    name : str
        Name of the table within its suite
    header : list[str]
        Column names
    rows : list[tuple]
        Rows of numbers (or short labels), one entry per column
    """

    def __init__(self, name, header, rows=()):
        self._name = name
        self._header = list(header)
        self._rows = []
        for row in rows:
            self.append(row)

    def __repr__(self):
        return "{}(name='{}', header={}, nrows={})".format(
            type(self).__name__, self.name, self.header, len(self))

    def __len__(self):
        return len(self._rows)

    def __iter__(self):
        return iter(self._rows)

    @property
    def name(self):
        return self._name

    @property
    def header(self):
        return self._header

    @property
    def rows(self):
        return self._rows

    def append(self, row):
        row = tuple(row)
        if len(row) != len(self._header):
            raise SchrolabUsageError(
                "Row {} does not match the {} columns of table '{}'".format(
                    row, len(self._header), self.name))
        self._rows.append(row)

    def column(self, name):
        index = self._header.index(name)
        return [r[index] for r in self._rows]

    def fname(self, suite):
        return '{}-{}.csv'.format(suite, self.name)


def format_cell(value):
    "Numbers are written with enough digits to round-trip exactly"
    if isinstance(value, bool):
        return str(value).lower()
    try:
        value = value.item()
    except AttributeError:
        pass
    if isinstance(value, float):
        return '%.17g' % value
    return str(value)


def parse_cell(value):
    for dtype in (int, float):
        try:
            return dtype(value)
        except ValueError:
            pass
    return value


class Bundle(object):
    """
    A results directory holding the CSV tables, the claim report and the
    provenance of one verification run. Reads and writes are guarded by an
    inter-process lock on the directory

    Parameters
    ----------
    path : str
        Path to the bundle directory
    """

    def __init__(self, path):
        self._path = op.abspath(path)

    def __repr__(self):
        return "{}(path='{}')".format(type(self).__name__, self.path)

    @property
    def path(self):
        return self._path

    @property
    def lock_path(self):
        return op.join(self._path, LOCK_FNAME)

    @property
    def report_path(self):
        return op.join(self._path, REPORT_FNAME)

    @property
    def provenance_path(self):
        return op.join(self._path, PROVENANCE_FNAME)

    def create(self):
        """
        Creates the bundle directory, removing the tables, report and
        provenance a previous run may have left in it so that every file of
        the bundle comes from the same run
        """
        try:
            os.makedirs(self._path)
        except OSError as e:
            if e.errno != errno.EEXIST:
                raise
        with InterProcessLock(self.lock_path, logger=logger):
            stale = self.table_fnames + [
                f for f in (REPORT_FNAME, PROVENANCE_FNAME)
                if op.exists(op.join(self._path, f))]
            for fname in stale:
                os.remove(op.join(self._path, fname))
        if stale:
            logger.info("Removed %d files of a previous run from %s",
                        len(stale), self._path)
        return self

    def write_table(self, suite, table):
        fpath = op.join(self._path, table.fname(suite))
        with InterProcessLock(self.lock_path, logger=logger):
            with open(fpath, 'w', newline='') as f:
                writer = csv.writer(f, lineterminator='\n')
                writer.writerow(table.header)
                for row in table:
                    writer.writerow([format_cell(v) for v in row])
        logger.debug("Wrote %d rows to %s", len(table), fpath)
        return op.basename(fpath)

    def read_table(self, fname):
        fpath = op.join(self._path, fname)
        self._check_exists(fpath)
        with InterProcessLock(self.lock_path, logger=logger):
            with open(fpath, newline='') as f:
                reader = csv.reader(f)
                try:
                    header = next(reader)
                except StopIteration:
                    raise SchrolabInputError(
                        "Table '{}' is empty".format(fpath))
                rows = [[parse_cell(v) for v in r] for r in reader]
        name = op.splitext(fname)[0].split('-', 1)[-1]
        return Table(name, header, rows)

    @property
    def table_fnames(self):
        return sorted(f for f in os.listdir(self._path) if f.endswith('.csv'))

    def save(self, report, record):
        with InterProcessLock(self.lock_path, logger=logger):
            report.save(self.report_path)
            record.save(self.provenance_path)

    def load(self):
        """
        Loads the claim report and the provenance record of the bundle

        Returns
        -------
        report : VerificationReport
            The claim verdicts
        record : Record
            The provenance of the run
        """
        self._check_exists(self._path)
        self._check_exists(self.report_path)
        self._check_exists(self.provenance_path)
        with InterProcessLock(self.lock_path, logger=logger):
            report = VerificationReport.load(self.report_path)
            record = Record.load(self.provenance_path)
        return report, record

    def mismatches(self, other, include=None, exclude=VOLATILE_PATHS):
        """
        Compares the report, provenance and tables of two bundles. By default
        the run times, timestamps and environment versions are ignored, so
        two runs of the same configuration and seed do not mismatch

        Parameters
        ----------
        other : Bundle
            The bundle to compare against
        include : list[str | re.Pattern] | None
            Paths to restrict the comparison to (all if None)
        exclude : list[str | re.Pattern] | None
            Paths excluded from the comparison

        Returns
        -------
        diff : dict
            DeepDiff changes grouped by change type, empty if they match
        """
        return filtered_diff(self._contents(), other._contents(),
                             include=include, exclude=exclude)

    def _contents(self):
        report, record = self.load()
        contents = dict(record.prov)
        contents['claims'] = report.to_dict()['claims']
        contents['tables'] = {}
        for fname in self.table_fnames:
            table = self.read_table(fname)
            contents['tables'][fname] = [table.header] + [list(r)
                                                         for r in table]
        return contents

    def _check_exists(self, path):
        if not op.exists(path):
            raise SchrolabInputError(
                "'{}' does not exist, is '{}' a results bundle?".format(
                    path, self._path))
