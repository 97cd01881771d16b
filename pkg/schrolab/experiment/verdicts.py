import json
from collections import OrderedDict
from schrolab.exceptions import SchrolabInputError
from schrolab.utils import wrap_text


PASS = 'pass'
SURROGATE = 'bounded-surrogate'
FAIL = 'fail'
SKIPPED = 'skipped'

VERDICTS = (PASS, SURROGATE, FAIL, SKIPPED)


class ClaimResult(object):
    """
    The verdict on one verified claim and the evidence behind it

    Parameters
    ----------
    claim_id : str
        Identifier of the claim
    anchor : str
        The statement the claim checks
    verdict : str
        One of 'pass', 'bounded-surrogate', 'fail' or 'skipped'
    suite : str
        Name of the suite that produced the claim
    evidence : list[str]
        File names of the tables backing the verdict
    numbers : dict[str, float]
        Key numbers shown in the summary
    runtime : float | None
        Runtime of the producing suite in seconds
    message : str | None
        Error or skip reason
    """

    def __init__(self, claim_id, anchor, verdict, suite, evidence=(),
                 numbers=None, runtime=None, message=None):
        if verdict not in VERDICTS:
            raise SchrolabInputError(
                "Unrecognised verdict '{}' for claim '{}'".format(
                    verdict, claim_id))
        self.claim_id = claim_id
        self.anchor = anchor
        self.verdict = verdict
        self.suite = suite
        self.evidence = list(evidence)
        self.numbers = OrderedDict(numbers if numbers is not None else ())
        self.runtime = runtime
        self.message = message

    def __repr__(self):
        return "{}(claim_id='{}', verdict='{}')".format(
            type(self).__name__, self.claim_id, self.verdict)

    def __eq__(self, other):
        return self.to_dict() == other.to_dict()

    @property
    def failed(self):
        return self.verdict in (FAIL, SKIPPED)

    def to_dict(self):
        return OrderedDict([
            ('claim_id', self.claim_id), ('anchor', self.anchor),
            ('verdict', self.verdict), ('suite', self.suite),
            ('evidence', self.evidence),
            ('numbers', OrderedDict((k, _jsonable(v))
                                    for k, v in self.numbers.items())),
            ('runtime', self.runtime), ('message', self.message)])

    @classmethod
    def from_dict(cls, dct):
        try:
            return cls(dct['claim_id'], dct['anchor'], dct['verdict'],
                       dct['suite'], evidence=dct.get('evidence', ()),
                       numbers=dct.get('numbers'),
                       runtime=dct.get('runtime'),
                       message=dct.get('message'))
        except (KeyError, TypeError) as e:
            raise SchrolabInputError(
                "Corrupt claim entry {}: {}".format(dct, e))


def _jsonable(value):
    try:
        return value.item()
    except AttributeError:
        return value


class VerificationReport(object):
    """
    The verdicts of all claims checked in a run, in suite declaration order
    """

    def __init__(self, claims=()):
        self._claims = OrderedDict()
        for claim in claims:
            self.add(claim)

    def __repr__(self):
        return "{}(claims={})".format(type(self).__name__,
                                      list(self._claims))

    def __len__(self):
        return len(self._claims)

    def __iter__(self):
        return iter(self._claims.values())

    def __getitem__(self, claim_id):
        return self._claims[claim_id]

    def __eq__(self, other):
        return list(self) == list(other)

    def add(self, claim):
        if claim.claim_id in self._claims:
            raise SchrolabInputError(
                "Claim '{}' reported twice".format(claim.claim_id))
        self._claims[claim.claim_id] = claim

    @property
    def claim_ids(self):
        return list(self._claims)

    @property
    def failed(self):
        return [c for c in self if c.failed]

    @property
    def exit_code(self):
        return 1 if self.failed else 0

    def to_dict(self):
        return OrderedDict([('claims', [c.to_dict() for c in self])])

    @classmethod
    def from_dict(cls, dct):
        try:
            entries = dct['claims']
        except (KeyError, TypeError):
            raise SchrolabInputError(
                "Report has no 'claims' entry ({})".format(dct))
        return cls(ClaimResult.from_dict(d) for d in entries)

    def save(self, path):
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f, indent=2)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as f:
                dct = json.load(f)
        except IOError as e:
            raise SchrolabInputError(
                "Could not read report '{}': {}".format(path, e))
        except ValueError as e:
            raise SchrolabInputError(
                "Report '{}' is not valid JSON: {}".format(path, e))
        return cls.from_dict(dct)

    def render(self, line_length=79):
        """
        Renders the report as a text table of claim, verdict, key numbers
        and the checked statement
        """
        if not len(self):
            return "no claims\n"
        width = max(len(c) for c in self.claim_ids)
        lines = []
        for claim in self:
            lines.append("{:<{}}  {}".format(claim.claim_id, width,
                                             claim.verdict))
            indent = width + 2
            if claim.numbers:
                numbers = ', '.join(
                    '{}={}'.format(k, _format_number(v))
                    for k, v in claim.numbers.items())
                lines.append(wrap_text(numbers, line_length, indent,
                                       prefix_indent=True))
            lines.append(wrap_text(claim.anchor, line_length, indent,
                                   prefix_indent=True))
            if claim.message:
                lines.append(wrap_text(claim.message, line_length, indent,
                                       prefix_indent=True))
        counts = OrderedDict((v, sum(c.verdict == v for c in self))
                             for v in VERDICTS)
        lines.append('')
        lines.append(', '.join('{} {}'.format(n, v)
                               for v, n in counts.items() if n))
        return '\n'.join(lines) + '\n'


def _format_number(value):
    if isinstance(value, float):
        return '{:.6g}'.format(value)
    return str(value)
