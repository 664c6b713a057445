import dataclasses as dtc
import math

import pandas as pd

__all__ = [
    'PROVENANCES',
    'FORMATS',
    'BoundReport',
    'BoundTable',
]

PROVENANCES = ('PAPER', 'DERIVED', 'TRIVIAL')
FORMATS = ('table', 'json', 'csv')

_COLUMNS = ['name', 'computed', 'reference', 'tolerance', 'kind', 'passed', 'provenance', 'note']


@dtc.dataclass(frozen=True)
class BoundReport:
    """
    one computed quantity against its reference.

    ``kind`` says how they are compared: ``'equal'`` (``|computed - reference| <= tolerance``),
    ``'upper'`` (``computed <= reference + tolerance``) or ``'lower'``
    (``computed >= reference - tolerance``).
    """
    name: str
    computed: float
    reference: float
    tolerance: float = 0.
    provenance: str = 'DERIVED'
    kind: str = 'equal'
    note: str = ''

    def __post_init__(self):
        if self.kind not in ('equal', 'upper', 'lower'):
            raise ValueError("Expected kind in ('equal', 'upper', 'lower'). Got %s" % self.kind)
        if self.provenance not in PROVENANCES:
            raise ValueError("Expected provenance in %s. Got %s" % (str(PROVENANCES), self.provenance))

    @property
    def passed(self):
        c, r, tol = float(self.computed), float(self.reference), float(self.tolerance)
        if math.isnan(c) or math.isnan(r):
            return False
        if self.kind == 'upper':
            return c <= r + tol
        if self.kind == 'lower':
            return c >= r - tol
        if c == r:
            return True
        return abs(c - r) <= tol

    def to_dict(self):
        return dict(name=self.name, computed=float(self.computed), reference=float(self.reference),
                    tolerance=float(self.tolerance), kind=self.kind, passed=bool(self.passed),
                    provenance=self.provenance, note=self.note)


class BoundTable(pd.DataFrame):
    """
    subclass of ``pandas.DataFrame`` holding one ``BoundReport`` per row.
    """

    @property
    def _constructor(self):
        return BoundTable

    @staticmethod
    def from_reports(reports):
        rows = [r.to_dict() for r in reports]
        return BoundTable(rows, columns=_COLUMNS)

    @property
    def all_passed(self):
        return bool(self['passed'].all()) if len(self) else True

    @property
    def failures(self):
        return self[~self['passed'].astype(bool)]

    def render(self, fmt='table'):
        """the table as aligned text, JSON records or CSV (``,`` separated, LF line endings)"""
        if fmt == 'table':
            return self.to_string(index=False, float_format=lambda v: '%.12g' % v)
        if fmt == 'json':
            return self.to_json(orient='records', double_precision=15, indent=1)
        if fmt == 'csv':
            return self.to_csv(index=False, lineterminator='\n', float_format='%.15g')
        raise ValueError("Expected fmt in %s. Got %s" % (str(FORMATS), fmt))
