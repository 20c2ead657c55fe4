"""Built-in equation families with the conservation laws they are known
to have, used for regression checks and the diffusion-convection table"""

import json
import importlib
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from .. import CATALOG_MAP, TABLE_PATH
from ..base.exceptions import UnknownEntry
from ..expr.canonical import apply_constraints, is_zero, simplify
from ..expr.printer import to_text
from ..jet import EvolutionEquation
from .entry import Bindings, CatalogEntry, Expectations, bind, check_keys
from .diffusion import GENERIC_A, GENERIC_B, DcEquivalence, dc_equivalence, dc_rhs
from .linearizable import HEAT_FAMILY, SIGMA
from .gate import NONLINEAR, gate_equations, random_nonlinear

__all__ = ['CatalogEntry', 'Expectations', 'bind', 'check_keys', 'GENERIC_A', 'GENERIC_B',
           'DcEquivalence', 'dc_equivalence', 'dc_rhs', 'HEAT_FAMILY', 'SIGMA', 'NONLINEAR',
           'gate_equations', 'random_nonlinear', 'builder', 'instantiate', 'catalog_entry',
           'names', 'load_table', 'table_entries', 'proportional', 'check_report']


def builder(name: str) -> Callable:
    """Builder function registered for a catalog entry"""
    if name not in CATALOG_MAP:
        raise UnknownEntry('unknown catalog entry "%s", expected one of %s'
                           % (name, ', '.join(CATALOG_MAP)))
    module, func = CATALOG_MAP[name]
    return getattr(importlib.import_module('%s.%s' % (__name__, module)), func)


def instantiate(name: str, bindings: Bindings = None) -> Tuple[EvolutionEquation, Expectations]:
    """Concrete equation plus the expectations decide and verify must meet"""
    return builder(name)(dict(bindings or {}))


def catalog_entry(name: str, bindings: Bindings = None) -> CatalogEntry:
    bindings = dict(bindings or {})
    eq, expectations = instantiate(name, bindings)
    return CatalogEntry(name, bindings, eq, expectations)


def names() -> List[str]:
    return list(CATALOG_MAP)


def load_table(path: Path = TABLE_PATH) -> Dict:
    with Path(path).open(encoding='utf-8') as fp:
        return json.load(fp)


def table_entries(table: Dict = None) -> List[Tuple[Dict, CatalogEntry]]:
    """(row, entry) for the rows and the concrete instances of the table"""
    table = load_table() if table is None else table
    return [(row, catalog_entry(row.get('entry', 'dc'), row['bindings']))
            for row in table['rows'] + table['instances']]


def proportional(a, b) -> bool:
    """a = c b for a nonzero constant c"""
    a, b = apply_constraints(a), apply_constraints(b)
    if is_zero(b).vanishes:
        return is_zero(a).vanishes
    ratio = simplify(a / b)
    return ratio.is_number and ratio != 0


def check_report(report, expectations: Expectations) -> List[str]:
    """Differences between a classification report and the expectations;
    family characteristics are matched by the presence of a family only"""
    problems = []
    if expectations.verdict is not None and report.verdict != expectations.verdict:
        problems.append('verdict %r, expected %r' % (report.verdict, expectations.verdict))
    found = report.characteristics
    for multiplier in expectations.characteristics:
        if any(multiplier.has(f.func) for f in expectations.families):
            continue
        if is_zero(multiplier).vanishes:
            continue
        if not any(proportional(multiplier, other) for other in found):
            problems.append('characteristic %s not found' % to_text(multiplier))
    if expectations.families and not report.families:
        problems.append('no function family, expected %s'
                        % ', '.join(map(repr, expectations.families)))
    return problems
