"""Serialisation of classification reports, certificates and the table

Every expression is written with to_text so that it parses back. JSON
output is sorted and carries no timings, so runs with the same seed and
version are byte-identical.
"""

import json
from typing import Dict, List, Optional, Sequence
import termcolor

from .. import __version__
from ..classify import ClassificationReport
from ..expr.printer import to_text
from ..verify import Certificate

DIVERGENCE_CURRENT = 'current_variables'
DIVERGENCE_UNDECIDED = 'up_to_contact_equivalence_not_decided'


def report_dict(report: ClassificationReport, source: str,
                certificates: Sequence[Optional[Certificate]] = ()) -> Dict:
    eq = report.equation
    certificates = list(certificates) + [None] * (len(report.basis) - len(certificates))
    basis = []
    for (cv, char), certificate in zip(report.basis, certificates):
        basis.append(dict(F=to_text(cv.density), G=to_text(cv.flux),
                          characteristic=to_text(char.multiplier),
                          certificate=None if certificate is None else certificate.kind))
    forms = {name: to_text(value) for name, value in report.canonical_forms.items()}
    forms['divergence'] = DIVERGENCE_CURRENT if 'hat_h' in forms else DIVERGENCE_UNDECIDED
    return dict(
        input=source,
        H=to_text(eq.rhs),
        functions=[repr(f) for f in eq.functions],
        flags=eq.flags,
        verdict=repr(report.verdict),
        basis=basis,
        families=[repr(f) for f in report.families],
        canonical_forms=forms,
        transformations=[tr.to_dict() for tr in report.transformations],
        emitted_systems=[s.to_dict() for s in report.emitted_systems],
        potential_systems=[s.to_dict() for s in report.potential_systems],
        chart_caveat=report.chart_caveat,
        completeness=report.completeness,
        evidence=dict(report.evidence),
        failures=list(report.failures),
        version=__version__,
        seed=report.seed)


def normalized_dicts(images: Sequence) -> List[Dict]:
    """Serialised output of classify.normalized_images"""
    return [dict(transformation=tr.to_dict(), H=to_text(image.rhs),
                 canonical_forms={name: to_text(value) for name, value in forms.items()},
                 laws=[dict(F=to_text(cv.density), G=to_text(cv.flux)) for cv in moved])
            for tr, image, forms, moved in images]


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def _heading(text: str) -> str:
    return termcolor.colored(text, 'cyan', attrs=['bold'])


def render_report(data: Dict, timings: Sequence[str] = ()) -> str:
    """Human summary of a serialised report"""
    if 'error' in data:
        return '%s\n  %s' % (data['input'], termcolor.colored(data['error'], 'red'))
    lines = ['%s u_t = %s' % (_heading('equation'), data['H']),
             '%s %s' % (_heading('verdict'), termcolor.colored(data['verdict'], 'green'))]
    if data['basis']:
        lines.append(_heading('basis'))
        for entry in data['basis']:
            lines.append('  F = %s\n    G = %s\n    lambda = %s%s' % (
                entry['F'], entry['G'], entry['characteristic'],
                '  [%s]' % entry['certificate'] if entry['certificate'] else ''))
    for family in data['families']:
        lines.append('%s %s' % (_heading('family'), family))
    forms = data['canonical_forms']
    for name in ('hat_h', 'check_h'):
        if name in forms:
            lines.append('%s %s' % (_heading(name), forms[name]))
    for tr in data['transformations']:
        lines.append('%s %s: t~ = %s, x~ = %s, u~ = %s (%s)' % (
            _heading('transformation'), tr['kind'], tr['T'], tr['X'], tr['U'], tr['provenance']))
    for system in data['emitted_systems'] + data['potential_systems']:
        lines.append('%s %s' % (_heading('system'), system['name']))
    sampled = sorted(gate for gate, kind in data['evidence'].items() if kind == 'numeric_sampled')
    if sampled:
        lines.append(termcolor.colored('sampled, not certified: %s' % ', '.join(sampled),
                                       'yellow'))
    if data['chart_caveat']:
        lines.append(termcolor.colored(data['chart_caveat'], 'yellow'))
    for failure in data['failures']:
        lines.append(termcolor.colored(failure, 'yellow'))
    if timings:
        lines.append(_heading('timings'))
        lines += ['  %s' % line for line in timings]
    return '\n'.join(lines)


def render_certificate(data: Dict) -> str:
    colour = 'green' if data['status'] == 'certified' else 'red'
    lines = ['%s %s' % (_heading(data['status']), termcolor.colored(data['subject'], colour))]
    for certificate in data['certificates']:
        text = '  %s' % certificate['kind']
        if 'sample_count' in certificate:
            text += ' on %d samples, max |residual| %g' % (certificate['sample_count'],
                                                           certificate['max_abs_residual'])
        lines.append(text)
    if data.get('error'):
        lines.append(termcolor.colored(data['error'], 'red'))
    return '\n'.join(lines)


def render_table(rows: List[Dict]) -> str:
    lines = []
    for row in rows:
        mark = termcolor.colored('ok', 'green') if row['ok'] else \
            termcolor.colored('MISMATCH', 'red')
        lines.append('%-20s %-10s %-40s %s' % (row['label'], row['verdict'],
                                              ', '.join(row['characteristics']), mark))
        for problem in row['problems']:
            lines.append('    %s' % termcolor.colored(problem, 'yellow'))
    return '\n'.join(lines)
