"""Decision procedure, equivalence transformations, normalisation of
conservation laws and potential systems"""

from .transform import (CONTACT, POINT, Chart, ContactTransformation, apply_transformation,
                        prolongation, pull_back, pull_back_conserved_vector,
                        transform_conserved_vector, transformed_rhs)
from .normalize import (LIBRARY, EmittedSystem, hodograph, legendre, normalize_char1,
                        normalize_pair, x_equation)
from .potential import PotentialSystem, emit_potential_system, potential_systems
from .decide import (CHART_CAVEAT, ClassificationReport, Classifier, adjoint_constraint, decide,
                     divergence_forms, linear_parts, normalized_images, polynomial_solutions)

__all__ = ['CONTACT', 'POINT', 'Chart', 'ContactTransformation', 'apply_transformation',
           'prolongation', 'pull_back', 'pull_back_conserved_vector',
           'transform_conserved_vector', 'transformed_rhs', 'LIBRARY', 'EmittedSystem',
           'hodograph', 'legendre', 'normalize_char1', 'normalize_pair', 'x_equation',
           'PotentialSystem', 'emit_potential_system', 'potential_systems', 'CHART_CAVEAT',
           'ClassificationReport', 'Classifier', 'adjoint_constraint', 'decide',
           'divergence_forms', 'linear_parts', 'normalized_images', 'polynomial_solutions']
