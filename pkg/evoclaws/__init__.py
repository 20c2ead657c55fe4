"""General evoclaws package parameters"""
from pathlib import Path

__version__ = '0.1.0'

PKG_PATH = Path(__file__).parent

# catalog entry => (module in evoclaws.catalog, builder function)
CATALOG_MAP = {
    'dc': ('diffusion', 'diffusion_convection'),
    'vcdc': ('diffusion', 'variable_coefficient_dc'),
    'heat': ('linearizable', 'heat'),
    'L1': ('linearizable', 'hodograph_heat'),
    'L2': ('linearizable', 'legendre_heat'),
    'gate': ('gate', 'nonlinear_gate'),
}

TABLE_PATH = PKG_PATH.joinpath('catalog', 'resources', 'table.json')
