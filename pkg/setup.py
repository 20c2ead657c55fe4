from setuptools import setup, find_packages
from pathlib import Path
from evoclaws import __version__

setup(
    name='evoclaws',
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    package_data={'evoclaws': ['catalog/resources/*.json']},
    version=__version__,
    license='Apache 2.0',
    description='Evoclaws classifies the local conservation laws of second-order '
                'evolution equations u_t = H(t,x,u,u_x,u_xx) and certifies '
                'every law it reports.',
    long_description=Path('README.md').read_text('utf8'),
    long_description_content_type='text/markdown',
    keywords=[
        'conservation laws',
        'evolution equations',
        'computer algebra',
        'symbolic',
        'jet space',
    ],
    install_requires=[
        'sympy>=1.10',
        'termcolor',
        'tqdm',
    ],
    entry_points={'console_scripts': [
        'evoclaws=evoclaws.__main__:main',
    ]},
    classifiers=[
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Developers',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules',
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
    ],
)
