
__version__ = '0.3.0'

__authors__ = [
    ("Thomas G. Close", "tom.g.close@gmail.com"),
    ("Francesco Sforazzini", "francesco.sforazzini@gmail.com")]

install_requires = [
    'numpy>=1.17',
    'scipy>=1.4',
    'networkx>=2.6',
    'fasteners>=0.7.0',
    'deepdiff>=3.3',
    'tqdm>=4.25.0']


tests_require = [
    'pytest>=5.0',
    'pytest-env>=0.6.2',
    'mpmath>=1.1']
