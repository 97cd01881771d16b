# -*- coding: utf-8 -*-
#
# Schrolab documentation build configuration file
import sys
import os.path as op
import datetime
import sphinx_rtd_theme

package_path = op.abspath(
    op.join(op.dirname(op.abspath(__file__)), '..', '..'))
sys.path.insert(0, package_path)
from schrolab.__about__ import __version__, __authors__  # @UnresolvedImport @IgnorePep8

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosectionlabel',
    'sphinxarg.ext',
    'numpydoc'
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'Schrolab'
author = u', '.join(a for a, _ in __authors__)
copyright = u'{}, {}'.format(datetime.datetime.now().year, author)

# The short X.Y version and the full version
version = '.'.join(__version__.split('.')[:2])
release = __version__

language = None
exclude_patterns = []
pygments_style = 'sphinx'

numpydoc_show_class_members = False

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_static_path = []
htmlhelp_basename = 'SchrolabDoc'

latex_documents = [
    (master_doc, 'schrolab.tex', u'Schrolab Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'schrolab', u'Schrolab Documentation', [author], 1)
]

texinfo_documents = [
    (master_doc, 'Schrolab', u'Schrolab Documentation', author, 'Schrolab',
     'Numerical verification of Schrodinger-type operators',
     'Miscellaneous'),
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'scipy': ('https://docs.scipy.org/doc/scipy', None)}
