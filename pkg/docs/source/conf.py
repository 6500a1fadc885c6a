# Sphinx configuration for the circlelab documentation.

import os
import sys

sys.path.insert(0, os.path.abspath('../..'))

from circlelab.version import __version__  # noqa: E402

project = 'circlelab'
copyright = '2025, circlelab contributors'
author = 'circlelab contributors'
release = __version__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx_autodoc_typehints',
    'myst_parser',
]

autodoc_member_order = 'bysource'
autodoc_typehints = 'description'
autodoc_typehints_format = 'short'

# docstrings are short Google-style blocks ("Returns:", "Example:")
napoleon_google_docstring = True
napoleon_numpy_docstring = False

myst_enable_extensions = ['colon_fence', 'dollarmath']
myst_heading_anchors = 2

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
    'sklearn': ('https://scikit-learn.org/stable/', None),
}

exclude_patterns = ['_build']
language = 'en'

html_theme = 'sphinx_rtd_theme'
html_theme_options = {'navigation_depth': 3}
