# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.

import os
import sys

cwd = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.abspath(os.path.join(cwd, '../../')))
import sphinx_rtd_theme


# -- Project information -----------------------------------------------------

project = 'ChargeZero'
copyright = '2021, The ChargeZero Authors'
author = 'The ChargeZero Authors'

version = 'latest'
release = 'latest'


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx_rtd_theme',
    'recommonmark',
]

napoleon_use_ivar = True
autodoc_member_order = 'bysource'

templates_path = ['_templates']
source_suffix = ['.rst', '.md']
master_doc = 'index'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'ChargeZero.doc'


# -- Options for LaTeX output ------------------------------------------------

latex_documents = [
    (master_doc, 'ChargeZero.tex', 'ChargeZero Documentation', author, 'manual'),
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'sympy': ('https://docs.sympy.org/latest/', None),
}
