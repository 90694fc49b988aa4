# -*- coding: utf-8 -*-
#
# Spinflow documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os
import mock
import sphinx_rtd_theme

package_path = os.path.abspath(
    os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', '..'))


class MockMPI4PyModule(mock.Mock):
    pass


# mpi4py is not needed to read the docstrings
sys.modules['mpi4py'] = MockMPI4PyModule()

sys.path.insert(0, package_path)
import spinflow.model  # @IgnorePep8 @UnusedImport
import spinflow.flow  # @IgnorePep8 @UnusedImport
import spinflow.verify  # @IgnorePep8 @UnusedImport
import spinflow.cmd.gaps  # @IgnorePep8 @UnusedImport
import spinflow.cmd.spectrum  # @IgnorePep8 @UnusedImport
import spinflow.cmd.flow  # @IgnorePep8 @UnusedImport
import spinflow.cmd.verify  # @IgnorePep8 @UnusedImport
import spinflow.cmd.sweep  # @IgnorePep8 @UnusedImport
import spinflow.cmd.help  # @IgnorePep8 @UnusedImport
from spinflow.version import __version__  # @IgnorePep8

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'sphinx.ext.autosectionlabel',
    'sphinxarg.ext',
    'numpydoc'
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'Spinflow'
copyright = u'2026, The Spinflow Team'
author = u'The Spinflow Team'

version = '.'.join(__version__.split('.')[:2])
release = __version__

language = None
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = True

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_static_path = []
htmlhelp_basename = 'Spinflowdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}

latex_documents = [
    (master_doc, 'Spinflow.tex', u'Spinflow Documentation',
     author, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'spinflow', u'Spinflow Documentation',
     [author], 1)
]

intersphinx_mapping = {'https://docs.python.org/': None}

numpydoc_show_class_members = False
