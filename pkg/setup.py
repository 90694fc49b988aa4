#!/usr/bin/env python
import os
import sys
from setuptools import find_packages  # @UnresolvedImport
from distutils.core import setup


package_name = 'spinflow'
package_dir = os.path.join(os.path.dirname(__file__), package_name)

# Filter unittests from packages
packages = [p for p in find_packages() if not p.startswith('test')]

sys.path.insert(0, package_dir)
from version import __version__  # @IgnorePep8 @UnresolvedImport
sys.path.pop(0)

setup(
    name=package_name,
    version=__version__,
    scripts=[os.path.join('scripts', 'spinflow')],
    packages=packages,
    author="The Spinflow Team (see AUTHORS)",
    description=(
        "Spinflow block-diagonalizes weakly hopping XXZ spin-1/2 chains with "
        "an iterative, local Lie-Schwinger flow and verifies the result "
        "against exact diagonalization."),
    long_description=open("README.rst").read(),
    license="MIT",
    keywords=("XXZ spin chain Lie-Schwinger block diagonalization "
              "quantum many-body spectral gap exact diagonalization"),
    classifiers=['Development Status :: 4 - Beta',
                 'Environment :: Console',
                 'Intended Audience :: Science/Research',
                 'License :: OSI Approved :: MIT License',
                 'Natural Language :: English',
                 'Operating System :: OS Independent',
                 'Programming Language :: Python :: 3',
                 'Programming Language :: Python :: 3.6',
                 'Programming Language :: Python :: 3.7',
                 'Topic :: Scientific/Engineering :: Physics'],
    install_requires=[
        'numpy>=1.13',
        'scipy>=1.5',
        'mock>=1.0',
        'mpi4py>=1.3.1',
        'PyYAML>=3.11'],
    tests_require=['nose'],
    python_requires='>=3.6, <4'
)
