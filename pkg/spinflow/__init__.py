"""
  Copyright: 2024 The spinflow developers.
  License: This file is part of the "spinflow" package, which is released under
           the MIT Licence, see LICENSE for details.
"""
from .version import __version__
