#!/usr/bin/env python3
"""
Path resolution for the helper scripts.
Lets a script under scripts/ import `src` no matter which directory it is run from.
"""

import os
import sys


def setup_path():
    """
    Add the project root directory to sys.path.

    Returns:
        The project root
    """
    script_dir = os.path.dirname(os.path.abspath(__file__))
    project_root = os.path.dirname(script_dir)

    if project_root not in sys.path:
        sys.path.insert(0, project_root)

    return project_root
