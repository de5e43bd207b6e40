#!/usr/bin/env python
"""
Test runner for the CVaR bandit simulator.
Runs the unit and integration suites; the slow acceptance experiments can be skipped.
"""
import argparse
import subprocess
import sys

from dotenv import load_dotenv

load_dotenv()


def check_dependencies():
    """Check that the test and numerical dependencies are importable."""
    try:
        import hypothesis  # noqa: F401
        import numpy  # noqa: F401
        import pytest  # noqa: F401
        import scipy  # noqa: F401
        print("✅ All required testing dependencies are installed.")
        return True
    except ImportError as e:
        print(f"❌ Missing dependency: {e}")
        print("Please install required dependencies: pip install -r requirements.txt")
        return False


def build_command(args):
    """pytest invocation for the chosen subset."""
    test_args = [sys.executable, "-m", "pytest", "-v"]

    markers = []
    if args.unit_only:
        markers.append("unit")
    elif args.integration_only:
        markers.append("integration")
    if args.skip_slow:
        markers.append("not slow")
    if markers:
        test_args.extend(["-m", " and ".join(markers)])

    if args.test_path:
        test_args.append(args.test_path)
    return test_args


def main():
    parser = argparse.ArgumentParser(description="Run the simulator test suites.")
    parser.add_argument("--unit-only", action="store_true", help="Run only unit tests")
    parser.add_argument("--integration-only", action="store_true", help="Run only integration tests")
    parser.add_argument("--skip-slow", action="store_true", help="Skip the full-horizon acceptance experiments")
    parser.add_argument("test_path", nargs="?", help="Specific test path to run")
    args = parser.parse_args()

    print("=" * 80)
    print("CVaR bandit test runner")
    print("=" * 80)

    if not check_dependencies():
        sys.exit(1)

    command = build_command(args)
    print(f"Running: {' '.join(command)}")
    print("-" * 80)
    exit_code = subprocess.run(command).returncode

    if exit_code == 0:
        print("\n✅ All tests passed!")
    else:
        print("\n❌ Some tests failed.")
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
