"""
Quick diagnostic tool for PathCuts.
Run this to check that dependencies and configuration are in order.
"""

import os
import sys


def check_dependencies():
    """Check if required packages are installed."""
    print("📦 Checking dependencies...")

    missing = []
    for module, package in (("dotenv", "python-dotenv"), ("tqdm", "tqdm"), ("numpy", "numpy"), ("pytest", "pytest")):
        try:
            __import__(module)
            print(f"✅ {package} is installed")
        except ImportError:
            print(f"❌ {package} is not installed")
            missing.append(package)

    if missing:
        print(f"\n   → Run: pip install {' '.join(missing)}")
        print("   → Or: pip install -r requirements.txt")
        return False
    return True


def check_config():
    """Load the configuration and report the effective settings."""
    if os.path.exists('.env'):
        print("✅ .env file exists")
    else:
        print("ℹ️  No .env file found, using defaults")

    try:
        from src.config import (CUT_MODE, MAX_PATH_FRAC, TIME_LIMIT, NODE_LIMIT, RESULTS_DB_PATH,
                                setup_directories)
        setup_directories()
    except Exception as e:
        print(f"❌ Error loading configuration: {e}")
        return False

    print(f"✅ Cut mode: {CUT_MODE}")
    print(f"✅ Max path fraction: {MAX_PATH_FRAC}")
    print(f"✅ Limits: {TIME_LIMIT:.0f}s, {NODE_LIMIT:,} nodes")
    print(f"✅ Result store: {RESULTS_DB_PATH}")
    return True


def check_solver():
    """Solve a one-node instance end to end."""
    try:
        from src.instance import NonPathArc, PathInstance
        from src.solve import SolverConfig, branch_and_cut

        inst = PathInstance(1, [5], [], [], [NonPathArc(1, 1, "in", 10, 0, 2)])
        report = branch_and_cut(inst, SolverConfig(show_progress=False))
        if report.z_ub is None or abs(report.z_ub - 10) > 1e-6:
            print(f"❌ Solver smoke test returned {report.z_ub}, expected 10")
            return False
    except Exception as e:
        print(f"❌ Solver smoke test failed: {e}")
        return False
    print("✅ Solver smoke test passed")
    return True


def main():
    print("PathCuts Diagnostic Check")
    print("=" * 60)
    print()

    if sys.version_info < (3, 10):
        print(f"❌ Python {sys.version_info.major}.{sys.version_info.minor} detected")
        print("   → PathCuts requires Python 3.10 or higher")
        return
    else:
        print(f"✅ Python {sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}")

    deps_ok = check_dependencies()

    print("\n🔧 Checking configuration...")
    config_ok = deps_ok and check_config()

    print("\n🔍 Checking solver...")
    solver_ok = config_ok and check_solver()

    print()
    if deps_ok and config_ok and solver_ok:
        print("=" * 60)
        print("✅ All checks passed! You're ready to run PathCuts.")
        print("=" * 60)
        print("\nRun: python main.py --help")
    else:
        print("=" * 60)
        print("❌ Some checks failed. Please fix the issues above.")
        print("=" * 60)

    print()


if __name__ == "__main__":
    main()
