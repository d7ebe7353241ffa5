"""
Result store information and management utility for PathCuts.
Run this script to view stored experiment runs or clear the store.
"""

import sys
from src.config import RESULTS_DB_PATH, setup_directories
from src.experiment import last_sweep
from src.report import format_table, summarize
from src.results import ResultStore


def print_results_info():
    """Display result store statistics."""
    setup_directories()
    store = ResultStore(RESULTS_DB_PATH)
    stats = store.get_stats()

    print("=" * 60)
    print("PathCuts Result Store")
    print("=" * 60)

    if stats['total_runs'] == 0:
        print("\n❌ Result store is empty. Run `python main.py experiment` to populate it.\n")
        return

    print(f"\n📊 Runs:")
    print(f"  Total stored: {stats['total_runs']:,}")
    print(f"  Failed: {stats['failed_runs']:,}")
    print(f"  Cells (n, f, c): {stats['cells']:,}")
    print(f"  Cut modes: {', '.join(stats['modes'])}")

    print(f"\n📅 Stored between:")
    print(f"  First run: {stats['first_run']}")
    print(f"  Last run: {stats['last_run']}")

    sweep = last_sweep(store)
    if sweep:
        print(f"\n🧪 Last sweep ({sweep['finished_at']} UTC):")
        print(f"  n={sweep['n']} f={sweep['f']} c={sweep['c']} seeds={sweep['seeds']}")
        print(f"  Modes: {', '.join(sweep['modes'])} | presets: {', '.join(sweep['presets'])}")
        print(f"  Ran {sweep['run']}, skipped {sweep['skipped']}, failed {sweep['failed']}")

    print(f"\n💾 Database location: {RESULTS_DB_PATH}")
    print("=" * 60)
    print()


def print_summary():
    """Display the per-cell summary table."""
    setup_directories()
    runs = ResultStore(RESULTS_DB_PATH).get_runs()
    if not runs:
        print("\n📭 No stored runs yet.\n")
        return
    print()
    print(format_table(summarize(runs)))
    print()


def reset_results():
    """Delete every stored run."""
    print("\n⚠️  WARNING: This will delete all stored experiment runs.")
    print("The next experiment sweep will recompute everything.")
    confirm = input("\nAre you sure you want to continue? [y/N]: ").strip().lower()

    if confirm == 'y':
        setup_directories()
        deleted = ResultStore(RESULTS_DB_PATH).delete_runs()
        print(f"✅ Deleted {deleted} runs.\n")
    else:
        print("❌ Cancelled.\n")


if __name__ == "__main__":
    if len(sys.argv) > 1 and sys.argv[1] in ['--info', '-i']:
        print_results_info()
    elif len(sys.argv) > 1 and sys.argv[1] in ['--summary', '-s']:
        print_summary()
    elif len(sys.argv) > 1 and sys.argv[1] in ['--reset', '-r']:
        reset_results()
    else:
        print("Usage:")
        print("  python results_info.py --info      - Show result store statistics")
        print("  python results_info.py --summary   - Show the per-cell summary table")
        print("  python results_info.py --reset     - Delete all stored runs")
