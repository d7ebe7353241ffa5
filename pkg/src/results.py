import json
import sqlite3
from contextlib import contextmanager
from datetime import datetime, timezone

from .solve import CSV_FIELDS

KEY_FIELDS = ["n", "f", "c", "seed", "mode", "preset"]


class ResultStore:
    def __init__(self, db_path):
        """Open (and create if needed) the experiment result database."""
        self.db_path = db_path
        try:
            self._init_database()
        except sqlite3.Error as e:
            raise RuntimeError(f"Failed to initialize result database: {e}")

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------

    @contextmanager
    def _connect(self):
        """Open a SQLite connection, yield it, then close it."""
        try:
            conn = sqlite3.connect(self.db_path)
        except sqlite3.Error as e:
            raise RuntimeError(f"Cannot open result database {self.db_path}: {e}")
        try:
            yield conn
        except sqlite3.Error as e:
            raise RuntimeError(f"Result database error: {e}")
        finally:
            conn.close()

    # ------------------------------------------------------------------
    # Schema
    # ------------------------------------------------------------------

    def _init_database(self):
        with self._connect() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS runs (
                    n INTEGER NOT NULL,
                    f INTEGER NOT NULL,
                    c INTEGER NOT NULL,
                    seed INTEGER NOT NULL,
                    mode TEXT NOT NULL,
                    preset TEXT NOT NULL,
                    report TEXT NOT NULL,
                    error TEXT,
                    stored_at INTEGER NOT NULL,
                    PRIMARY KEY (n, f, c, seed, mode, preset)
                )
            """)
            cursor.execute("CREATE INDEX IF NOT EXISTS idx_cell ON runs(n, f, c, mode, preset)")
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS metadata (
                    key TEXT PRIMARY KEY,
                    value TEXT
                )
            """)
            conn.commit()

    # ------------------------------------------------------------------
    # Runs
    # ------------------------------------------------------------------

    def has_run(self, key):
        """True if a run with this (n, f, c, seed, mode, preset) key is stored."""
        with self._connect() as conn:
            cursor = conn.cursor()
            cursor.execute(
                "SELECT 1 FROM runs WHERE n = ? AND f = ? AND c = ? AND seed = ? AND mode = ? AND preset = ?",
                tuple(key),
            )
            return cursor.fetchone() is not None

    def save_run(self, key, report_dict, error=None):
        """Insert or replace one run. report_dict is BranchAndCutReport.to_dict() (empty on error)."""
        with self._connect() as conn:
            conn.execute(
                "INSERT OR REPLACE INTO runs (n, f, c, seed, mode, preset, report, error, stored_at) "
                "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
                (*key, json.dumps(report_dict), error, int(datetime.now(timezone.utc).timestamp())),
            )
            conn.commit()

    def get_runs(self):
        """All stored runs as flat dicts, sorted by cell and seed."""
        with self._connect() as conn:
            cursor = conn.cursor()
            cursor.execute(
                "SELECT n, f, c, seed, mode, preset, report, error FROM runs "
                "ORDER BY n, f, c, mode, preset, seed"
            )
            rows = cursor.fetchall()
        runs = []
        for *key, report, error in rows:
            run = dict(zip(KEY_FIELDS, key))
            data = json.loads(report)
            run.update({name: data.get(name) for name in CSV_FIELDS})
            run["error"] = error
            runs.append(run)
        return runs

    def delete_runs(self):
        """Remove every stored run; returns how many were deleted."""
        with self._connect() as conn:
            cursor = conn.cursor()
            cursor.execute("DELETE FROM runs")
            conn.commit()
            return cursor.rowcount

    # ------------------------------------------------------------------
    # Metadata and statistics
    # ------------------------------------------------------------------

    def set_metadata(self, key, value):
        with self._connect() as conn:
            conn.execute("INSERT OR REPLACE INTO metadata (key, value) VALUES (?, ?)", (key, str(value)))
            conn.commit()

    def get_metadata(self, key, default=None):
        with self._connect() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT value FROM metadata WHERE key = ?", (key,))
            row = cursor.fetchone()
        return row[0] if row else default

    def get_stats(self):
        """Counts of stored runs, failed runs, distinct cells and modes."""
        with self._connect() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT COUNT(*), SUM(error IS NOT NULL) FROM runs")
            total, failed = cursor.fetchone()
            cursor.execute("SELECT COUNT(*) FROM (SELECT DISTINCT n, f, c FROM runs)")
            cells = cursor.fetchone()[0]
            cursor.execute("SELECT DISTINCT mode FROM runs ORDER BY mode")
            modes = [row[0] for row in cursor.fetchall()]
            cursor.execute("SELECT MIN(stored_at), MAX(stored_at) FROM runs")
            first, last = cursor.fetchone()

        def fmt(ts):
            return datetime.fromtimestamp(ts, timezone.utc).strftime('%Y-%m-%d %H:%M:%S') if ts else None

        return {
            'total_runs': total,
            'failed_runs': failed or 0,
            'cells': cells,
            'modes': modes,
            'first_run': fmt(first),
            'last_run': fmt(last),
        }
