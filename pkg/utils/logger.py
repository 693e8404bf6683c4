import sys
import time
from datetime import datetime
from typing import Optional


class LabLogger:
    COLORS = {
        'RESET': '\033[0m',
        'BOLD': '\033[1m',
        'RED': '\033[91m',
        'GREEN': '\033[92m',
        'YELLOW': '\033[93m',
        'BLUE': '\033[94m',
        'MAGENTA': '\033[95m',
        'CYAN': '\033[96m',
        'ORANGE': '\033[38;5;208m',
    }

    USE_COLORS = True
    LOG_TO_CONSOLE = True
    LOG_TO_FILE = False
    LOG_FILE_PATH = "tu_lab.log"

    LOG_DIGITS = False
    LOG_DEPENDENCY = True
    LOG_DECOMPOSITION = True
    LOG_EXPERIMENTS = True
    LOG_CACHE = True

    _file_handle = None
    _initialized = False
    _started = time.monotonic()

    @classmethod
    def configure(cls, verbose: bool = False, quiet: bool = False, log_file: Optional[str] = None):
        cls.LOG_DIGITS = verbose
        if verbose:
            cls.LOG_DEPENDENCY = True
            cls.LOG_DECOMPOSITION = True
            cls.LOG_EXPERIMENTS = True
            cls.LOG_CACHE = True
        cls.LOG_TO_CONSOLE = not quiet
        cls.USE_COLORS = sys.stderr.isatty()
        cls.close()
        cls.LOG_TO_FILE = bool(log_file)
        if log_file:
            cls.LOG_FILE_PATH = log_file

    @classmethod
    def _init_file(cls):
        if cls._initialized:
            return

        if cls.LOG_TO_FILE:
            try:
                cls._file_handle = open(cls.LOG_FILE_PATH, 'a', encoding='utf-8', newline='\n')
                cls._file_handle.write("=== tu-lab log ===\n")
                cls._file_handle.write(f"Started: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
                cls._file_handle.flush()
                cls._initialized = True
            except OSError as e:
                print(f"Warning: Could not open log file: {e}", file=sys.stderr)
                cls.LOG_TO_FILE = False

    @classmethod
    def _write_to_file(cls, message: str):
        if not cls.LOG_TO_FILE:
            return

        cls._init_file()

        if cls._file_handle:
            clean_message = message
            for color_code in cls.COLORS.values():
                clean_message = clean_message.replace(color_code, '')
            try:
                cls._file_handle.write(clean_message + "\n")
                cls._file_handle.flush()
            except OSError:
                pass

    @classmethod
    def _log(cls, message: str):
        line = f"{cls._format_time()} {message}"
        if cls.LOG_TO_CONSOLE:
            print(line, file=sys.stderr)
        cls._write_to_file(line)

    @classmethod
    def close(cls):
        if cls._file_handle:
            cls._file_handle.write(f"=== Log ended: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')} ===\n")
            cls._file_handle.close()
            cls._file_handle = None
            cls._initialized = False

    @classmethod
    def _color(cls, text: str, color: str) -> str:
        if cls.USE_COLORS and color in cls.COLORS:
            return f"{cls.COLORS[color]}{text}{cls.COLORS['RESET']}"
        return text

    @classmethod
    def _format_time(cls) -> str:
        return f"[+{time.monotonic() - cls._started:.3f}s]"

    @classmethod
    def digits_extracted(cls, number: object, n: int, path: str):
        if not cls.LOG_DIGITS:
            return
        cls._log(cls._color(f"[DIGITS] {n} bits of {number} via {path}", 'BLUE'))

    @classmethod
    def radius_certified(cls, kind: str, number: str, digits: int, radius: int):
        if not cls.LOG_DEPENDENCY:
            return
        cls._log(cls._color(f"[DEPENDENCY] {kind}({number}, {digits}) = {radius}", 'CYAN'))

    @classmethod
    def decomposition_done(cls, n: int, nonzero_terms: int, observed: int, predicted: int):
        if not cls.LOG_DECOMPOSITION:
            return
        msg = (f"[DECOMPOSE] n={n}: {nonzero_terms} nonzero terms, "
               f"observed cutoff {observed} <= predicted {predicted}")
        cls._log(cls._color(msg, 'MAGENTA'))

    @classmethod
    def decomposition_broken(cls, what: str, detail: str):
        cls._log(cls._color(f"[DECOMPOSE] INVARIANT BROKEN ({what}): {detail}", 'RED'))

    @classmethod
    def experiment_started(cls, kind: str, key: str, cells: int, workers: int):
        if not cls.LOG_EXPERIMENTS:
            return
        msg = f"[EXPERIMENT] {kind} {key[:12]}: {cells} cells on {workers} worker(s)"
        cls._log(cls._color(msg, 'ORANGE'))

    @classmethod
    def experiment_finished(cls, kind: str, key: str, wall_time: float):
        if not cls.LOG_EXPERIMENTS:
            return
        cls._log(cls._color(f"[EXPERIMENT] {kind} {key[:12]} done in {wall_time:.3f}s", 'GREEN'))

    @classmethod
    def cache_hit(cls, key: str):
        if not cls.LOG_CACHE:
            return
        cls._log(cls._color(f"[CACHE] hit {key[:12]}", 'GREEN'))

    @classmethod
    def cache_miss(cls, key: str):
        if not cls.LOG_CACHE:
            return
        cls._log(cls._color(f"[CACHE] miss {key[:12]}", 'YELLOW'))

    @classmethod
    def cache_stored(cls, key: str, path: str):
        if not cls.LOG_CACHE:
            return
        cls._log(cls._color(f"[CACHE] stored {key[:12]} -> {path}", 'BLUE'))

    @classmethod
    def artifact_written(cls, path: str):
        if not cls.LOG_EXPERIMENTS:
            return
        cls._log(f"[EXPERIMENT] wrote {path}")


logger = LabLogger()
