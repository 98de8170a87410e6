# this file has bunch of functions that are used everywhere

import os
import randomname
from uuid import uuid4

import logging


# logging/
logger = logging.getLogger()
# /logging


# errors/

class EulerDagError(Exception):
  exit_code = 3

class UsageError(EulerDagError):
  exit_code = 1

class SizeCapError(UsageError):
  def __init__(self, what: str, size: int, cap: int):
    super().__init__(f"{what} refuses graphs with {size} edges, cap is {cap}")
    self.size = size
    self.cap = cap

class DataIOError(EulerDagError):
  exit_code = 2

class ParseError(DataIOError):
  def __init__(self, message: str, lineno: int, path: str = "<stream>"):
    super().__init__(f"{path}:{lineno}: {message}")
    self.lineno = lineno
    self.path = path

class InvariantError(EulerDagError):
  exit_code = 3

  def __init__(self, message: str, graph = None):
    super().__init__(message)
    self.graph = graph # offending component, dumped by the cli

# /errors


# lazy_loading/

def _isthere(*packages):
  for package in packages:
    try:
      __import__(package)
    except Exception:
      return False
  return True

# /lazy_loading


# path/

def folder(x):
  # get the folder of this file path
  return os.path.split(os.path.abspath(x))[0]

def join(x, *args):
  return os.path.join(x, *args)

def ensure_folder(x):
  try:
    os.makedirs(x, exist_ok = True)
  except OSError as e:
    raise DataIOError(f"cannot create output folder '{x}': {e}") from e
  return x

def env_int(name, default):
  value = os.environ.get(name, None)
  if value is None or value == "":
    return default
  try:
    return int(value)
  except ValueError:
    raise UsageError(f"{name} must be an integer, got '{value}'")

EULERDAG_DATA_DIR = os.environ.get("EULERDAG_DATA", join(folder(folder(__file__)), "tests", "assets", "data"))

# /path


# misc/

def get_random_name(uuid = False):
  if uuid:
    return str(uuid4())
  return randomname.generate()

# /misc


# pool/
from concurrent.futures import ThreadPoolExecutor, as_completed
POOL_SUPPORTED_MODES = ["thread"]

class Pool:
  def __init__(self, mode = "thread", max_workers = 2, _name: str = None):
    """Run independent solves side by side. Each call owns its own mutable state, the
    pool only hands results back in submission order so assembly stays deterministic.

    Args:
      mode (str, optional): Pooling strategy, only threads for now
      max_workers (int, optional): Numbers of workers to use
      _name (str, optional): Name of the pool, used for logging

    Usage:

      def solve(g, variant):
        return greedy_and_refine(g, variant)

      pool = Pool(max_workers = 4)
      results = pool(solve, (g1, "d"), (g2, "r")) # inputs must be a tuple
    """
    if mode not in POOL_SUPPORTED_MODES:
      raise UsageError(f"Only {', '.join(POOL_SUPPORTED_MODES)} mode(s) are supported")

    _name = _name or get_random_name(True)
    self.mode = mode
    logger.debug(f"Starting ThreadPool ({_name}) with {max_workers} workers")
    self.executor = ThreadPoolExecutor(
      max_workers=max_workers,
      thread_name_prefix=_name
    )

  def __call__(self, fn, *args):
    """Run any function ``fn`` in parallel, where each argument is a tuple of arguments to
    pass to ``fn``. Result is returned in the same order as the input.

      thread(fn, a) for a in args -> list of results
    """
    assert callable(fn)
    if not args:
      return []
    assert isinstance(args[0], (tuple, list))

    futures = {}
    for i, x in enumerate(args):
      futures[self.executor.submit(fn, *x)] = i # insertion index

    results = {}
    for future in as_completed(futures):
      try:
        result = future.result()
        results[futures[future]] = result # update that index
      except Exception as e:
        logger.error(f"{self.mode} error: {e}")
        raise e

    return [results[x] for x in range(len(results))]

  def shutdown(self):
    self.executor.shutdown(wait = True)

  def __enter__(self):
    return self

  def __exit__(self, *_):
    self.shutdown()


def run_many(fn, args, threads = 1):
  # serial when a single worker is asked for, keeps tracebacks simple
  args = list(args)
  if threads is None or threads <= 1 or len(args) <= 1:
    return [fn(*x) for x in args]
  with Pool(max_workers = threads) as pool:
    return pool(fn, *args)

# /pool
