"""
eulerdagCLI
===========

CLI for ``eulerdag``, every command writes its files into ``--out``.

.. code-block::

  eulerdag decompose FILE [--algo gr-r] [--threads N] [--baseline]
  eulerdag rank FILE
  eulerdag stats FILE [--algo gr-d]
  eulerdag mobility FILE FILE [FILE ...] [--groups 5]
  eulerdag predict TRAIN TEST
  eulerdag oracle-check [--path FILE] [--count 100] [--oracle_cap 14]
  eulerdag synth [hierarchy/drift/random]

Exit codes: 0 success, 1 usage, 2 I/O, 3 internal invariant broken.
"""

import sys

import fire

from logging import getLogger
logger = getLogger()

from . import cli as e # eulerdag-cli
from .utils import EulerDagError


def main(argv = None) -> int:
  try:
    fire.Fire({
      "decompose": e.decompose,         # eulerdag decompose FILE
      "rank": e.rank,                   # eulerdag rank FILE
      "stats": e.stats,                 # eulerdag stats FILE
      "mobility": e.mobility,           # eulerdag mobility FILE FILE ...
      "predict": e.predict,             # eulerdag predict TRAIN TEST
      "oracle-check": e.oracle_check,   # eulerdag oracle-check
      "synth": {
        "hierarchy": e.synth_hierarchy, # eulerdag synth hierarchy --n 500
        "drift": e.synth_drift,         # eulerdag synth drift --steps 4
        "random": e.synth_random,       # eulerdag synth random --n 8 --m 14
      },
    }, command = argv, name = "eulerdag")
  except fire.core.FireExit as err:
    return 0 if not err.code else 1
  except EulerDagError as err:
    logger.error(f"{type(err).__name__}: {err}")
    return err.exit_code
  except OSError as err:
    logger.error(f"I/O error: {err}")
    return 2
  return 0


if __name__ == "__main__":
  sys.exit(main())
