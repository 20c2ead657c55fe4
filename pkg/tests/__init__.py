from pathlib import Path

BASE = Path(__file__).absolute().parent
RESOURCES = BASE.joinpath('resources')
