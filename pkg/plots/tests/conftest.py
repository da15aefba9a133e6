import sys
from pathlib import Path

# plot scripts live one level up and are plain scripts, not a package
sys.path.insert(0, str(Path(__file__).parents[1]))
