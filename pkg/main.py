"""
Granulum - Main Entry Point
Granular rough sets, rough inclusion functions and granular inclusion matrices.
"""

import sys
from pathlib import Path

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))


def main(argv=None):
    """Main entry point for the application."""
    try:
        from src.main import main as run
    except ImportError as e:
        print(
            "granulum: error importing modules:\n"
            f"{e}\n\n"
            "Make sure all dependencies are installed:\n"
            "pip install -r requirements.txt",
            file=sys.stderr,
        )
        return 2
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
