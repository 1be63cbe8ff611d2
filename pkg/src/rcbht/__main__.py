"""Main entry point for rcbht when run as a module."""

from .cli.main import main

if __name__ == "__main__":
    main()
